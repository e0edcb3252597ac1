"""Derivation-building constructions.

Every function returns an ordinary :class:`~subatomic.derivation.Derivation`
whose endpoints are exactly the ones documented; nothing here is trusted,
so outputs are meant to be confirmed with :func:`~subatomic.derivation.check`.
"""
from __future__ import annotations

from typing import Sequence

from . import formula as fm
from ._deep import deep_recursion
from .derivation import (
    Derivation,
    DerivationError,
    Horiz,
    Leaf,
    Step,
    chain,
    compose_seq,
    dualize,
    eq_step,
    eq_then,
    mirror as mirror_derivation,
    step,
    then_eq,
)
from .formula import (
    AND,
    ONE,
    OR,
    ZERO,
    Context,
    Formula,
    FormulaError,
    Node,
    Unit,
    is_atom,
    is_unit_value,
    land,
    lor,
    neg,
    negate,
    pos,
)
from .rules import EQUALITY, down, up

LEFT = "left"
RIGHT = "right"

RIGHT1 = "right1"          # A -> A a 1
LEFT1 = "left1"            # A -> 1 a A
RIGHT0_ELIM = "right0-elim"  # A a 0 -> A
LEFT0_ELIM = "left0-elim"    # 0 a A -> A
ATTACH_SIDES = (RIGHT1, LEFT1, RIGHT0_ELIM, LEFT0_ELIM)


def _check_atom(a: str) -> str:
    if not is_atom(a):
        raise FormulaError(f"expected an atom, got connective {a!r}")
    return fm.check_atom_name(a)


def in_context(K: Context, d: Derivation) -> Derivation:
    """Place ``d`` inside the hole of ``K``; siblings become leaves."""
    for conn, side, sib in reversed(K.frames):
        d = Horiz(conn, Leaf(sib), d) if side else Horiz(conn, d, Leaf(sib))
    return d


# -- weakening ---------------------------------------------------------------

def _one_from_zero() -> Derivation:
    """0 = (0&1)|(1&0) --down(and,or)--> (0|1)&(1|0) = 1."""
    top = land(ZERO, ONE)
    bot = land(ONE, ZERO)
    mid_p = lor(top, bot)
    mid_q = land(lor(ZERO, ONE), lor(ONE, ZERO))
    return Step(EQUALITY, Leaf(ZERO),
                Step(down(AND, OR), Leaf(mid_p),
                     Step(EQUALITY, Leaf(mid_q), Leaf(ONE))))


@deep_recursion
def weakening(A: Formula) -> Derivation:
    """A derivation 0 -> A: every unit 1 in ``A`` grows out of a 0."""
    if A == ZERO:
        return Leaf(ZERO)

    def go(x):
        if isinstance(x, Unit):
            return _one_from_zero() if x.value else Leaf(x)
        l, r = go(x.left), go(x.right)
        if isinstance(l, Leaf) and isinstance(r, Leaf):
            return Leaf(Node(x.conn, l.formula, r.formula))
        return Horiz(x.conn, l, r)

    body = go(A)
    return eq_then(ZERO, body)


@deep_recursion
def coweakening(A: Formula) -> Derivation:
    """A derivation A -> 1, the dual of a weakening."""
    return dualize(weakening(negate(A)))


# -- attaching units under an atom ----------------------------------------------

@deep_recursion
def attach_unit(A: Formula, a: str, side: str = RIGHT1) -> Derivation:
    """One of A -> (A a 1), A -> (1 a A), (A a 0) -> A, (0 a A) -> A."""
    _check_atom(a)
    if side == RIGHT1:
        return _right1(A, a)
    if side == LEFT1:
        return mirror_derivation(_right1(fm.mirror(A), a))
    if side == RIGHT0_ELIM:
        return dualize(_right1(negate(A), a))
    if side == LEFT0_ELIM:
        return dualize(mirror_derivation(_right1(fm.mirror(negate(A)), a)))
    raise FormulaError(f"unknown side {side!r}")


def _right1(A: Formula, a: str) -> Derivation:
    if A == ONE:
        return eq_step(ONE, Node(a, ONE, ONE))
    if A == ZERO:
        return weakening(pos(a))
    alpha = A.conn
    upper = Horiz(alpha, _right1(A.left, a), _right1(A.right, a))
    lower = Horiz(a, Leaf(A), eq_step(Node(alpha, ONE, ONE), ONE))
    return step(upper, up(alpha, a), lower)


def right1(A: Formula, a: str) -> Derivation:
    return attach_unit(A, a, RIGHT1)


def left1(A: Formula, a: str) -> Derivation:
    return attach_unit(A, a, LEFT1)


def right0_elim(A: Formula, a: str) -> Derivation:
    return attach_unit(A, a, RIGHT0_ELIM)


def left0_elim(A: Formula, a: str) -> Derivation:
    return attach_unit(A, a, LEFT0_ELIM)


# -- nesting and un-nesting ------------------------------------------------------

def unnested_form(B: Formula, C: Formula, a: str) -> Formula:
    """(B & (1 a 0)) | ((0 a 1) & C)."""
    return lor(land(B, neg(a)), land(pos(a), C))


@deep_recursion
def unnest(B: Formula, C: Formula, a: str) -> Derivation:
    """(B a C) -> (B & (1 a 0)) | ((0 a 1) & C)."""
    _check_atom(a)
    zz = land(ZERO, ZERO)
    b1, c1 = land(B, ONE), land(ONE, C)
    upper = Horiz(a, eq_step(B, lor(b1, zz)), eq_step(C, lor(zz, c1)))
    x = step(Leaf(Node(a, b1, zz)), down(AND, a),
             Horiz(AND, right0_elim(B, a), Leaf(neg(a))))
    y = step(Leaf(Node(a, zz, c1)), down(AND, a),
             Horiz(AND, Leaf(pos(a)), left0_elim(C, a)))
    return step(upper, down(OR, a), Horiz(OR, x, y))


@deep_recursion
def renest(B: Formula, C: Formula, a: str) -> Derivation:
    """(B & (1 a 0)) | ((0 a 1) & C) -> (B a C), cut-free."""
    _check_atom(a)
    if is_unit_value(B, 0):
        # (B & (1 a 0)) -> (B & 1) a (1 & 0) without the cut shape
        x = step(Horiz(AND, eq_step(B, Node(a, ZERO, ZERO)), Leaf(neg(a))), up(AND, a),
                 Horiz(a, Horiz(AND, eq_step(ZERO, B), Leaf(ONE)),
                       Horiz(AND, weakening(ONE), Leaf(ZERO))))
    else:
        x = step(Horiz(AND, right1(B, a), Leaf(neg(a))), up(AND, a),
                 Leaf(Node(a, land(B, ONE), land(ONE, ZERO))))
    if is_unit_value(C, 0):
        y = step(Horiz(AND, Leaf(pos(a)), eq_step(C, Node(a, ZERO, ZERO))), up(AND, a),
                 Horiz(a, Horiz(AND, Leaf(ZERO), weakening(ONE)),
                       Horiz(AND, Leaf(ONE), eq_step(ZERO, C))))
    else:
        y = step(Horiz(AND, Leaf(pos(a)), left1(C, a)), up(AND, a),
                 Leaf(Node(a, land(ZERO, ONE), land(ONE, C))))
    left_f = lor(land(B, ONE), land(ZERO, ONE))
    right_f = lor(land(ONE, ZERO), land(ONE, C))
    return step(Horiz(OR, x, y), up(OR, a),
                Horiz(a, eq_step(left_f, B), eq_step(right_f, C)))


def nest(B: Formula, C: Formula, a: str, direction: str = "unnest") -> Derivation:
    if direction == "unnest":
        return unnest(B, C, a)
    if direction == "renest":
        return renest(B, C, a)
    raise FormulaError(f"unknown direction {direction!r}")


@deep_recursion
def flatten_to_prop(A: Formula):
    """Return ``(B, down, up)`` with ``B`` free of nested atoms,
    ``down: A -> B`` and ``up: B -> A``.  Un-nesting proceeds innermost
    first, so every application removes exactly one nesting site."""

    def go(x):
        if isinstance(x, Unit):
            return x, Leaf(x), Leaf(x)
        bl, dl, ul = go(x.left)
        br, dr, ur = go(x.right)
        if not is_atom(x.conn) or not (fm.atoms(bl) or fm.atoms(br)):
            node = Node(x.conn, bl, br)
            return node, _horiz(x.conn, dl, dr), _horiz(x.conn, ul, ur)
        a = x.conn
        flat = unnested_form(bl, br, a)
        down_d = compose_seq(_horiz(a, dl, dr), unnest(bl, br, a))
        up_d = compose_seq(renest(bl, br, a), _horiz(a, ul, ur))
        return flat, down_d, up_d

    return go(A)


def _horiz(conn, l, r):
    if isinstance(l, Leaf) and isinstance(r, Leaf):
        return Leaf(Node(conn, l.formula, r.formula))
    return Horiz(conn, l, r)


# -- contraction -------------------------------------------------------------

@deep_recursion
def contraction(A: Formula, alpha: str = OR) -> Derivation:
    """(A alpha A) -> A for alpha in {|} or an atom."""
    if alpha == AND:
        raise FormulaError("contraction is only available for | and atoms")

    def go(x):
        if isinstance(x, Unit):
            return eq_step(Node(alpha, x, x), x)
        g = x.conn
        upper = Leaf(Node(alpha, x, x))
        return step(upper, down(g, alpha), Horiz(g, go(x.left), go(x.right)))

    return go(A)


@deep_recursion
def cocontraction(A: Formula, beta: str = AND) -> Derivation:
    """A -> (A beta A) for beta in {&} or an atom."""
    if beta == OR:
        raise FormulaError("cocontraction is only available for & and atoms")
    return dualize(contraction(negate(A), fm.dual(beta)))


# -- merge -------------------------------------------------------------------

def _require_context(K) -> Context:
    if not isinstance(K, Context):
        raise FormulaError("expected a single-hole context")
    return K


@deep_recursion
def merge_in(K: Context, A: Formula, B: Formula) -> Derivation:
    """K{A} & B -> K{A & B}."""
    _require_context(K)
    return _merge_in(K, A, B)


def _merge_in(K: Context, A: Formula, B: Formula) -> Derivation:
    if K.is_trivial:
        return Leaf(land(A, B))
    conn, side, C = K.head()
    H = K.tail()
    HA = H.plug(A)
    rec = _merge_in(H, A, B)
    if side == 0:
        top = Node(conn, HA, C)
        if conn == AND:
            upper = Horiz(AND, Leaf(top), eq_step(B, land(B, ONE)))
            return step(upper, up(AND, AND), Horiz(AND, rec, eq_step(land(C, ONE), C)))
        if conn == OR:
            upper = Horiz(AND, Leaf(top), eq_step(B, lor(B, ZERO)))
            return step(upper, down(OR, AND), Horiz(OR, rec, eq_step(lor(C, ZERO), C)))
        if is_unit_value(C, 0) and is_unit_value(B, 0):
            # the attach-unit route would match the cut shape here
            upper = Horiz(AND, Leaf(top), eq_step(B, Node(conn, B, ZERO)))
            return step(upper, up(AND, conn), Horiz(conn, rec, eq_step(land(C, ZERO), C)))
        upper = Horiz(AND, Leaf(top), right1(B, conn))
        return step(upper, up(AND, conn), Horiz(conn, rec, eq_step(land(C, ONE), C)))
    top = Node(conn, C, HA)
    if conn == AND:
        upper = Horiz(AND, Leaf(top), eq_step(B, land(ONE, B)))
        return step(upper, up(AND, AND), Horiz(AND, eq_step(land(C, ONE), C), rec))
    if conn == OR:
        upper = Horiz(AND, Leaf(top), eq_step(B, lor(ZERO, B)))
        return step(upper, down(OR, AND, mirrored=True), Horiz(OR, eq_step(lor(C, ZERO), C), rec))
    if is_unit_value(C, 0) and is_unit_value(B, 0):
        upper = Horiz(AND, Leaf(top), eq_step(B, Node(conn, ZERO, B)))
        return step(upper, up(AND, conn), Horiz(conn, eq_step(land(C, ZERO), C), rec))
    upper = Horiz(AND, Leaf(top), left1(B, conn))
    return step(upper, up(AND, conn), Horiz(conn, eq_step(land(C, ONE), C), rec))


@deep_recursion
def merge_out(K: Context, A: Formula, B: Formula) -> Derivation:
    """K{A | B} -> K{A} | B, the dual of :func:`merge_in`."""
    _require_context(K)
    return dualize(_merge_in(K.negate(), negate(A), negate(B)))


# -- DT-weakening ------------------------------------------------------------

@deep_recursion
def dt_weakening(K: Context, A: Formula, B: Formula, C: Formula, a: str,
                 side: str = LEFT) -> Derivation:
    """left:  (K{A} a C) -> (K{A a B} a C);
    right: (C a K{A}) -> (C a K{B a A})."""
    _require_context(K)
    _check_atom(a)
    if side == RIGHT:
        d = _dt_weakening_left(K.mirror(), fm.mirror(A), fm.mirror(B), fm.mirror(C), a)
        return mirror_derivation(d)
    if side != LEFT:
        raise FormulaError(f"unknown side {side!r}")
    return _dt_weakening_left(K, A, B, C, a)


def _dt_weakening_left(K: Context, A, B, C, a) -> Derivation:
    KA = K.plug(A)
    na, pa = neg(a), pos(a)
    phi = unnest(KA, C, a)
    # (1 a 0) -> (1 a 0) & (1 a 0)
    dup = step(Horiz(a, eq_step(ONE, land(ONE, ONE)), eq_step(ZERO, land(ZERO, ZERO))),
               down(AND, a), Leaf(land(na, na)))
    grow = Horiz(AND, Leaf(KA), dup)
    # re-associate:  K{A} & (n & n)  =  (K{A} & 1) & (n & n)  ->  (K{A} & n) & (1 & n)
    regroup = step(Leaf(land(KA, land(na, na))), EQUALITY,
                   step(Leaf(land(land(KA, ONE), land(na, na))), up(AND, AND),
                        Leaf(land(land(KA, na), land(ONE, na)))))
    inner = lor(land(A, na), ZERO)
    psi = chain(eq_step(land(A, na), inner),
                Horiz(OR, Leaf(land(A, na)), weakening(land(pa, B))),
                renest(A, B, a))
    pi = compose_seq(merge_in(K, A, na), in_context(K, psi))
    finish = Horiz(AND, pi, eq_step(land(ONE, na), na))
    left_part = chain(grow, regroup, finish)
    middle = Horiz(OR, left_part, Leaf(land(pa, C)))
    return chain(phi, middle, renest(K.plug(Node(a, A, B)), C, a))


# -- reordering around an atom ---------------------------------------------------

def project(f: Formula, a: str, side: str) -> Formula:
    """Replace every ``a`` node by its left or right child."""
    pick_right = side == RIGHT

    def stepf(x, l, r):
        if l is None:
            return x
        if x.conn == a:
            return r if pick_right else l
        if l is x.left and r is x.right:
            return x
        return Node(x.conn, l, r)

    return fm.rebuild(f, stepf)


@deep_recursion
def reorder_up(A: Formula, a: str) -> Derivation:
    """(left_a A) a (right_a A) -> A, cut-free."""
    _check_atom(a)

    def go(x):
        if isinstance(x, Unit):
            return eq_step(Node(a, x, x), x)
        B, C = x.left, x.right
        if x.conn != a:
            lB, rB = project(B, a, LEFT), project(B, a, RIGHT)
            lC, rC = project(C, a, LEFT), project(C, a, RIGHT)
            top = Node(a, Node(x.conn, lB, lC), Node(x.conn, rB, rC))
            return step(Leaf(top), down(x.conn, a), Horiz(x.conn, go(B), go(C)))
        if a not in fm.atoms(B) and a not in fm.atoms(C):
            return Leaf(x)
        lB, rB = project(B, a, LEFT), project(B, a, RIGHT)
        lC, rC = project(C, a, LEFT), project(C, a, RIGHT)
        w1 = dt_weakening(Context(), lB, rB, rC, a, LEFT)
        w2 = dt_weakening(Context(), rC, lC, Node(a, lB, rB), a, RIGHT)
        return chain(w1, w2, Horiz(a, go(B), go(C)))

    return go(A)


@deep_recursion
def reorder_down(A: Formula, a: str) -> Derivation:
    """A -> (left_a A) a (right_a A), the dual of :func:`reorder_up`."""
    return dualize(reorder_up(negate(A), a))


# -- associativity and commutativity ------------------------------------------------

def operands(f: Formula, conn: str) -> list[Formula]:
    """Maximal subterms not headed by ``conn``, left to right."""
    out, stack = [], [f]
    while stack:
        x = stack.pop()
        if isinstance(x, Node) and x.conn == conn:
            stack.append(x.right)
            stack.append(x.left)
        else:
            out.append(x)
    return out


def right_nest(items: Sequence[Formula], conn: str) -> Formula:
    out = items[-1]
    for x in reversed(items[:-1]):
        out = Node(conn, x, out)
    return out


def _medial(conn: str):
    return down(OR, OR) if conn == OR else up(AND, AND)


def _unit_for(conn: str) -> Unit:
    return ZERO if conn == OR else ONE


def _padded(conn, p, q, r, s) -> Formula:
    return Node(conn, Node(conn, p, q), Node(conn, r, s))


def _rotate(X, Y, Z, conn) -> Derivation:
    """(X c Y) c Z -> X c (Y c Z)."""
    u = _unit_for(conn)
    return chain(eq_step(Node(conn, Node(conn, X, Y), Z), _padded(conn, X, Y, u, Z)),
                 Step(_medial(conn), Leaf(_padded(conn, X, Y, u, Z)), Leaf(_padded(conn, X, u, Y, Z))),
                 eq_step(_padded(conn, X, u, Y, Z), Node(conn, X, Node(conn, Y, Z))))


def _swap_front(X, Y, R, conn) -> Derivation:
    """X c (Y c R) -> Y c (X c R), or X c Y -> Y c X when R is None."""
    u = _unit_for(conn)
    if R is None:
        p, q = _padded(conn, u, X, Y, u), _padded(conn, u, Y, X, u)
        src, dst = Node(conn, X, Y), Node(conn, Y, X)
    else:
        p, q = _padded(conn, u, X, Y, R), _padded(conn, u, Y, X, R)
        src, dst = Node(conn, X, Node(conn, Y, R)), Node(conn, Y, Node(conn, X, R))
    return chain(eq_step(src, p), Step(_medial(conn), Leaf(p), Leaf(q)), eq_step(q, dst))


def _concat(left_items, right_f, conn) -> Derivation:
    """right_nest(left_items) c right_f -> right_nest(left_items + ops(right_f))."""
    if len(left_items) == 1:
        return Leaf(Node(conn, left_items[0], right_f))
    x, rest = left_items[0], left_items[1:]
    rot = _rotate(x, right_nest(rest, conn), right_f, conn)
    return compose_seq(rot, Horiz(conn, Leaf(x), _concat(rest, right_f, conn)))


def _to_right_nested(f: Formula, conn: str) -> Derivation:
    if not (isinstance(f, Node) and f.conn == conn):
        return Leaf(f)
    dl = _to_right_nested(f.left, conn)
    dr = _to_right_nested(f.right, conn)
    l_items = operands(f.left, conn)
    return compose_seq(_horiz(conn, dl, dr), _concat(l_items, dr.conclusion, conn))


def _self_inverse(name) -> bool:
    if name.kind == "eq":
        return True
    if name.first != name.second or name.mirrored:
        return False
    return (name.kind == "down" and fm.weaker(name.first) == name.first) or \
           (name.kind == "up" and fm.stronger(name.first) == name.first)


def invert(d: Derivation) -> Derivation:
    """Reverse a derivation made only of self-inverse rules."""
    if isinstance(d, Leaf):
        return d
    if isinstance(d, Horiz):
        return Horiz(d.conn, invert(d.left), invert(d.right))
    parts, names = [], []
    x = d
    while isinstance(x, Step):
        if not _self_inverse(x.name):
            raise DerivationError(f"rule {x.name} is not self-inverse")
        parts.append(x.upper)
        names.append(x.name)
        x = x.lower
    parts.append(x)
    out = invert(parts[0])
    for part, name in zip(parts[1:], names):
        out = step(invert(part), name, out)
    return out


def ac_connective(f: Formula, g: Formula):
    for conn in (OR, AND):
        if _same_multiset(operands(f, conn), operands(g, conn)):
            return conn
    return None


def _same_multiset(xs, ys) -> bool:
    if len(xs) != len(ys):
        return False
    pool = list(ys)
    for x in xs:
        for i, y in enumerate(pool):
            if x == y:
                del pool[i]
                break
        else:
            return False
    return True


@deep_recursion
def ac_derivation(f: Formula, g: Formula) -> Derivation:
    """Rearrange the top-level |-operands (or &-operands) of ``f`` into ``g``."""
    if f == g:
        return Leaf(f)
    conn = ac_connective(f, g)
    if conn is None:
        raise FormulaError("formulae are not equal up to associativity and commutativity")
    to_rn = _to_right_nested(f, conn)
    items = operands(f, conn)
    target = operands(g, conn)
    # permutation: position in items of each target element
    used = [False] * len(items)
    order = []
    for t in target:
        for i, x in enumerate(items):
            if not used[i] and x == t:
                used[i] = True
                order.append(i)
                break
    cur = list(range(len(items)))
    rank = {idx: pos_ for pos_, idx in enumerate(order)}
    parts = [to_rn]
    n = len(cur)
    for end in range(n - 1, 0, -1):
        for i in range(end):
            if rank[cur[i]] > rank[cur[i + 1]]:
                X, Y = items[cur[i]], items[cur[i + 1]]
                R = right_nest([items[j] for j in cur[i + 2:]], conn) if i + 2 < n else None
                K = Context((conn, 1, items[cur[j]]) for j in range(i))
                parts.append(in_context(K, _swap_front(X, Y, R, conn)))
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
    parts.append(invert(_to_right_nested(g, conn)))
    return chain(*parts)
