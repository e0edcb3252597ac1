"""Decision-tree formulae: units, the connectives ``|`` and ``&``, and atoms
used as binary self-dual connectives.

``(A a B)`` reads "A if a is false, B if a is true".  Formulae are immutable
and hashed on construction; every traversal here is iterative so that very
deep formulae do not exhaust the interpreter stack.
"""
from __future__ import annotations

import itertools
import os
import re
from enum import Enum
from typing import Iterable, Iterator, Mapping, Sequence

OR = "|"
AND = "&"

ATOM_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
# rule-name syntax spells the connectives as words, so these cannot be atoms
RESERVED_NAMES = frozenset({"or", "and"})

DEFAULT_MAX_ATOMS = 24


class FormulaError(ValueError):
    """Raised for malformed formulae and bad semantic queries."""


class ParseError(FormulaError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnboundAtomError(FormulaError):
    def __init__(self, atom: str):
        super().__init__(f"atom {atom!r} is not bound by the assignment")
        self.atom = atom


def is_atom(conn: str) -> bool:
    return conn != OR and conn != AND


def check_atom_name(name: str) -> str:
    if not ATOM_RE.match(name) or name in RESERVED_NAMES:
        raise FormulaError(f"invalid atom name {name!r}")
    return name


def dual(conn: str) -> str:
    if conn == OR:
        return AND
    if conn == AND:
        return OR
    return conn


def weaker(conn: str) -> str:
    return OR if conn == AND else conn


def stronger(conn: str) -> str:
    return AND if conn == OR else conn


class Formula:
    """Base class of :class:`Unit` and :class:`Node`."""

    __slots__ = ()

    size: int

    def __str__(self) -> str:
        return print_formula(self)

    def __repr__(self) -> str:
        return f"parse_formula({print_formula(self)!r})"


class Unit(Formula):
    __slots__ = ("value", "_hash")

    size = 1

    def __init__(self, value: int):
        if value not in (0, 1):
            raise FormulaError(f"unit must be 0 or 1, got {value!r}")
        self.value = value
        self._hash = hash(("unit", value))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return isinstance(other, Unit) and other.value == self.value

    def __reduce__(self):
        return (Unit, (self.value,))


ZERO = Unit(0)
ONE = Unit(1)


def unit(value: int) -> Unit:
    return ONE if value else ZERO


class Node(Formula):
    __slots__ = ("conn", "left", "right", "size", "_hash", "_atoms", "_nf")

    def __init__(self, conn: str, left: Formula, right: Formula):
        self.conn = conn
        self.left = left
        self.right = right
        self.size = left.size + right.size
        self._hash = hash((conn, left._hash, right._hash))
        self._atoms = None
        self._nf = None

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Node):
            return False
        return _same(self, other)

    def __reduce__(self):
        return (Node, (self.conn, self.left, self.right))


def _same(f: Formula, g: Formula) -> bool:
    stack = [(f, g)]
    while stack:
        x, y = stack.pop()
        if x is y:
            continue
        if x._hash != y._hash or x.size != y.size:
            return False
        if isinstance(x, Unit) or isinstance(y, Unit):
            if not (isinstance(x, Unit) and isinstance(y, Unit) and x.value == y.value):
                return False
            continue
        if x.conn != y.conn:
            return False
        stack.append((x.right, y.right))
        stack.append((x.left, y.left))
    return True


def lor(a: Formula, b: Formula) -> Node:
    return Node(OR, a, b)


def land(a: Formula, b: Formula) -> Node:
    return Node(AND, a, b)


def dt(a: Formula, atom: str, b: Formula) -> Node:
    return Node(atom, a, b)


def pos(atom: str) -> Node:
    """The positive literal ``(0 atom 1)``."""
    return Node(atom, ZERO, ONE)


def neg(atom: str) -> Node:
    """The negative literal ``(1 atom 0)``."""
    return Node(atom, ONE, ZERO)


def rebuild(f: Formula, fn) -> Formula:
    """Bottom-up map: ``fn(node, new_left, new_right)`` for nodes, ``fn(unit,
    None, None)`` for units.  Shared subterms are processed once."""
    memo: dict[int, Formula] = {}
    stack = [(f, False)]
    while stack:
        x, expanded = stack.pop()
        if id(x) in memo:
            continue
        if isinstance(x, Unit):
            memo[id(x)] = fn(x, None, None)
        elif expanded:
            memo[id(x)] = fn(x, memo[id(x.left)], memo[id(x.right)])
        else:
            stack.append((x, True))
            stack.append((x.right, False))
            stack.append((x.left, False))
    return memo[id(f)]


def subterms(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal, left before right."""
    stack = [f]
    while stack:
        x = stack.pop()
        yield x
        if isinstance(x, Node):
            stack.append(x.right)
            stack.append(x.left)


def atoms(f: Formula) -> frozenset:
    if isinstance(f, Unit):
        return frozenset()
    if f._atoms is not None:
        return f._atoms

    def collect(x, l, r):
        if isinstance(x, Unit):
            return frozenset()
        if x._atoms is None:
            x._atoms = l | r | {x.conn} if is_atom(x.conn) else l | r
        return x._atoms

    return rebuild(f, collect)


def atoms_in_order(f: Formula) -> list[str]:
    """Distinct atoms in order of first (pre-order) occurrence."""
    seen: dict[str, None] = {}
    for x in subterms(f):
        if isinstance(x, Node) and is_atom(x.conn):
            seen.setdefault(x.conn)
    return list(seen)


def depth(f: Formula) -> int:
    return rebuild(f, lambda x, l, r: 0 if l is None else 1 + max(l, r))


def negate(f: Formula) -> Formula:
    def step(x, l, r):
        if isinstance(x, Unit):
            return unit(1 - x.value)
        return Node(dual(x.conn), l, r)

    return rebuild(f, step)


def mirror(f: Formula) -> Formula:
    """Swap the children of every node."""
    return rebuild(f, lambda x, l, r: x if l is None else Node(x.conn, r, l))


def _reduce_root(conn: str, l: Formula, r: Formula) -> Formula:
    # l and r are already normal
    if conn == OR:
        if r is ZERO or r == ZERO:
            return l
        if l == ZERO:
            return r
        if l == ONE and r == ONE:
            return ONE
    elif conn == AND:
        if r == ONE:
            return l
        if l == ONE:
            return r
        if l == ZERO and r == ZERO:
            return ZERO
    else:
        if isinstance(l, Unit) and isinstance(r, Unit) and l.value == r.value:
            return l
    return Node(conn, l, r)


def normalize(f: Formula) -> Formula:
    """Normal form under the size-reducing unit rewrites.

    The rewrites are A|0 -> A, 0|A -> A, A&1 -> A, 1&A -> A, 0&0 -> 0,
    1|1 -> 1, (0 a 0) -> 0 and (1 a 1) -> 1.  They are terminating and
    confluent, so one bottom-up pass reaches the unique normal form.
    """

    if isinstance(f, Unit):
        return f
    if f._nf is not None:
        return f._nf
    stack = [(f, False)]
    while stack:
        x, expanded = stack.pop()
        if isinstance(x, Unit) or x._nf is not None:
            continue
        if not expanded:
            stack.append((x, True))
            stack.append((x.right, False))
            stack.append((x.left, False))
            continue
        l = x.left if isinstance(x.left, Unit) else x.left._nf
        r = x.right if isinstance(x.right, Unit) else x.right._nf
        out = _reduce_root(x.conn, l, r)
        if isinstance(out, Node) and out.left is x.left and out.right is x.right:
            out = x
        x._nf = out
        if isinstance(out, Node):
            out._nf = out
    return f._nf


def equal_mod_units(f: Formula, g: Formula) -> bool:
    return f == g or normalize(f) == normalize(g)


def is_unit_value(f: Formula, value: int) -> bool:
    """``f = value`` in the unit theory."""
    return normalize(f) == unit(value)


def evaluate(f: Formula, assignment: Mapping[str, int]) -> int:
    def step(x, l, r):
        if l is None:
            return x.value
        if x.conn == OR:
            return l | r
        if x.conn == AND:
            return l & r
        try:
            v = assignment[x.conn]
        except KeyError:
            raise UnboundAtomError(x.conn) from None
        return r if v else l

    return rebuild(f, step)


def max_atoms_limit() -> int:
    env = os.environ.get("DT_MAX_ATOMS")
    return int(env) if env else DEFAULT_MAX_ATOMS


def assignments(names: Iterable[str]) -> Iterator[dict[str, int]]:
    names = sorted(names)
    for values in itertools.product((0, 1), repeat=len(names)):
        yield dict(zip(names, values))


def _atom_masks(names: Sequence[str]) -> tuple[dict[str, int], int]:
    """Bit-parallel encodings: bit ``i`` stands for the ``i``-th assignment
    of :func:`assignments`; the first name is the most significant bit."""
    k = len(names)
    total = 1 << k
    full = (1 << total) - 1
    masks = {}
    for j, name in enumerate(names):
        half = 1 << (k - 1 - j)
        period = half << 1
        block = ((1 << half) - 1) << half
        masks[name] = block * (full // ((1 << period) - 1))
    return masks, full


def truth_vector(f: Formula, names: Iterable[str] | None = None) -> tuple[int, int]:
    """(bits, count): the whole truth table of ``f`` packed into one integer,
    bit ``i`` holding the value under the ``i``-th assignment."""
    names = sorted(atoms(f) if names is None else names)
    masks, full = _atom_masks(names)

    def step(x, l, r):
        if l is None:
            return full if x.value else 0
        if x.conn == OR:
            return l | r
        if x.conn == AND:
            return l & r
        try:
            m = masks[x.conn]
        except KeyError:
            raise UnboundAtomError(x.conn) from None
        return (l & ~m) | (r & m)

    return rebuild(f, step), 1 << len(names)


def truth_table(f: Formula, names: Iterable[str] | None = None) -> tuple[int, ...]:
    """Values of ``f`` over all assignments to ``names`` in lexicographic
    order (first name is the most significant bit)."""
    bits, count = truth_vector(f, names)
    return tuple((bits >> i) & 1 for i in range(count))


def _assignment_at(names: Sequence[str], index: int) -> dict[str, int]:
    k = len(names)
    return {n: (index >> (k - 1 - j)) & 1 for j, n in enumerate(names)}


def falsifying_assignment(f: Formula, limit: int | None = None) -> dict[str, int] | None:
    """The first assignment (in :func:`assignments` order) making ``f``
    false, found by exhaustive bit-parallel enumeration."""
    names = sorted(atoms(f))
    limit = max_atoms_limit() if limit is None else limit
    if len(names) > limit:
        raise FormulaError(f"{len(names)} atoms exceed the exhaustion limit {limit}")
    bits, count = truth_vector(f, names)
    zeros = ~bits & ((1 << count) - 1)
    if not zeros:
        return None
    return _assignment_at(names, (zeros & -zeros).bit_length() - 1)


def is_tautology(f: Formula, limit: int | None = None) -> bool:
    return falsifying_assignment(f, limit) is None


def implies(f: Formula, g: Formula) -> bool:
    names = sorted(atoms(f) | atoms(g))
    bf, _ = truth_vector(f, names)
    bg, _ = truth_vector(g, names)
    return bf & ~bg == 0


def equivalent(f: Formula, g: Formula) -> bool:
    names = sorted(atoms(f) | atoms(g))
    return truth_vector(f, names)[0] == truth_vector(g, names)[0]


# -- sublanguages -----------------------------------------------------------

class Language(Enum):
    PROP = "Prop"
    SDT = "SDT"
    BOTH = "Both"
    NEITHER = "Neither"


def has_nested_atoms(f: Formula) -> bool:
    for x in subterms(f):
        if isinstance(x, Node) and is_atom(x.conn) and (atoms(x.left) or atoms(x.right)):
            return True
    return False


def has_connectives(f: Formula) -> bool:
    return any(isinstance(x, Node) and not is_atom(x.conn) for x in subterms(f))


def classify(f: Formula) -> Language:
    n = normalize(f)
    prop = not has_nested_atoms(n)
    sdt = not has_connectives(n)
    if prop and sdt:
        return Language.BOTH
    if prop:
        return Language.PROP
    if sdt:
        return Language.SDT
    return Language.NEITHER


# -- classical propositional embedding ---------------------------------------

def embed_prop(std) -> Formula:
    """Map a classical formula to a nesting-free decision-tree formula.

    ``std`` is a nested tuple: ``0``/``1`` for constants, ``"a"`` for a
    positive literal, ``("not", "a")`` for a negative literal, and
    ``("and", x, y)`` / ``("or", x, y)`` for the connectives.
    """
    stack = [(std, False)]
    out: list[Formula] = []
    while stack:
        x, expanded = stack.pop()
        if x in (0, 1) and not isinstance(x, bool) or x is True or x is False:
            out.append(unit(int(x)))
        elif isinstance(x, str):
            out.append(pos(check_atom_name(x)))
        elif isinstance(x, tuple) and len(x) == 2 and x[0] == "not":
            out.append(neg(check_atom_name(x[1])))
        elif isinstance(x, tuple) and len(x) == 3 and x[0] in ("and", "or"):
            if expanded:
                r = out.pop()
                l = out.pop()
                out.append(Node(AND if x[0] == "and" else OR, l, r))
            else:
                stack.append((x, True))
                stack.append((x[2], False))
                stack.append((x[1], False))
        else:
            raise FormulaError(f"not a classical formula: {x!r}")
    return out[0]


# -- text format -------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:([()&|~,{}])|([01])(?![a-z0-9_])|([a-z][a-z0-9_]*)|(\S))")


def tokenize(text: str, start: int = 0) -> list[tuple[str, str, int]]:
    """Split text into ``(kind, value, offset)`` tokens.

    Kinds: ``punct`` for ``( ) & | ~ , { }``, ``unit``, ``name``.
    Offsets are byte offsets into the UTF-8 encoding of ``text``.
    """
    tokens = []
    pos_ = start
    n = len(text)
    while pos_ < n:
        m = _TOKEN_RE.match(text, pos_)
        if m is None:  # trailing whitespace
            break
        if m.group(4) is not None:
            raise ParseError(f"unexpected character {m.group(4)!r}", _byte_offset(text, m.start(4)))
        if m.group(1) is not None:
            tokens.append(("punct", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("unit", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            tokens.append(("name", m.group(3), m.start(3)))
        pos_ = m.end()
    return tokens


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


class TokenStream:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def offset(self) -> int:
        tok = self.peek()
        index = tok[2] if tok else len(self.text)
        return _byte_offset(self.text, index)

    def error(self, message: str):
        raise ParseError(message, self.offset())

    def next(self):
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of input")
        self.i += 1
        return tok

    def expect(self, value: str):
        tok = self.peek()
        if tok is None or tok[0] != "punct" or tok[1] != value:
            self.error(f"expected {value!r}")
        self.i += 1

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)


def read_formula(ts: TokenStream, allow_hole: bool = False) -> Formula:
    """Read one formula from a token stream (iteratively)."""
    # frames: [stage, left, conn]; stage 0 = need left, 1 = need op, 2 = need right
    frames: list[list] = []
    result = None
    while True:
        if result is None:
            tok = ts.peek()
            if tok is None:
                ts.error("expected a formula")
            kind, value, _ = tok
            if kind == "unit":
                ts.next()
                result = unit(int(value))
            elif kind == "punct" and value == "(":
                ts.next()
                frames.append([0, None, None])
                continue
            elif allow_hole and kind == "punct" and value == "{":
                ts.next()
                ts.expect("}")
                result = HOLE
            else:
                ts.error("expected a formula")
        if not frames:
            return result
        frame = frames[-1]
        if frame[0] == 0:
            frame[1] = result
            tok = ts.peek()
            if tok is None:
                ts.error("expected a connective")
            kind, value, _ = tok
            if kind == "punct" and value in (OR, AND):
                frame[2] = value
            elif kind == "name":
                if value in RESERVED_NAMES:
                    ts.error(f"reserved word {value!r} used as atom name")
                frame[2] = value
            elif kind == "unit":
                ts.error(f"reserved token {value!r} used as atom name")
            else:
                ts.error("expected a connective")
            ts.next()
            frame[0] = 2
            result = None
        else:
            ts.expect(")")
            frames.pop()
            result = _make_node(frame[2], frame[1], result)


def _make_node(conn, l, r):
    if l is HOLE or r is HOLE or isinstance(l, _HoleNode) or isinstance(r, _HoleNode):
        return _HoleNode(conn, l, r)
    return Node(conn, l, r)


def parse_formula(text: str) -> Formula:
    ts = TokenStream(text)
    f = read_formula(ts)
    if not ts.at_end():
        ts.error("trailing input")
    return f


def print_formula(f: Formula) -> str:
    parts: list[str] = []
    stack: list = [f]
    while stack:
        x = stack.pop()
        if isinstance(x, str):
            parts.append(x)
        elif isinstance(x, Unit):
            parts.append(str(x.value))
        elif x is HOLE:
            parts.append("{}")
        else:
            stack.append(")")
            stack.append(x.right)
            stack.append(f" {x.conn} ")
            stack.append(x.left)
            stack.append("(")
    return "".join(parts)


# -- contexts ----------------------------------------------------------------

class _Hole:
    __slots__ = ()

    def __repr__(self):
        return "HOLE"


HOLE = _Hole()


class _HoleNode:
    """Parse-time node on the path to a hole."""

    __slots__ = ("conn", "left", "right")

    def __init__(self, conn, left, right):
        self.conn, self.left, self.right = conn, left, right


class Context:
    """A formula with exactly one hole, stored as the root-to-hole path.

    Each frame is ``(conn, side, sibling)``: the hole lies in the ``side``
    child (0 = left, 1 = right) of a ``conn`` node whose other child is
    ``sibling``.
    """

    __slots__ = ("frames",)

    def __init__(self, frames: Iterable[tuple[str, int, Formula]] = ()):
        self.frames = tuple(frames)

    def __eq__(self, other):
        return isinstance(other, Context) and self.frames == other.frames

    def __hash__(self):
        return hash(self.frames)

    @property
    def is_trivial(self) -> bool:
        return not self.frames

    @property
    def size(self) -> int:
        return sum(sib.size for _, _, sib in self.frames)

    def plug(self, f: Formula) -> Formula:
        for conn, side, sib in reversed(self.frames):
            f = Node(conn, sib, f) if side else Node(conn, f, sib)
        return f

    def head(self) -> tuple[str, int, Formula]:
        return self.frames[0]

    def tail(self) -> "Context":
        return Context(self.frames[1:])

    def negate(self) -> "Context":
        return Context((dual(c), s, negate(sib)) for c, s, sib in self.frames)

    def mirror(self) -> "Context":
        return Context((c, 1 - s, mirror(sib)) for c, s, sib in self.frames)

    def extend(self, conn: str, side: int, sibling: Formula) -> "Context":
        return Context(self.frames + ((conn, side, sibling),))

    def __str__(self) -> str:
        return print_formula(self.plug_raw())

    def __repr__(self):
        return f"parse_context({str(self)!r})"

    def plug_raw(self):
        f = HOLE
        for conn, side, sib in reversed(self.frames):
            f = _HoleNode(conn, sib, f) if side else _HoleNode(conn, f, sib)
        return f


def parse_context(text: str) -> Context:
    ts = TokenStream(text)
    tree = read_formula(ts, allow_hole=True)
    if not ts.at_end():
        ts.error("trailing input")
    frames = []
    x = tree
    while x is not HOLE:
        if not isinstance(x, _HoleNode):
            raise FormulaError("context has no hole")
        lh = x.left is HOLE or isinstance(x.left, _HoleNode)
        rh = x.right is HOLE or isinstance(x.right, _HoleNode)
        if lh and rh:
            raise FormulaError("context has more than one hole")
        if lh:
            frames.append((x.conn, 0, x.right))
            x = x.left
        else:
            frames.append((x.conn, 1, x.left))
            x = x.right
    return Context(frames)
