"""Strict decision trees: translation, reduction, certified ``apply`` and a
cut-free tautology prover.

A strict decision tree (SDT) is built from units and atoms only.  It is
*ordered* for a variable order when atoms along every root-to-leaf path
appear at most once and in increasing order, and *reduced* (an RODT) when,
in addition, no node has two identical children.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import formula as fm
from ._deep import deep_recursion
from .constructions import LEFT, RIGHT, cocontraction, contraction, project, reorder_up
from .derivation import Derivation, Horiz, Leaf, Step, chain, dualize, eq_step
from .formula import AND, ONE, OR, ZERO, Formula, FormulaError, Node, Unit
from .rules import up


class OrderError(FormulaError):
    """A variable order does not fit the formulae it is used with."""


class NotRODTError(FormulaError):
    """An input that should be a (reduced) ordered decision tree is not."""


def parse_order(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    for n in names:
        fm.check_atom_name(n)
    if len(set(names)) != len(names):
        raise OrderError(f"repeated atom in order {text!r}")
    return names


def default_order(*formulas: Formula) -> list[str]:
    out: set = set()
    for f in formulas:
        out |= fm.atoms(f)
    return sorted(out)


def _rank(order: Sequence[str]) -> dict:
    return {a: i for i, a in enumerate(order)}


def _require_cover(f: Formula, order: Sequence[str]) -> None:
    missing = fm.atoms(f) - set(order)
    if missing:
        raise OrderError(f"order does not cover atoms {sorted(missing)}")


def is_sdt(f: Formula) -> bool:
    return not fm.has_connectives(f)


def is_ordered_sdt(f: Formula, order: Sequence[str]) -> bool:
    """Every path strictly increases in ``order``; connectives are absent."""
    rank = _rank(order)
    todo = [(f, -1)]
    while todo:
        x, floor = todo.pop()
        if isinstance(x, Unit):
            continue
        r = rank.get(x.conn)
        if r is None or r <= floor:
            return False
        todo.append((x.left, r))
        todo.append((x.right, r))
    return True


def is_rodt(f: Formula, order: Sequence[str]) -> bool:
    return is_ordered_sdt(f, order) and not any(
        isinstance(x, Node) and x.left == x.right for x in fm.subterms(f))


# -- translation -------------------------------------------------------------

@deep_recursion
def _to_sdt_up(A: Formula, order: Sequence[str]):
    """(B0, up: B0 -> A) with B0 an ordered tree, not yet unit-normalized."""
    present = fm.atoms(A)
    if not present:
        B = fm.normalize(A)
        return B, eq_step(B, A)
    a = next(x for x in order if x in present)
    C, up_l = _to_sdt_up(project(A, a, LEFT), order)
    D, up_r = _to_sdt_up(project(A, a, RIGHT), order)
    return Node(a, C, D), chain(Horiz(a, up_l, up_r), reorder_up(A, a))


def to_sdt(A: Formula, order: Optional[Sequence[str]] = None, with_down: bool = True):
    """(B, up: B -> A, down: A -> B) with B an ordered SDT equivalent to A.

    The tree is built by projecting on the least atom present, recursing on
    both projections and joining the results with the reordering
    derivation.  Subtrees whose leaves are all equal units are collapsed by
    a final equality step.  ``down`` is obtained dually from the negation;
    ``up`` is cut-free, but it may use identities (excluded middle), whose
    duals make ``down`` contain cuts.
    """
    order = list(order) if order is not None else default_order(A)
    _require_cover(A, order)
    B0, up_d = _to_sdt_up(A, order)
    B = fm.normalize(B0)
    up_d = chain(eq_step(B, B0), up_d)
    if not with_down:
        return B, up_d, None
    nB, nup, _ = to_sdt(fm.negate(A), order, with_down=False)
    down_d = dualize(nup)
    assert fm.negate(nB) == B
    return B, up_d, down_d


def reduce_rodt(B: Formula, order: Optional[Sequence[str]] = None) -> Formula:
    """Replace every (X a X) by X, bottom-up."""
    order = list(order) if order is not None else default_order(B)
    if not is_ordered_sdt(B, order):
        raise NotRODTError("input is not an ordered strict decision tree")

    def step(x, l, r):
        if isinstance(x, Unit):
            return x
        if l == r:
            return l
        return Node(x.conn, l, r)

    return fm.rebuild(B, step)


def rodt(A: Formula, order: Optional[Sequence[str]] = None) -> Formula:
    """The reduced ordered decision tree of A's Boolean function."""
    order = list(order) if order is not None else default_order(A)
    return reduce_rodt(to_sdt(A, order, with_down=False)[0], order)


# -- apply -------------------------------------------------------------------

def _collapse(C0: Formula, C1: Formula, x: str):
    """(C0 x C1) -> reduced result."""
    joined = Node(x, C0, C1)
    if C0 != C1:
        return joined, Leaf(joined)
    if isinstance(C0, Unit):
        return C0, eq_step(joined, C0)
    return C0, contraction(C0, x)


def _pad(B: Formula, x: str) -> Derivation:
    """B -> (B x B)."""
    if isinstance(B, Unit):
        return eq_step(B, Node(x, B, B))
    return cocontraction(B, x)


def _identity_unit(conn: str) -> Unit:
    return ONE if conn == AND else ZERO


@deep_recursion
def _apply(A: Formula, B: Formula, conn: str, rank: dict):
    joined = Node(conn, A, B)
    ident = _identity_unit(conn)
    if A == ident:
        return B, eq_step(joined, B)
    if B == ident:
        return A, eq_step(joined, A)
    if isinstance(A, Unit) and isinstance(B, Unit):
        C = fm.normalize(joined)
        return C, eq_step(joined, C)
    ra = rank[A.conn] if isinstance(A, Node) else len(rank)
    rb = rank[B.conn] if isinstance(B, Node) else len(rank)
    x = A.conn if ra <= rb else B.conn
    pads = []
    for side in (A, B):
        pads.append(Leaf(side) if isinstance(side, Node) and side.conn == x else _pad(side, x))
    Ax, Bx = pads[0].conclusion, pads[1].conclusion
    split = Node(x, Node(conn, Ax.left, Bx.left), Node(conn, Ax.right, Bx.right))
    C0, d0 = _apply(Ax.left, Bx.left, conn, rank)
    C1, d1 = _apply(Ax.right, Bx.right, conn, rank)
    C, d_collapse = _collapse(C0, C1, x)
    prefix = Horiz(conn, pads[0], pads[1]) if not all(isinstance(p, Leaf) for p in pads) else Leaf(joined)
    cert = chain(prefix,
                 Step(up(conn, x), Leaf(Node(conn, Ax, Bx)), Leaf(split)),
                 Horiz(x, d0, d1),
                 d_collapse)
    return C, cert


def apply_rodt(A: Formula, B: Formula, conn: str, order: Optional[Sequence[str]] = None,
               order_b: Optional[Sequence[str]] = None):
    """(C, cert: (A conn B) -> C) with C the RODT of ``A conn B``.

    Both inputs are split on their least top variable with a medial
    ``up(conn, x)`` step; a side lacking the variable is first duplicated by
    cocontraction.  Results with identical children are collapsed by unit
    equations or by contraction.
    """
    if conn not in (AND, OR):
        raise FormulaError(f"apply needs & or |, got {conn!r}")
    order = list(order) if order is not None else default_order(A, B)
    if order_b is not None and list(order_b) != order:
        raise OrderError("the two inputs use different orders")
    for f in (A, B):
        _require_cover(f, order)
        if not is_rodt(f, order):
            raise NotRODTError(f"{fm.print_formula(f)} is not an RODT for order {','.join(order)}")
    return _apply(A, B, conn, _rank(order))


# -- prover ------------------------------------------------------------------

@dataclass(frozen=True)
class NotTautology:
    witness: dict

    def __str__(self) -> str:
        return "NotTautology " + ",".join(f"{k}={v}" for k, v in sorted(self.witness.items()))


def prove_tautology(A: Formula, order: Optional[Sequence[str]] = None, limit: Optional[int] = None):
    """A cut-free proof of A, or NotTautology with a falsifying assignment."""
    w = fm.falsifying_assignment(A, limit)
    if w is not None:
        return NotTautology(dict(w))
    B, up_d, _ = to_sdt(A, order, with_down=False)
    if B != ONE:  # pragma: no cover - guarded by the semantic check above
        raise AssertionError("tautology did not reduce to 1")
    return up_d
