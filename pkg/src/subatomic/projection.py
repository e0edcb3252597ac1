"""Projections of formulae and derivations on an atom, and cut elimination.

Projecting a derivation on ``a`` keeps one side of every ``a``-node.  Rule
instances whose names do not mention ``a`` survive untouched.  Those that do
either collapse (their projected premiss and conclusion coincide) or, when
an ``X & Y`` premiss projects against an ``X | Y`` conclusion, are replaced
by a short unit-padded detour through a medial rule.
"""
from __future__ import annotations

from typing import Iterable, Optional, Sequence

from . import formula as fm
from ._deep import deep_recursion
from .constructions import LEFT, RIGHT, project as project_formula, reorder_up
from .derivation import (
    Derivation,
    DerivationError,
    Horiz,
    Leaf,
    Step,
    _postorder,
    chain,
    check,
    compose_seq,
    eq_step,
    step,
)
from .formula import AND, ONE, OR, ZERO, Formula, FormulaError, Node, land, lor
from .rules import UP, down, up

__all__ = [
    "project_formula",
    "project_derivation",
    "project_derivation_iterative",
    "eliminate_cuts",
    "LEFT",
    "RIGHT",
]


def _horiz(conn, l, r):
    if isinstance(l, Leaf) and isinstance(r, Leaf):
        return Leaf(Node(conn, l.formula, r.formula))
    return Horiz(conn, l, r)


def _and_to_or(P: Formula, Q: Formula, kind: str) -> Derivation:
    """X & Y -> X | Y.  For a projected ``up`` rule the detour pads with 0
    and uses down(or,and); for a projected ``down`` rule it is the dual,
    padding with 1 and using up(and,or)."""
    X, Y = P.left, P.right
    if kind == UP:
        padded = land(lor(ZERO, X), lor(ZERO, Y))
        spread = lor(land(ZERO, ZERO), lor(X, Y))
        rule = down(OR, AND)
    else:
        padded = land(lor(ONE, ONE), land(X, Y))
        spread = lor(land(ONE, X), land(ONE, Y))
        rule = up(AND, OR)
    return chain(eq_step(P, padded), Step(rule, Leaf(padded), Leaf(spread)), eq_step(spread, Q))


def _project_step(name, pu: Derivation, pl: Derivation, a: str) -> Derivation:
    if a not in name.atoms():
        return step(pu, name, pl)
    P, Q = pu.conclusion, pl.premiss
    if P == Q:
        return compose_seq(pu, pl)
    if (isinstance(P, Node) and isinstance(Q, Node) and P.conn == AND and Q.conn == OR
            and P.left == Q.left and P.right == Q.right):
        return chain(pu, _and_to_or(P, Q, name.kind), pl)
    raise DerivationError(f"cannot project rule {name} on {a}: {P} vs {Q}")


def _check_side(side: str) -> bool:
    if side not in (LEFT, RIGHT):
        raise FormulaError(f"side must be 'left' or 'right', got {side!r}")
    return side == RIGHT


@deep_recursion
def project_derivation(d: Derivation, a: str, side: str, validate: bool = False) -> Derivation:
    """Left or right projection of ``d`` on atom ``a`` (top-down recursion)."""
    pick_right = _check_side(side)
    if validate and not check(d).valid:
        raise DerivationError("cannot project an invalid derivation")
    memo: dict[int, Derivation] = {}

    def go(x):
        got = memo.get(id(x))
        if got is not None:
            return got
        if isinstance(x, Leaf):
            out = Leaf(project_formula(x.formula, a, side))
        elif isinstance(x, Horiz):
            if x.conn == a:
                out = go(x.right if pick_right else x.left)
            else:
                out = _horiz(x.conn, go(x.left), go(x.right))
        else:
            out = _project_step(x.name, go(x.upper), go(x.lower), a)
        memo[id(x)] = out
        return out

    return go(d)


@deep_recursion
def project_derivation_iterative(d: Derivation, a: str, side: str) -> Derivation:
    """The same projection computed bottom-up with an explicit worklist: a
    different order of applying the defining clauses."""
    pick_right = _check_side(side)

    def visit(x, memo):
        if isinstance(x, Leaf):
            return Leaf(project_formula(x.formula, a, side))
        if isinstance(x, Horiz):
            if x.conn == a:
                return memo[id(x.right if pick_right else x.left)]
            return _horiz(x.conn, memo[id(x.left)], memo[id(x.right)])
        return _project_step(x.name, memo[id(x.upper)], memo[id(x.lower)], a)

    return _postorder(d, visit)[id(d)]


def _choose_atom(cut_atoms: set, order: Optional[Sequence[str]]) -> str:
    if order:
        for name in order:
            if name in cut_atoms:
                return name
    return min(cut_atoms)


@deep_recursion
def eliminate_cuts(p: Derivation, atom_order: Optional[Sequence[str]] = None,
                   trace: Optional[list] = None) -> Derivation:
    """Turn a valid proof into a cut-free proof of the same conclusion.

    While some cut remains on an atom ``a`` (chosen by ``atom_order``, else
    the lexicographically least), the proof ``phi`` of ``A`` becomes
    ``1 = (1 a 1)``, then the two projections of ``phi`` side by side under
    ``a``, then the cut-free reordering ``(left_a A) a (right_a A) -> A``.
    The procedure continues inside each projection, which no longer
    mentions ``a``; the reordering part is never revisited.
    """
    report = check(p)
    if not report.valid:
        raise DerivationError("input derivation is not valid")
    if p.premiss != ONE:
        raise DerivationError("input derivation is not a proof (premiss is not 1)")
    return _eliminate(p, report, atom_order, trace)


def _eliminate(phi: Derivation, report, order, trace) -> Derivation:
    if not report.cuts:
        return phi
    a = _choose_atom(report.cut_atoms(), order)
    if trace is not None:
        trace.append(a)
    A = phi.conclusion
    halves = []
    for side in (LEFT, RIGHT):
        half = project_derivation(phi, a, side)
        halves.append(_eliminate(half, check(half), order, trace))
    return chain(eq_step(ONE, Node(a, ONE, ONE)),
                 Horiz(a, halves[0], halves[1]),
                 reorder_up(A, a))
