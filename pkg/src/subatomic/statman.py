"""Statman tautologies and their polynomial-size cut-free proofs.

Literals are ``a_i = (0 a_i 1)`` and ``~a_i = (1 a_i 0)`` (likewise for
``b_i``).  Disjunction spines and conjunction chains are right-nested.

The proof of ``S_n`` is a case analysis on ``a_n`` and ``b_n`` carried out
with projections: ``S_{n-1}`` is cocontracted under ``a_n``, each copy is
turned into the corresponding projection of ``S_n`` and the two halves are
recombined by the cut-free reordering derivation.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import formula as fm
from ._deep import deep_recursion
from .constructions import (
    LEFT,
    RIGHT,
    cocontraction,
    left1,
    project,
    reorder_up,
    weakening,
)
from .derivation import Derivation, Horiz, Leaf, Step, chain, eq_step, metrics, check
from .rules import down
from .formula import AND, ONE, OR, ZERO, Formula, FormulaError, Node, land, lor, neg, pos


def atom_a(i: int) -> str:
    return f"a{i}"


def atom_b(i: int) -> str:
    return f"b{i}"


def _chain_and(items):
    out = items[-1]
    for x in reversed(items[:-1]):
        out = land(x, out)
    return out


def _chain_or(items):
    out = items[-1]
    for x in reversed(items[:-1]):
        out = lor(x, out)
    return out


def big_a(n: int, k: int) -> Formula:
    """(a_n | b_n) & ... & (a_{k+1} | b_{k+1}) & ~a_k, right-nested."""
    return _big(n, k, atom_a(k))


def big_b(n: int, k: int) -> Formula:
    return _big(n, k, atom_b(k))


def _big(n, k, last):
    if not n > k >= 1:
        raise FormulaError("need n > k >= 1")
    items = [lor(pos(atom_a(i)), pos(atom_b(i))) for i in range(n, k, -1)]
    return _chain_and(items + [neg(last)])


def statman_disjuncts(n: int) -> list[Formula]:
    out = [land(neg(atom_a(n)), neg(atom_b(n)))]
    for k in range(n - 1, 0, -1):
        out.append(land(big_a(n, k), big_b(n, k)))
    out.append(lor(pos(atom_a(1)), pos(atom_b(1))))
    return out


@dataclass(frozen=True)
class StatmanInstance:
    n: int
    formula: Formula

    @property
    def atoms_a(self) -> list[str]:
        return [atom_a(i) for i in range(1, self.n + 1)]

    @property
    def atoms_b(self) -> list[str]:
        return [atom_b(i) for i in range(1, self.n + 1)]

    @property
    def size(self) -> int:
        return self.formula.size


def statman_formula(n: int) -> StatmanInstance:
    """S_n with a right-nested disjunction spine."""
    if n < 1:
        raise FormulaError("n must be at least 1")
    return StatmanInstance(n, _chain_or(statman_disjuncts(n)))


def _weaken_where(target: Formula, grow) -> Derivation:
    """A derivation from ``target`` with every subterm selected by ``grow``
    replaced by 0, up to ``target``; selected subterms are weakened in."""

    def go(x):
        if grow(x):
            return weakening(x)
        if isinstance(x, fm.Unit):
            return Leaf(x)
        l, r = go(x.left), go(x.right)
        if isinstance(l, Leaf) and isinstance(r, Leaf):
            return Leaf(Node(x.conn, l.formula, r.formula))
        return Horiz(x.conn, l, r)

    return go(target)


def _base_proof() -> Derivation:
    a, b = atom_a(1), atom_b(1)
    S1 = statman_formula(1).formula
    top = Node(a, Node(b, lor(ONE, ZERO), lor(ZERO, ONE)), lor(land(ZERO, ZERO), lor(ONE, ZERO)))
    split = Step(down(OR, b), Leaf(top.left),
                 Horiz(OR, eq_step(Node(b, ONE, ZERO), land(ONE, neg(b))),
                       eq_step(Node(b, ZERO, ONE), lor(ZERO, pos(b)))))
    right = Horiz(OR, Horiz(AND, Leaf(ZERO), weakening(neg(b))),
                  Horiz(OR, Leaf(ONE), weakening(pos(b))))
    return chain(eq_step(ONE, top), Horiz(a, split, right), reorder_up(S1, a))


def inductive_step(n: int) -> Derivation:
    """A cut-free derivation S_{n-1} -> S_n (n >= 2)."""
    if n < 2:
        raise FormulaError("the inductive step needs n >= 2")
    an, bn = atom_a(n), atom_b(n)
    prev = statman_formula(n - 1).formula
    Sn = statman_formula(n).formula
    left_target = project(Sn, an, LEFT)
    right_target = project(Sn, an, RIGHT)

    # left half: case analysis on b_n inside the a_n = 0 projection
    lb, rb = project(left_target, bn, LEFT), project(left_target, bn, RIGHT)
    head, tail = lb.left, lb.right
    grow_true = chain(eq_step(ONE, lor(head, ZERO)), Horiz(OR, Leaf(head), weakening(tail)))
    left_half = chain(left1(prev, bn),
                      Horiz(bn, grow_true, eq_step(prev, rb)),
                      reorder_up(left_target, bn))

    # right half: the b_n literals are irrelevant once a_n = 1
    is_bn_literal = lambda x: isinstance(x, Node) and x.conn == bn
    right_half = _weaken_where(right_target, is_bn_literal)
    right_half = chain(eq_step(prev, right_half.premiss), right_half)

    return chain(cocontraction(prev, an),
                 Horiz(an, left_half, right_half),
                 reorder_up(Sn, an))


@deep_recursion
def statman_proof(n: int) -> Derivation:
    """A cut-free proof (premiss 1) of S_n."""
    if n < 1:
        raise FormulaError("n must be at least 1")
    proof = _base_proof()
    for i in range(2, n + 1):
        proof = chain(proof, inductive_step(i))
    return proof


def statman_stats(n: int, proof: Derivation | None = None) -> dict:
    proof = statman_proof(n) if proof is None else proof
    m = metrics(proof)
    return {
        "n": n,
        "m": statman_formula(n).size,
        "proof_size": m.size,
        "width": m.width,
        "height": m.height,
        "cuts": len(check(proof).cuts),
    }


STATS_HEADER = "n,m,proof_size,width,height,cuts"


def stats_csv_row(row: dict) -> str:
    return ",".join(str(row[k]) for k in STATS_HEADER.split(","))
