"""Random formulae, random valid derivations and random proofs with cuts.

All generators take an explicit ``random.Random`` so corpora are
reproducible from a seed.
"""
from __future__ import annotations

import random
from typing import Optional, Sequence

from .constructions import in_context, weakening
from .derivation import Derivation, Horiz, Leaf, Step, chain, eq_step, horiz
from .formula import AND, ONE, OR, ZERO, Context, Formula, Node, land, lor, neg, pos, unit
from .rules import apply_rule, down, enumerate_rule_names, instantiate, up

DEFAULT_ATOMS = ("a", "b", "c", "d", "e", "f")


def random_formula(rng: random.Random, atoms: Sequence[str], size: int) -> Formula:
    """A uniformly shaped random formula with exactly ``size`` units."""
    if size <= 1:
        return unit(rng.randint(0, 1))
    k = rng.randint(1, size - 1)
    conn = rng.choice([AND, OR] + list(atoms) * 2) if atoms else rng.choice([AND, OR])
    return Node(conn, random_formula(rng, atoms, k), random_formula(rng, atoms, size - k))


def positions(f: Formula):
    """Every (context, subformula) decomposition of ``f``."""
    out = []
    todo = [(Context(), f)]
    while todo:
        K, x = todo.pop()
        out.append((K, x))
        if isinstance(x, Node):
            todo.append((K.extend(x.conn, 0, x.right), x.left))
            todo.append((K.extend(x.conn, 1, x.left), x.right))
    return out


def _padding(rng, x: Formula) -> Formula:
    return rng.choice([lor(x, ZERO), lor(ZERO, x), land(x, ONE), land(ONE, x)])


def random_rewrite(rng: random.Random, f: Formula, names, max_size: int) -> Optional[Derivation]:
    """One random rule (or equality) application somewhere inside ``f``."""
    places = positions(f)
    moves = []
    for K, x in places:
        if isinstance(x, Node):
            for name in names:
                q = apply_rule(name, x)
                if q is not None:
                    moves.append((K, Step(name, Leaf(x), Leaf(q))))
    if moves and rng.random() < 0.8:
        K, d = rng.choice(moves)
        return in_context(K, d)
    K, x = rng.choice(places)
    if f.size < max_size:
        return in_context(K, eq_step(x, _padding(rng, x)))
    return None


def random_instance(rng: random.Random, atoms: Sequence[str], size: int) -> Derivation:
    """A random rule instance (possibly mirrored) with about ``size`` units,
    placed in a random context."""
    names = [n for n in enumerate_rule_names(atoms) if not n.is_eq]
    name = rng.choice(names)
    if rng.random() < 0.3:
        name = name.toggle_mirror()
    budget = max(4, size)
    inner = rng.randint(4, budget)
    parts = [1, 1, 1, 1]
    for _ in range(inner - 4):
        parts[rng.randrange(4)] += 1
    quad = [random_formula(rng, atoms, k) for k in parts]
    p, q = instantiate(name, *quad)
    d: Derivation = Step(name, Leaf(p), Leaf(q))
    spare = budget - inner
    while spare > 0 and rng.random() < 0.6:
        k = rng.randint(1, spare)
        spare -= k
        sib = random_formula(rng, atoms, k)
        conn = rng.choice([AND, OR] + list(atoms))
        d = Horiz(conn, Leaf(sib), d) if rng.random() < 0.5 else Horiz(conn, d, Leaf(sib))
    return d


def random_derivation(rng: random.Random, atoms: Sequence[str] = DEFAULT_ATOMS[:3],
                      max_size: int = 12, steps: int = 4) -> Derivation:
    """A random checker-valid derivation over ``atoms`` whose formulae have
    at most ``max_size`` units."""
    if max_size >= 8 and rng.random() < 0.25:
        k = rng.randint(4, max_size - 4)
        conn = rng.choice([AND, OR] + list(atoms))
        return horiz(conn, random_derivation(rng, atoms, k, steps // 2 + 1),
                     random_derivation(rng, atoms, max_size - k, steps // 2 + 1))
    names = [n for n in enumerate_rule_names(atoms) if not n.is_eq]
    if max_size >= 4 and rng.random() < 0.8:
        d = random_instance(rng, atoms, rng.randint(4, max_size))
    else:
        d = Leaf(random_formula(rng, atoms, rng.randint(1, max(1, max_size - 2))))
    for _ in range(steps):
        r = random_rewrite(rng, d.conclusion, names, max_size)
        if r is not None:
            d = chain(d, r)
    return d


def excluded_middle(a: str, flipped: bool = False) -> Derivation:
    """1 -> (1 a 0) | (0 a 1) through an identity; ``flipped`` gives
    (0 a 1) | (1 a 0) via the mirrored rule."""
    if flipped:
        top = Node(a, lor(ZERO, ONE), lor(ONE, ZERO))
        name = down(OR, a, mirrored=True)
        bottom = lor(pos(a), neg(a))
    else:
        top = Node(a, lor(ONE, ZERO), lor(ZERO, ONE))
        name = down(OR, a)
        bottom = lor(neg(a), pos(a))
    return chain(eq_step(ONE, top), Step(name, Leaf(top), Leaf(bottom)))


def _grow_tail(rng, tail: Formula, atoms, extra: int) -> Derivation:
    """tail -> tail | W for a random W of ``extra`` units, via weakening."""
    if extra <= 0:
        return Leaf(tail)
    w = random_formula(rng, atoms, extra)
    return chain(eq_step(tail, lor(tail, ZERO)), Horiz(OR, Leaf(tail), weakening(w)))


def single_cut_proof(rng: random.Random, a: str, atoms: Sequence[str] = DEFAULT_ATOMS[:3],
                     extra: int = 2) -> Derivation:
    """A proof containing exactly one cut, on ``a``.

    Both excluded-middle instances are widened by random weakenings, joined
    by a conjunction, switched together with down(or,and) and the two
    complementary literals are cut against each other.
    """
    left = chain(excluded_middle(a, flipped=True),
                 Horiz(OR, Leaf(pos(a)), _grow_tail(rng, neg(a), atoms, rng.randint(0, extra))))
    right = chain(excluded_middle(a),
                  Horiz(OR, Leaf(neg(a)), _grow_tail(rng, pos(a), atoms, rng.randint(0, extra))))
    B, D = left.conclusion.right, right.conclusion.right
    joined = land(left.conclusion, right.conclusion)
    switched = lor(land(pos(a), neg(a)), lor(B, D))
    cut_out = Node(a, land(ZERO, ONE), land(ONE, ZERO))
    return chain(eq_step(ONE, land(ONE, ONE)),
                 Horiz(AND, left, right),
                 Step(down(OR, AND), Leaf(joined), Leaf(switched)),
                 Horiz(OR, Step(up(AND, a), Leaf(switched.left), Leaf(cut_out)), Leaf(lor(B, D))),
                 eq_step(lor(cut_out, lor(B, D)), lor(B, D)))


def random_cut_proof(rng: random.Random, cut_atoms: Sequence[str], atoms: Sequence[str] = None,
                     extra: int = 2, tail_steps: int = 2) -> Derivation:
    """A proof with one cut per entry of ``cut_atoms`` (repeats allowed),
    conjoined and followed by a few random rule applications."""
    atoms = list(atoms or sorted(set(cut_atoms)))
    parts = [single_cut_proof(rng, a, atoms, extra) for a in cut_atoms]
    proof = parts[0]
    for p in parts[1:]:
        proof = chain(eq_step(ONE, land(ONE, ONE)), Horiz(AND, proof, p))
    names = [n for n in enumerate_rule_names(atoms) if not n.is_eq]
    for _ in range(tail_steps):
        r = random_rewrite(rng, proof.conclusion, names, proof.conclusion.size)
        if r is not None:
            proof = chain(proof, r)
    return proof


def enumerate_formulas(atoms: Sequence[str], size: int):
    """Every formula with exactly ``size`` units over ``atoms`` (exhaustive
    grammar enumeration; grows as Catalan(size-1) * (2+k)^(size-1) * 2^size)."""
    conns = [AND, OR] + list(atoms)
    cache: dict[int, list] = {1: [ZERO, ONE]}

    def of_size(n):
        got = cache.get(n)
        if got is None:
            got = [Node(c, l, r) for k in range(1, n) for l in of_size(k)
                   for r in of_size(n - k) for c in conns]
            cache[n] = got
        return got

    return of_size(size)


def enumerate_formulas_upto(atoms: Sequence[str], max_size: int):
    for n in range(1, max_size + 1):
        yield from enumerate_formulas(atoms, n)
