"""Measurement harness: size/width/height of constructions against their
asymptotic bounds, log-log fits and cut-elimination blow-up."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import constructions as cons
from . import formula as fm
from .derivation import metrics
from .formula import OR, Context, Formula, Node
from .generators import enumerate_formulas_upto, random_formula

ATOMS = ("a", "b")


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of log(y) against log(x)."""
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    mx, my = sum(lx) / len(lx), sum(ly) / len(ly)
    num = sum((x - mx) * (y - my) for x, y in zip(lx, ly))
    den = sum((x - mx) ** 2 for x in lx)
    return num / den


def has_nested_atom(f: Formula, a: str) -> bool:
    """Some ``a``-node lies below another ``a``-node."""
    todo = [(f, False)]
    while todo:
        x, under = todo.pop()
        if isinstance(x, Node):
            here = x.conn == a
            if here and under:
                return True
            todo.append((x.left, under or here))
            todo.append((x.right, under or here))
    return False


@dataclass(frozen=True)
class Sample:
    construction: str
    inputs: str
    width: int
    height: int
    size: int
    # the quantities the bound is stated in
    scale: dict


def _contexts(rng: random.Random, budget: int) -> Context:
    frames = []
    for _ in range(rng.randint(0, 2)):
        if budget <= 0:
            break
        k = rng.randint(1, budget)
        budget -= k
        frames.append((rng.choice(["&", "|"] + list(ATOMS)), rng.randint(0, 1), random_formula(rng, ATOMS, k)))
    return Context(frames)


def single_inputs(max_exhaustive: int = 4, sampled: int = 1500, max_size: int = 6, seed: int = 7):
    """All formulae over two atoms up to ``max_exhaustive`` units, plus a
    seeded sample of larger ones up to ``max_size`` units."""
    out = list(enumerate_formulas_upto(ATOMS, max_exhaustive))
    rng = random.Random(seed)
    for _ in range(sampled):
        out.append(random_formula(rng, ATOMS, rng.randint(max_exhaustive + 1, max_size)))
    return out


def _record(name, inputs, d, **scale) -> Sample:
    m = metrics(d)
    return Sample(name, inputs, m.width, m.height, m.size, scale)


def measure_single(formulas: Iterable[Formula]) -> list[Sample]:
    out = []
    for A in formulas:
        text = fm.print_formula(A)
        n = A.size
        out.append(_record("weakening", text, cons.weakening(A), n=n))
        out.append(_record("contraction", text, cons.contraction(A, OR), n=n))
        for a in ATOMS:
            out.append(_record("reorder", f"{text} {a}", cons.reorder_up(A, a), n=n,
                               nested=has_nested_atom(A, a)))
    return out


def measure_triples(count: int = 1500, max_size: int = 6, seed: int = 11) -> list[Sample]:
    """Seeded merge and DT-weakening inputs with total size at most ``max_size``."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        K = _contexts(rng, max_size - 2)
        rest = max_size - K.size
        n = rng.randint(1, rest - 1)
        l = rng.randint(1, rest - n)
        A, B = random_formula(rng, ATOMS, n), random_formula(rng, ATOMS, l)
        out.append(_record("merge", f"{K} ; {fm.print_formula(A)} ; {fm.print_formula(B)}",
                           cons.merge_in(K, A, B), m=K.size, n=n, l=l))
        C = random_formula(rng, ATOMS, rng.randint(1, max(1, rest - n)))
        a = rng.choice(ATOMS)
        side = rng.choice([cons.LEFT, cons.RIGHT])
        d = cons.dt_weakening(K, A, B, C, a, side)
        out.append(_record("dt-weakening", f"{K} ; {fm.print_formula(A)} ; {fm.print_formula(B)} ; "
                           f"{fm.print_formula(C)} ; {a} ; {side}", d,
                           m=K.size + A.size, n=B.size + C.size))
    return out


def bound_ratios(samples: Iterable[Sample]) -> dict:
    """Worst observed ratio of each metric to its stated bound shape.

    ``m+1`` style offsets keep the bound positive when a context is empty.
    """
    worst: dict = {}

    def bump(key, value):
        worst[key] = max(worst.get(key, 0.0), value)

    for s in samples:
        sc = s.scale
        if s.construction == "weakening":
            bump("weakening.width/n", s.width / sc["n"])
            bump("weakening.height", s.height)
        elif s.construction == "contraction":
            bump("contraction.size/n^2", s.size / sc["n"] ** 2)
        elif s.construction == "merge":
            bump("merge.width/(m+n+l)", s.width / (sc["m"] + sc["n"] + sc["l"]))
            bump("merge.height/((m+1)(l+1))", s.height / ((sc["m"] + 1) * (sc["l"] + 1)))
        elif s.construction == "dt-weakening":
            bump("dt-weakening.width/(m+n)", s.width / (sc["m"] + sc["n"]))
            bump("dt-weakening.height/(m+n)", s.height / (sc["m"] + sc["n"]))
        elif s.construction == "reorder":
            bump("reorder.size/n^3", s.size / sc["n"] ** 3)
            if not sc["nested"]:
                bump("reorder.flat.size/n^2", s.size / sc["n"] ** 2)
    return worst


def regression_rows(samples: Iterable[Sample]) -> list[list]:
    return [[s.construction, s.inputs, s.width, s.height, s.size] for s in samples]
