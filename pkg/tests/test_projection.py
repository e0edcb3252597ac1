import random

import pytest
from hypothesis import given, strategies as st

from subatomic.derivation import DerivationError, Leaf, atoms, check, same_derivation, size
from subatomic.figures import cut_free_implication, implication_proof, small_proof
from subatomic.formula import ONE, parse_formula as F
from subatomic.generators import random_cut_proof, random_derivation
from subatomic.projection import (
    LEFT, RIGHT, eliminate_cuts, project_derivation, project_derivation_iterative, project_formula,
)


def test_projection_of_atom_free_derivation_is_isomorphic():
    d = small_proof()
    p = project_derivation(d, "z", LEFT)
    assert same_derivation(p, d)


def test_projecting_a_cut_removes_it():
    d = implication_proof()
    for side in (LEFT, RIGHT):
        p = project_derivation(d, "a", side)
        report = check(p)
        assert report.valid and report.cut_count == 0
        assert "a" not in atoms(p)


def test_left_projection_of_implication_endpoints():
    d = implication_proof()
    p = project_derivation(d, "a", LEFT)
    assert p.premiss == ONE
    assert p.conclusion == project_formula(d.conclusion, "a", LEFT) == F("(1 | (1 b 0))")


def test_bad_side_rejected():
    with pytest.raises(ValueError):
        project_derivation(small_proof(), "a", "middle")


@given(st.integers(0, 100_000), st.sampled_from(["a", "b"]), st.sampled_from([LEFT, RIGHT]))
def test_projection_properties(seed, a, side):
    d = random_derivation(random.Random(seed), ("a", "b", "c"), 12, 5)
    p = project_derivation(d, a, side)
    q = project_derivation_iterative(d, a, side)
    assert same_derivation(p, q)
    assert check(p).valid
    assert a not in atoms(p)
    assert p.premiss == project_formula(d.premiss, a, side)
    assert p.conclusion == project_formula(d.conclusion, a, side)


def test_eliminate_cuts_on_implication():
    d = implication_proof()
    trace = []
    e = eliminate_cuts(d, trace=trace)
    report = check(e)
    assert report.valid and report.cut_count == 0
    assert e.conclusion == d.conclusion == cut_free_implication().conclusion
    assert trace == ["a"]


def test_eliminate_cuts_leaves_cut_free_proofs_alone():
    d = small_proof()
    assert eliminate_cuts(d) is d


def test_eliminate_cuts_requires_a_proof():
    with pytest.raises(DerivationError):
        eliminate_cuts(Leaf(F("(0 a 1)")))


@given(st.integers(0, 100_000), st.lists(st.sampled_from("abc"), min_size=1, max_size=3))
def test_eliminate_cuts_properties(seed, cut_atoms):
    p = random_cut_proof(random.Random(seed), cut_atoms, ("a", "b", "c"))
    assert check(p).cut_count >= 1
    order = sorted(set(cut_atoms), reverse=True)
    e = eliminate_cuts(p, atom_order=order)
    report = check(e)
    assert report.valid and report.cut_count == 0
    assert e.premiss == ONE and e.conclusion == p.conclusion
