import pytest

from subatomic.constructions import LEFT, RIGHT, project
from subatomic.derivation import check
from subatomic.formula import FormulaError, ONE, equal_mod_units, is_tautology, parse_formula as F
from subatomic.statman import (
    STATS_HEADER, big_a, inductive_step, stats_csv_row, statman_formula, statman_proof, statman_stats,
)


def test_s1_formula():
    s1 = statman_formula(1).formula
    assert s1 == F("(((1 a1 0) & (1 b1 0)) | ((0 a1 1) | (0 b1 1)))")
    assert s1.size == 8


def test_s2_formula():
    expected = F("(((1 a2 0) & (1 b2 0)) | (((((0 a2 1) | (0 b2 1)) & (1 a1 0)) & "
                 "(((0 a2 1) | (0 b2 1)) & (1 b1 0))) | ((0 a1 1) | (0 b1 1))))")
    assert statman_formula(2).formula == expected
    assert statman_formula(2).size == 20


def test_sizes_are_quadratic():
    sizes = [statman_formula(n).size for n in range(1, 9)]
    assert sizes[-1] == 260
    assert all(s == 4 * n * n + 4 for n, s in zip(range(1, 9), sizes))


def test_bad_arguments():
    with pytest.raises(FormulaError):
        statman_formula(0)
    with pytest.raises(FormulaError):
        big_a(2, 2)


@pytest.mark.parametrize("n", range(1, 11))
def test_statman_is_tautology(n):
    assert is_tautology(statman_formula(n).formula)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_statman_proof_small(n):
    p = statman_proof(n)
    report = check(p)
    assert report.valid and report.cut_count == 0
    assert p.premiss == ONE and p.conclusion == statman_formula(n).formula


def test_worked_example_two_from_one():
    """S_2 from S_1 by case analysis: when a2 is true, or a2 is false and b2
    is true, S_2 collapses to S_1 under the unit equations; when both are
    false its first disjunct is 1 & 1."""
    s1, s2 = statman_formula(1).formula, statman_formula(2).formula
    a_false, a_true = project(s2, "a2", LEFT), project(s2, "a2", RIGHT)
    assert equal_mod_units(project(a_true, "b2", LEFT), s1)
    assert equal_mod_units(project(a_false, "b2", RIGHT), s1)
    assert project(a_false, "b2", LEFT).left == F("(1 & 1)")
    step = inductive_step(2)
    assert check(step).valid and check(step).cut_count == 0
    assert step.premiss == s1 and step.conclusion == s2


def test_stats_row():
    row = statman_stats(3)
    assert row["cuts"] == 0 and row["m"] == 40
    assert stats_csv_row(row).startswith("3,40,")
    assert STATS_HEADER == "n,m,proof_size,width,height,cuts"
