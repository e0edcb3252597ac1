import itertools
import random

import pytest
from hypothesis import given, strategies as st

from subatomic.derivation import check, rule_names
from subatomic.formula import (
    AND, ONE, OR, ZERO, Language, Node, classify, equivalent, evaluate, assignments, is_tautology,
    land, lor, parse_formula as F, truth_table,
)
from subatomic.sdt import (
    NotRODTError, NotTautology, OrderError, apply_rodt, default_order, is_ordered_sdt, is_rodt,
    parse_order, prove_tautology, reduce_rodt, rodt, to_sdt,
)
from subatomic.statman import statman_formula

from conftest import formulas


def tree_of(table, names):
    """Oracle: the complete ordered decision tree for a truth table."""
    if not names:
        return ONE if table[0] else ZERO
    half = len(table) // 2
    return Node(names[0], tree_of(table[:half], names[1:]), tree_of(table[half:], names[1:]))


def test_to_sdt_example():
    A = F("((0 a 1) | (0 b 1))")
    B, up, down = to_sdt(A, ["a", "b"])
    assert B == F("((0 b 1) a 1)")
    report = check(up)
    assert report.valid and report.cut_count == 0
    assert up.premiss == B and up.conclusion == A
    assert check(down).valid and down.premiss == A and down.conclusion == B


def test_to_sdt_without_atoms():
    B, up, _ = to_sdt(F("(0 | 1)"))
    assert B == ONE and check(up).valid


def test_to_sdt_order_must_cover():
    with pytest.raises(OrderError):
        to_sdt(F("((0 a 1) | (0 b 1))"), ["a"])


@given(formulas(("a", "b", "c"), 8), st.permutations(["a", "b", "c"]))
def test_to_sdt_properties(A, order):
    B, up, down = to_sdt(A, order)
    assert classify(B) in (Language.SDT, Language.BOTH)
    assert is_ordered_sdt(B, order)
    assert equivalent(A, B)
    report = check(up)
    assert report.valid and report.cut_count == 0
    assert up.premiss == B and up.conclusion == A
    assert check(down).valid and down.premiss == A and down.conclusion == B


def test_reduce_examples():
    assert reduce_rodt(F("(1 a 1)")) == ONE
    assert reduce_rodt(F("((0 b 1) a (0 b 1))")) == F("(0 b 1)")
    with pytest.raises(NotRODTError):
        reduce_rodt(F("((0 a 1) a 1)"))
    with pytest.raises(NotRODTError):
        reduce_rodt(F("((0 a 1) & 1)"))


def test_rodt_canonical_for_two_atoms():
    names = ["a", "b"]
    seen = {}
    for A in (tree_of(t, names) for t in itertools.product((0, 1), repeat=4)):
        R = reduce_rodt(A, names)
        assert is_rodt(R, names)
        seen.setdefault(truth_table(R, names), R)
        assert seen[truth_table(R, names)] == R
    assert len(seen) == 16


def test_apply_figure_example():
    A = F("(((0 a 1) b (1 a 0)) c (0 a 1))")
    B = F("((0 a 1) c (1 a 0))")
    C, cert = apply_rodt(A, B, AND, ["c", "b", "a"])
    assert C == F("(((0 a 1) b 0) c 0)")
    report = check(cert)
    assert report.valid
    assert cert.premiss == land(A, B) and cert.conclusion == C


def test_apply_unit_identity():
    B = F("((0 b 1) a 1)")
    C, cert = apply_rodt(ONE, B, AND, ["a", "b"])
    assert C == B
    assert all(n.is_eq for n in rule_names(cert))


def test_apply_errors():
    with pytest.raises(NotRODTError):
        apply_rodt(F("((0 a 1) a 1)"), ONE, AND, ["a"])
    with pytest.raises(OrderError):
        apply_rodt(F("(0 a 1)"), F("(0 b 1)"), AND, ["a", "b"], ["b", "a"])
    with pytest.raises(NotRODTError):
        apply_rodt(F("(0 a (0 b 1))"), ONE, OR, ["b", "a"])


@pytest.mark.parametrize("conn", [AND, OR])
def test_apply_exhaustive_two_atoms(conn):
    names = ["a", "b"]
    trees = [reduce_rodt(tree_of(t, names), names) for t in itertools.product((0, 1), repeat=4)]
    op = (lambda x, y: x & y) if conn == AND else (lambda x, y: x | y)
    for A, B in itertools.product(trees, repeat=2):
        C, cert = apply_rodt(A, B, conn, names)
        assert is_rodt(C, names)
        expected = tuple(op(x, y) for x, y in zip(truth_table(A, names), truth_table(B, names)))
        assert truth_table(C, names) == expected
        assert check(cert).valid
        assert cert.premiss == Node(conn, A, B) and cert.conclusion == C


def test_prove_examples():
    p = prove_tautology(statman_formula(1).formula)
    report = check(p)
    assert report.valid and report.cut_count == 0 and p.premiss == ONE
    r = prove_tautology(F("(0 a 1)"))
    assert isinstance(r, NotTautology) and r.witness == {"a": 0}
    assert str(r) == "NotTautology a=0"
    em = prove_tautology(F("((0 a 1) | (1 a 0))"))
    assert check(em).valid and check(em).cut_count == 0


@given(formulas(("a", "b", "c", "d"), 9))
def test_prover_decides(A):
    r = prove_tautology(A)
    assert isinstance(r, NotTautology) != is_tautology(A)
    if isinstance(r, NotTautology):
        assert evaluate(A, r.witness) == 0
    else:
        report = check(r)
        assert report.valid and report.cut_count == 0
        assert r.premiss == ONE and r.conclusion == A


def test_parse_order():
    assert parse_order("c,b,a") == ["c", "b", "a"]
    with pytest.raises(OrderError):
        parse_order("a,a")
    assert default_order(F("((0 b 1) | (0 a 1))")) == ["a", "b"]
