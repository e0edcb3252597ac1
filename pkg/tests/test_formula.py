import pytest
from hypothesis import given

from subatomic.formula import (
    AND, ONE, OR, ZERO, Language, Node, ParseError, UnboundAtomError, FormulaError,
    assignments, atoms, check_atom_name, classify, dual, embed_prop, equal_mod_units,
    equivalent, evaluate, falsifying_assignment, is_tautology, mirror, negate, normalize,
    parse_context, parse_formula as F, print_formula, stronger, truth_table, weaker,
)
from subatomic.statman import statman_formula

from conftest import formulas


def test_parse_simple_atom_node():
    f = F("(1 a 0)")
    assert f == Node("a", ONE, ZERO)


def test_parse_or_of_atoms():
    f = F("((0 a 1) | (0 b 1))")
    assert f.conn == OR and f.left.conn == "a" and f.right.conn == "b"


def test_parse_error_offset():
    with pytest.raises(ParseError) as err:
        F("(1 a )")
    assert err.value.offset == 5


@pytest.mark.parametrize("text", ["", "(1 a 0", "(1 a 0))", "(1 & 0 | 1)", "(1 A 0)", "2"])
def test_parse_rejects_malformed(text):
    with pytest.raises(ParseError):
        F(text)


@pytest.mark.parametrize("name", ["or", "and"])
def test_reserved_atom_names(name):
    with pytest.raises(FormulaError):
        check_atom_name(name)


def test_connective_tables():
    assert dual(OR) == AND and dual(AND) == OR and dual("a") == "a"
    assert weaker(OR) == OR and weaker(AND) == OR and stronger(OR) == AND and stronger(AND) == AND
    assert weaker("a") == stronger("a") == "a"


@pytest.mark.parametrize("src,expected", [
    ("0", "1"),
    ("(0 a 1)", "(1 a 0)"),
    ("((0 a 1) | (0 b 1))", "((1 a 0) & (1 b 0))"),
])
def test_negate_examples(src, expected):
    assert negate(F(src)) == F(expected)


@pytest.mark.parametrize("src,expected", [
    ("(0 a 0)", "0"),
    ("(1 | (0 a 1))", "(1 | (0 a 1))"),
    ("(1 | (((0 a 1) & 1) | (0 b 0)))", "(1 | (0 a 1))"),
    ("(0 | (1 a 1))", "1"),
    ("(1 & (0 b 1))", "(0 b 1)"),
])
def test_normalize_examples(src, expected):
    assert normalize(F(src)) == F(expected)


def test_equal_mod_units_examples():
    assert equal_mod_units(F("((1 a 0) | 0)"), F("(1 a 0)"))
    assert not equal_mod_units(F("(1 | (0 a 1))"), ONE)
    f = F("((0 a 1) & (1 b 0))")
    assert equal_mod_units(f, f)


def test_evaluate_examples():
    assert evaluate(F("(1 a 0)"), {"a": 0}) == 1
    assert evaluate(F("((1 b 0) a (1 b 1))"), {"a": 1, "b": 0}) == 1
    s1 = statman_formula(1).formula
    assert all(evaluate(s1, x) == 1 for x in assignments(["a1", "b1"]))


def test_evaluate_unbound_atom_is_error():
    with pytest.raises(UnboundAtomError):
        evaluate(F("(0 a 1)"), {"b": 1})


def test_tautology_examples():
    assert is_tautology(statman_formula(1).formula)
    assert not is_tautology(F("(0 a 1)"))
    assert is_tautology(ONE)
    assert falsifying_assignment(F("(0 a 1)")) == {"a": 0}


def test_atom_limit(monkeypatch):
    monkeypatch.setenv("DT_MAX_ATOMS", "1")
    with pytest.raises(FormulaError):
        is_tautology(F("((0 a 1) | (0 b 1))"))


@pytest.mark.parametrize("src,lang", [
    ("((1 a 0) | (1 b 0))", Language.PROP),
    ("((1 b 0) a (0 | 1))", Language.SDT),
    ("((0 a 1) & ((0 b 1) a 1))", Language.NEITHER),
    ("(1 & 1)", Language.BOTH),
])
def test_classify_examples(src, lang):
    assert classify(F(src)) == lang


def test_embed_prop_examples():
    assert embed_prop(("and", ("or", 1, "a"), ("not", "b"))) == F("((1 | (0 a 1)) & (1 b 0))")
    assert embed_prop("a") == F("(0 a 1)")
    assert embed_prop(1) == ONE


def test_context_plug():
    K = parse_context("((0 a {}) & 1)")
    assert K.plug(F("(1 b 0)")) == F("((0 a (1 b 0)) & 1)")
    assert str(K) == "((0 a {}) & 1)"


@given(formulas())
def test_print_parse_round_trip(f):
    assert F(print_formula(f)) == f


@given(formulas())
def test_normalize_idempotent_and_sound(f):
    g = normalize(f)
    assert normalize(g) == g
    assert equivalent(f, g)
    assert g.size <= f.size


@given(formulas())
def test_negation_and_mirror_are_involutions(f):
    assert negate(negate(f)) == f
    assert mirror(mirror(f)) == f


@given(formulas())
def test_negation_flips_truth_table(f):
    names = sorted(atoms(f))
    assert truth_table(negate(f), names) == tuple(1 - v for v in truth_table(f, names))


@given(formulas())
def test_truth_table_matches_evaluate(f):
    names = sorted(atoms(f))
    assert truth_table(f, names) == tuple(evaluate(f, x) for x in assignments(names))


def test_deep_formula_is_handled_iteratively():
    f = ONE
    for _ in range(100_000):
        f = Node(OR, ZERO, f)
    assert normalize(f) == ONE
    assert F(print_formula(f)) == f
    assert evaluate(f, {}) == 1
