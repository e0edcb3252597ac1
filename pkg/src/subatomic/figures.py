"""Hand encodings of four worked derivations used as reference fixtures.

``small_proof``       a cut-free proof of ((1 a 0) | ((1 a 1) b (0 a 1)))
``implication_proof`` a proof with one cut of ((1 a 0) a (1 b 0)) | (1 b (0 a 1))
``cut_free_implication`` the same conclusion after eliminating that cut
``apply_run``         the certificate of one run of the ``apply`` algorithm
"""
from __future__ import annotations

from .constructions import dt_weakening, weakening
from .derivation import Derivation, Horiz, Leaf, Step, chain, eq_step
from .formula import AND, OR, Context, Node, parse_formula as F
from .rules import down, up


def _rule(name, premiss: str, conclusion: str) -> Derivation:
    return Step(name, Leaf(F(premiss)), Leaf(F(conclusion)))


def _eq(premiss: str, conclusion: str) -> Derivation:
    return eq_step(F(premiss), F(conclusion))


def _right_branch() -> Derivation:
    """(1 | 0) a (0 | (1 b 1))  ->  (1 a 0) | ((1 a 1) b (0 a 1))."""
    top = Horiz("a", Horiz(OR, Leaf(F("1")), weakening(F("(1 b 0)"))), Leaf(F("(0 | (1 b 1))")))
    return chain(top,
                 _rule(down(OR, "a"), "((1 | (1 b 0)) a (0 | (1 b 1)))",
                       "((1 a 0) | ((1 b 0) a (1 b 1)))"),
                 Horiz(OR, Leaf(F("(1 a 0)")),
                       _rule(down("b", "a"), "((1 b 0) a (1 b 1))", "((1 a 1) b (0 a 1))")))


def small_proof() -> Derivation:
    """A cut-free proof using weakening, one medial and one switch-like step."""
    return chain(_eq("1", "((1 | 0) a (0 | (1 b 1)))"), _right_branch())


def implication_proof() -> Derivation:
    """A proof of ((1 a 0) a (1 b 0)) | (1 b (0 a 1)) with exactly one cut."""
    phi = dt_weakening(Context(), F("1"), F("0"), F("(1 | 0)"), "a")
    left = chain(phi,
                 Horiz("a", _eq("(1 a 0)", "(0 | (1 a 0))"),
                       Horiz(OR, Leaf(F("1")), weakening(F("(1 b 0)")))),
                 _rule(down(OR, "a"), "((0 | (1 a 0)) a (1 | (1 b 0)))",
                       "((0 a 1) | ((1 a 0) a (1 b 0)))"))
    right = _right_branch()
    conj = Horiz(AND, left, right)
    joined = conj.conclusion
    (lit_a, B), (lit_b, D) = (joined.left.left, joined.left.right), (joined.right.left, joined.right.right)
    switched = Node(OR, Node(AND, lit_a, lit_b), Node(OR, B, D))
    cut_out = F("((0 & 1) a (1 & 0))")
    return chain(eq_step(F("1"), conj.premiss),
                 conj,
                 Step(down(OR, AND), Leaf(joined), Leaf(switched)),
                 Horiz(OR, Step(up(AND, "a"), Leaf(switched.left), Leaf(cut_out)), Leaf(switched.right)),
                 eq_step(Node(OR, cut_out, switched.right),
                         F("(((1 a 0) a (1 b 0)) | (1 b (0 a 1)))")))


def cut_free_implication() -> Derivation:
    """The cut-free proof obtained from :func:`implication_proof` by
    projecting on ``a`` and reordering."""
    blue = chain(Horiz(AND, Leaf(F("(0 | 1)")), Horiz(OR, Leaf(F("1")), weakening(F("(1 b 0)")))),
                 _rule(down(OR, AND), "((0 | 1) & (1 | (1 b 0)))", "((0 & 1) | (1 | (1 b 0)))"),
                 _eq("((0 & 1) | (1 | (1 b 0)))", "(1 | (1 b 0))"))
    red = chain(Horiz(AND, Horiz(OR, Leaf(F("1")), weakening(F("(1 b 0)"))), Leaf(F("(0 | (1 b 1))"))),
                _rule(down(OR, AND), "((1 | (1 b 0)) & (0 | (1 b 1)))",
                      "((1 & 0) | ((1 b 0) | (1 b 1)))"),
                _eq("((1 & 0) | ((1 b 0) | (1 b 1)))", "((1 b 0) | (1 b 1))"))
    split = Horiz("a", blue, red)
    psi = dt_weakening(Context(), F("1"), F("0"), F("(1 b 0)"), "a")
    return chain(eq_step(F("1"), split.premiss),
                 split,
                 _rule(down(OR, "a"), "((1 | (1 b 0)) a ((1 b 0) | (1 b 1)))",
                       "((1 a (1 b 0)) | ((1 b 0) a (1 b 1)))"),
                 Horiz(OR, psi,
                       chain(_rule(down("b", "a"), "((1 b 0) a (1 b 1))", "((1 a 1) b (0 a 1))"),
                             _eq("((1 a 1) b (0 a 1))", "(1 b (0 a 1))"))))


def apply_run() -> Derivation:
    """(((0 a 1) b (1 a 0)) c (0 a 1)) & ((0 a 1) c (1 a 0)) -> (((0 a 1) b 0) c 0),
    splitting on c, then b, then a, as the ``apply`` algorithm does."""
    pad = chain(Horiz("a", _eq("0", "(0 b 0)"), _eq("1", "(1 b 1)")),
                _rule(up("a", "b"), "((0 b 0) a (1 b 1))", "((0 a 1) b (0 a 1))"))
    left = chain(Horiz(AND, Leaf(F("((0 a 1) b (1 a 0))")), pad),
                 _rule(up(AND, "b"), "(((0 a 1) b (1 a 0)) & ((0 a 1) b (0 a 1)))",
                       "(((0 a 1) & (0 a 1)) b ((1 a 0) & (0 a 1)))"),
                 Horiz("b",
                       chain(_rule(up(AND, "a"), "((0 a 1) & (0 a 1))", "((0 & 0) a (1 & 1))"),
                             _eq("((0 & 0) a (1 & 1))", "(0 a 1)")),
                       chain(_rule(up(AND, "a"), "((1 a 0) & (0 a 1))", "((1 & 0) a (0 & 1))"),
                             _eq("((1 & 0) a (0 & 1))", "0"))))
    right = chain(_rule(up(AND, "a"), "((0 a 1) & (1 a 0))", "((0 & 1) a (1 & 0))"),
                  _eq("((0 & 1) a (1 & 0))", "0"))
    return chain(_rule(up(AND, "c"), "((((0 a 1) b (1 a 0)) c (0 a 1)) & ((0 a 1) c (1 a 0)))",
                       "((((0 a 1) b (1 a 0)) & (0 a 1)) c ((0 a 1) & (1 a 0)))"),
                 Horiz("c", left, right))


FIGURES = {
    "smallproof": small_proof,
    "implication": implication_proof,
    "cutelim": cut_free_implication,
    "apply": apply_run,
}

# cut counts displayed with the worked examples
EXPECTED_CUTS = {"smallproof": 0, "implication": 1, "cutelim": 0, "apply": 0}
