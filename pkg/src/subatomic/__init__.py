"""A proof kernel and toolkit for subatomic deep inference over decision-tree
formulae: formulae with units, conjunction, disjunction and atoms used as
binary if-then-else connectives."""
from .formula import (
    AND,
    ONE,
    OR,
    ZERO,
    Context,
    Formula,
    FormulaError,
    Node,
    ParseError,
    UnboundAtomError,
    evaluate,
    is_tautology,
    normalize,
    parse_context,
    parse_formula,
    print_formula,
)
from .rules import RuleName, down, parse_rule_name, up
from .derivation import (
    CheckReport,
    Derivation,
    DerivationError,
    Horiz,
    Leaf,
    Step,
    check,
    metrics,
    parse_derivation,
    print_derivation,
)
from .projection import eliminate_cuts, project_derivation
from .sdt import NotTautology, apply_rodt, prove_tautology, reduce_rodt, to_sdt
from .statman import statman_formula, statman_proof

__version__ = "0.1.0"
