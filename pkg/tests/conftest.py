import random

import pytest
from hypothesis import settings, strategies as st

from subatomic.formula import AND, OR, Node, ONE, ZERO

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

ATOMS = ("a", "b", "c")


def formulas(atoms=ATOMS, max_leaves=8):
    """Hypothesis strategy for formulae over ``atoms``."""
    conns = st.sampled_from([AND, OR] + list(atoms))
    return st.recursive(
        st.sampled_from([ZERO, ONE]),
        lambda sub: st.builds(Node, conns, sub, sub),
        max_leaves=max_leaves,
    )


@pytest.fixture
def rng():
    return random.Random(12345)


# -- acceptance summary ------------------------------------------------------

ACCEPTANCE_RESULTS = {}


def record_acceptance(number, passed, detail):
    line = f"ACCEPTANCE criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}"
    ACCEPTANCE_RESULTS[number] = line
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_RESULTS):
            terminalreporter.write_line(ACCEPTANCE_RESULTS[number])
