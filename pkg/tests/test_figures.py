import pathlib
import time

import pytest

from subatomic.derivation import check, parse_derivation, print_derivation, read_derivation_file
from subatomic.figures import EXPECTED_CUTS, FIGURES

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.mark.parametrize("name", sorted(FIGURES))
def test_figure_matches_fixture(name):
    d = FIGURES[name]()
    assert read_derivation_file(str(FIXTURES / f"figure_{name}.deriv")) == d
    assert parse_derivation(print_derivation(d)) == d


@pytest.mark.parametrize("name", ["smallproof", "implication", "cutelim"])
def test_figure_checks_with_expected_cuts(name):
    report = check(FIGURES[name]())
    assert report.valid and not report.failures
    assert report.cut_count == EXPECTED_CUTS[name]


def test_apply_figure_is_valid():
    # the apply run is valid; its cut count is discussed in the acceptance suite
    report = check(FIGURES["apply"]())
    assert report.valid and not report.failures


def test_figures_are_fast():
    start = time.perf_counter()
    for build in FIGURES.values():
        check(build())
    assert time.perf_counter() - start < 1.0
