import pytest

from ordlab.suites import SUITES, run_suite


def test_registry():
    assert set(SUITES) == {"lemma21", "lemma3x", "elin", "jhg", "uyi", "kat", "ebadi", "po",
                           "disjoint-null", "transfer"}


@pytest.mark.parametrize("name", ["elin", "jhg", "kat", "disjoint-null", "po"])
def test_fast_suites_pass(name):
    rep = run_suite(name, seed=0, budget=20)
    assert rep.checks and rep.passed, rep.failures()


def test_other_seed():
    assert run_suite("disjoint-null", seed=5, budget=10).passed
