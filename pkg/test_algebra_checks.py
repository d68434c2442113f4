# test_algebra_checks.py
import pytest

from algebra_checks import run_algebra_checks
from ck_hopf import FormalSum, ck_coproduct
from forest_algebra import Forest, trees_up_to


def crossed_out(f: Forest) -> FormalSum:
    """CK coproduct with the sign of every proper cut on degree-2 trees flipped."""
    delta = ck_coproduct(f)
    if f.degree != 2 or len(f.trees) != 1:
        return delta
    return FormalSum({
        (left, right): (-c if not left.is_empty and not right.is_empty else c)
        for (left, right), c in delta.items()
    })


@pytest.mark.parametrize("N, d", [(1, 2), (2, 2), (3, 1)])
def test_small_truncations_pass(N, d):
    report = run_algebra_checks(N, d)
    assert report.passed, report.first_failure
    assert report.first_failure is None
    assert set(report.frame()["passed"]) == {True}


def test_phi_suites_run_up_to_level_three():
    names = [r.name for r in run_algebra_checks(2, 1).results]
    assert "Φ is a bialgebra morphism" in names
    assert names[0] == "canonical key is order independent"


def test_broken_coproduct_is_caught_on_first_degree_two_tree():
    report = run_algebra_checks(2, 2, coproduct=crossed_out, stop_at_first=True)
    failure = report.first_failure
    assert not report.passed
    assert failure.name == "CK coproduct matches admissible cuts"
    trees = trees_up_to(2, 2)
    first = next(i for i, t in enumerate(trees) if t.degree == 2)
    assert failure.counterexample == repr(trees[first])
    assert failure.n_cases == first + 1


def test_report_json():
    data = run_algebra_checks(1, 1).to_json()
    assert data["passed"] is True
    assert data["N"] == 1 and data["d"] == 1
    assert all(r["counterexample"] is None for r in data["results"])


@pytest.mark.parametrize("N, d", [(0, 2), (5, 1), (2, 4)])
def test_unsupported_truncation(N, d):
    with pytest.raises(ValueError):
        run_algebra_checks(N, d)
