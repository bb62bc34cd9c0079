import pytest

from celldual.errors import InvariantViolation
from celldual.invariants import CHECKS, run_suite
from celldual.linalg import RATIONALS
from celldual.repalg import random_module


@pytest.mark.parametrize("name", sorted(CHECKS))
@pytest.mark.parametrize("seed", [0, 7])
def test_check_passes_on_circle(triangle, name, seed):
    CHECKS[name](random_module(triangle, RATIONALS, seed))


@pytest.mark.parametrize("name", sorted(CHECKS))
def test_check_passes_on_disc(simplex2, f3, name):
    CHECKS[name](random_module(simplex2, f3, 11))


@pytest.mark.slow
@pytest.mark.parametrize(
    "name", ["double_duality", "serre_duality", "open_set", "cellular", "four_term"]
)
def test_fifty_seeds_per_complex(any_complex, any_field, name):
    for seed in range(50):
        CHECKS[name](random_module(any_complex, any_field, seed))


@pytest.mark.slow
def test_df_dg_twenty_seeds_per_complex(any_complex, any_field):
    for seed in range(20):
        CHECKS["df_dg"](random_module(any_complex, any_field, seed))


def test_suite_passes(small_complex):
    report = run_suite(small_complex, RATIONALS, seed=1, trials=2)
    assert report.ok
    assert report.runs == 2 * len(CHECKS)


def test_failures_are_collected(triangle):
    def boom(_module):
        raise InvariantViolation("boom")

    report = run_suite(triangle, RATIONALS, seed=3, trials=2, checks={"boom": boom})
    assert not report.ok
    assert report.runs == 2
    assert [(f.check, f.seed, f.message) for f in report.failures] == [
        ("boom", 3, "boom"),
        ("boom", 4, "boom"),
    ]


def test_report_json(triangle, f2):
    data = run_suite(triangle, f2, seed=0, trials=1).to_json()
    assert data["field"] == "f2"
    assert data["ok"] is True
    assert data["failures"] == []
    assert data["checks"] == sorted(CHECKS)
