import random

import pytest

from garsia.suites import SUITES, ETA_POOL, eta_from_pool, random_measure, random_poly, run_suite


@pytest.mark.parametrize("name", [s for s in SUITES if s != "separation"])
def test_suite_runs_clean(name):
    out = run_suite(name, seed=2, count=12)
    assert out["violations"] == []
    assert out["checked"] == 12
    assert out["passed"] + out["skipped"] == 12
    assert out["status"] == "pass"


def test_eta_pool_roots_in_unit_interval():
    for i in range(len(ETA_POOL)):
        eta = eta_from_pool(i)
        assert eta.real and 0 < float(eta.approx(30)) < 1
        assert eta.min_poly.degree == len(ETA_POOL[i][0]) - 1


def test_generators():
    rng = random.Random(0)
    for _ in range(50):
        P = random_poly(rng, 2, 4)
        assert not P.is_zero and P.in_P(2, 4)
        nu = random_measure(rng)
        assert sum(nu.probabilities()) == 1


def test_deterministic():
    assert run_suite("kv", 9, 20) == run_suite("kv", 9, 20)


def test_unknown():
    with pytest.raises(KeyError):
        run_suite("nope")
