import json

import pytest

from polywitt.base_ring import compute_witt_polynomials
from polywitt.errors import RangeError
from polywitt.suites import SUITES, SuiteConfig, corrupt_s1, run_suite


def cfg(suite, **kw):
    base = dict(p=2, q=None, m=2, dim=2, seed=0, cases=3)
    base.update(kw)
    return SuiteConfig(suite, **base)


@pytest.mark.parametrize("suite", SUITES)
def test_small_grid_is_green(suite):
    res = run_suite(cfg(suite))
    assert res.checks and res.ok, res.failures


def test_corrupted_sum_polynomial_is_caught():
    bad = lambda p, n: corrupt_s1(compute_witt_polynomials(p, n))  # noqa: E731
    res = run_suite(cfg("scalars", m=4), polys=bad)
    failed = set(res.failures)
    assert failed
    assert all("n=1" not in name for name in failed)
    assert any("n=2" in name for name in failed)


def test_deterministic_reports():
    a = run_suite(cfg("mackey", cases=4, seed=7))
    b = run_suite(cfg("mackey", cases=4, seed=7))
    assert a.text() == b.text() and a.json() == b.json()
    assert json.loads(a.json())["config"]["seed"] == 7


def test_summary_counts():
    res = run_suite(cfg("tate"))
    s = res.summary()
    assert s["suite"] == "tate" and s["failures"] == [] and s["cases"] > 0
    assert res.text().splitlines()[0] == "# suite tate"


def test_unknown_suite():
    with pytest.raises(RangeError):
        run_suite(cfg("nope"))
