import pytest

from exunits.verify import (SUITES, CheckResult, build_checks, prime_powers, run_check, run_checks,
                            run_suite)


def test_prime_powers():
    assert prime_powers(2, 9) == [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]
    assert prime_powers(3, 9, odd_only=True) == [(3, 1), (5, 1), (7, 1), (3, 2)]


def test_build_checks_respects_limits():
    assert {s for s, *_ in build_checks("all")} == set(SUITES)
    matrix = build_checks("matrix", max_q=7)
    assert all("GF(3^2)" not in name for _, name, *_ in matrix)
    even = build_checks("even", max_order=256)
    assert all("GR(2^2,2)" not in name for _, name, *_ in even) and even
    with pytest.raises(ValueError):
        build_checks("nope")


@pytest.mark.parametrize("suite", SUITES)
def test_suites_pass(suite):
    results = run_suite(suite, jobs=1)
    assert results
    for r in results:
        assert r.passed, r.line()


def test_results_independent_of_jobs():
    specs = build_checks("matrix", max_q=5) + build_checks("iso")[:1] + build_checks("fields", max_q=8)
    one = run_checks(specs, jobs=1)
    many = run_checks(specs, jobs=3)
    strip = lambda rs: [(r.suite, r.name, r.passed, r.formula, r.oracle, r.detail) for r in rs]
    assert strip(one) == strip(many)


def test_crashing_check_fails():
    res = run_check(("odd", "bad", "check_odd", dict(p=3, n=1, r=1, tag="Missing", conjugated=False)))
    assert isinstance(res, CheckResult) and not res.passed and "KeyError" in res.detail
