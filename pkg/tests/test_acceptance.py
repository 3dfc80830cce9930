"""Acceptance criteria, one test each, at their stated tolerances and time limits.

A PASS/FAIL line per criterion is printed in the pytest terminal summary;
``python tests/test_acceptance.py`` prints the same lines standalone.
"""

import json
import math
import time

import pytest

from crisisgreeks.cli import main
from crisisgreeks.model import MarketState
from crisisgreeks.oracles import McConfig, mc_price
from crisisgreeks.pricing import call_price, put_price
from crisisgreeks.validation import (
    bs_grid, check_bs_reduction, check_first_order_fd, check_martingale, check_monte_carlo,
    check_second_order_fd, check_structural, mc_points, validation_grid,
)

RESULTS: dict[str, str] = {}


def record(name: str, ok: bool, detail: str) -> None:
    RESULTS[name] = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def test_ac1_black_scholes_reduction():
    grid = bs_grid()
    assert len(grid) == 75
    res, secs = timed(check_bs_reduction, grid)
    # prices: abs 1e-10; Greeks: rel 1e-9, both enforced inside the check
    assert res.tolerance == 1e-9
    ok = res.passed and secs < 1.0
    record("AC1 Black-Scholes reduction", ok, f"worst={res.worst:.2e} (tol 1e-10 abs price / 1e-9 rel Greeks), {secs:.2f}s < 1s")
    assert res.passed, res.failures
    assert secs < 1.0


def test_ac2_first_order_fd():
    grid = validation_grid()
    assert len(grid) == 72 and {p.alpha for p, _, _ in grid} == {-2.0, 0.0, 2.0}
    res, secs = timed(check_first_order_fd, grid)
    assert res.tolerance == 1e-6
    ok = res.passed and secs < 5.0
    record("AC2 first-order Greeks vs FD", ok, f"worst rel={res.worst:.2e} (tol 1e-6), n={res.count}, {secs:.2f}s < 5s")
    assert res.passed, res.failures
    assert secs < 5.0


def test_ac3_second_order_fd():
    res, secs = timed(check_second_order_fd, validation_grid())
    assert res.tolerance == 1e-5
    ok = res.passed and secs < 10.0
    record("AC3 second-order Greeks vs FD (+Schwarz)", ok, f"worst rel={res.worst:.2e} (tol 1e-5, Schwarz 1e-6), n={res.count}, {secs:.2f}s < 10s")
    assert res.passed, res.failures
    assert secs < 10.0


def test_ac4_monte_carlo():
    t0 = time.perf_counter()
    res = check_monte_carlo(paths=1_000_000, seed=42)
    # independent restatement of the criterion on top of the shared check
    cfg = McConfig(paths=1_000_000, seed=42, antithetic=True)
    for p in mc_points():
        s0 = MarketState.initial(p)
        for kind, fn in (("call", call_price), ("put", put_price)):
            est = mc_price(p, 100.0, kind, cfg)
            assert abs(est.mean - fn(p, s0, 100.0)) <= 3 * est.std_error, (p.alpha, kind)
            assert est == mc_price(p, 100.0, kind, cfg)
    secs = time.perf_counter() - t0
    ok = res.passed and secs < 30.0
    record("AC4 Monte-Carlo consistency", ok, f"worst |diff|/se={res.worst:.2f} (tol 3), deterministic, {secs:.2f}s < 30s")
    assert res.passed, res.failures
    assert secs < 30.0


def test_ac5_structural_identities():
    res, secs = timed(check_structural, validation_grid())
    record("AC5 structural identities", res.passed, f"worst={res.worst:.2e} (parity/delta 1e-12, ratio 1e-10 rel), n={res.count}")
    assert res.passed, res.failures


def test_ac6_discrepancy_ledger(capsys):
    code = main(["validate", "--grid", "default", "--paths", "1000000", "--seed", "42"])
    out = capsys.readouterr().out
    report = json.loads(out)
    entries = {e["quantity"]: e for e in report["ledger"]["entries"]}
    flagged = ["gamma", "theta[line1]", "theta[line2]", "rho", "vanna", "volga", "vega_bleed", "strike_gamma"]
    missing = [q for q in flagged if q not in entries]
    backed = all(
        math.isfinite(entries[q]["implemented_value"]) and math.isfinite(entries[q]["fd_value"])
        and (entries[q]["printed_value"] is not None or entries[q]["verdict"] == "paper-form-absent")
        for q in flagged if q in entries
    )
    ok = code == 0 and not missing and backed and len(entries) >= 7
    verdicts = ", ".join(f"{q}={entries[q]['verdict'].split('-')[-1]}" for q in flagged if q in entries)
    record("AC6 discrepancy ledger via validate", ok, f"exit={code}, {len(entries)} entries; {verdicts}")
    assert not missing
    assert backed
    assert code == 0


def test_ac7_martingale():
    res, secs = timed(check_martingale, 1_000_000, 42)
    record("AC7 martingale of discounted S_T", res.passed, f"worst |mean-s0|/se={res.worst:.2f} (tol 3), {secs:.2f}s")
    assert res.passed, res.failures


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
