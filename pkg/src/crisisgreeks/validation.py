"""Verification suites shared by ``crisisgreeks validate`` and the test suite.

Each ``check_*`` function returns a :class:`CheckResult` carrying the worst
error seen, its tolerance and the wall time.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import asdict, dataclass, field

from . import greeks as g
from .ledger import ABSENT, CONFIRMED, REJECTED, DiscrepancyLedger, build_ledger, verdict
from .math_kernel import norm_pdf
from .model import MarketState, ModelParams, terms
from .oracles import (
    McConfig, bs_oracle_ladder, fd_mixed_wrt, fd_wrt, mc_discounted_terminal, mc_price,
)
from .pricing import call_price, put_price

SPOT = 100.0
RATE = 0.05

REQUIRED_LEDGER = (
    "gamma", "theta[line1]", "theta[line2]", "rho", "vanna", "volga", "vega_bleed", "strike_gamma",
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    count: int
    seconds: float = 0.0
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"[{status}] {self.name}: worst={self.worst:.3e} tol={self.tolerance:.0e} "
            f"n={self.count} ({self.seconds:.2f}s)"
        )


class _Tracker:
    """Accumulates worst error and failing cases for one check."""

    def __init__(self, name: str, tol: float):
        self.name, self.tol = name, tol
        self.worst, self.count, self.failures = 0.0, 0, []
        self.t0 = time.perf_counter()

    def add(self, err: float, label: str, tol: float | None = None):
        tol = self.tol if tol is None else tol
        self.count += 1
        if not err <= tol:  # catches NaN
            self.failures.append(f"{label}: err={err:.3e} > {tol:.0e}")
        if err > self.worst or math.isnan(err):
            self.worst = err

    def result(self) -> CheckResult:
        return CheckResult(
            self.name, not self.failures, self.worst, self.tol, self.count,
            time.perf_counter() - self.t0, self.failures[:20],
        )


def rel_err(value: float, reference: float) -> float:
    if reference == 0.0:
        return abs(value)
    return abs(value - reference) / abs(reference)


# -- grids --------------------------------------------------------------------

Point = tuple[ModelParams, MarketState, float]


def bs_grid() -> list[Point]:
    """75 alpha = 0 points: moneyness x sigma x T at t = 0."""
    out = []
    for m, sigma, T in itertools.product((0.8, 0.9, 1.0, 1.1, 1.2), (0.1, 0.2, 0.3, 0.4, 0.5), (0.25, 1.0, 2.0)):
        p = ModelParams(SPOT, RATE, sigma, 0.0, T)
        out.append((p, MarketState.initial(p), m * SPOT))
    return out


def validation_grid(kind: str = "default") -> list[Point]:
    """alpha in {-2, 0, 2} crossed with moneyness, sigma, T and t (72 points).

    ``quick`` keeps the alpha and t axes and the at-the-money slice only.
    """
    if kind == "default":
        axes = ((-2.0, 0.0, 2.0), (0.8, 1.0, 1.2), (0.15, 0.3), (0.5, 1.0), (0.0, 0.25))
    elif kind == "quick":
        axes = ((-2.0, 0.0, 2.0), (1.0,), (0.3,), (1.0,), (0.0, 0.25))
    else:
        raise ValueError(f"unknown grid {kind!r} (expected 'default' or 'quick')")
    out = []
    for alpha, m, sigma, T, t in itertools.product(*axes):
        out.append((ModelParams(SPOT, RATE, sigma, alpha, T), MarketState(t, SPOT), m * SPOT))
    return out


def _label(pt: Point) -> str:
    p, s, k = pt
    return f"(S={s.s_t:g}, K={k:g}, sigma={p.sigma:g}, alpha={p.alpha:g}, T={p.T:g}, t={s.t:g})"


# -- checks -------------------------------------------------------------------

def check_bs_reduction(grid: list[Point] | None = None) -> CheckResult:
    """alpha = 0 prices (abs 1e-10) and the nine Greeks (rel 1e-9) vs the BS oracle."""
    tr = _Tracker("bs-reduction", 1e-9)
    for pt in grid or bs_grid():
        p, s, k = pt
        for kind in ("call", "put"):
            ours = g.ladder(p, s, k, kind)
            ref = bs_oracle_ladder(s.s_t, k, p.r, p.sigma, p.T, kind)
            tr.add(abs(ours.price - ref.price), f"{kind} price {_label(pt)}", tol=1e-10)
            for name in g.GREEK_NAMES:
                tr.add(rel_err(getattr(ours, name), getattr(ref, name)), f"{kind} {name} {_label(pt)}")
    return tr.result()


def check_first_order_fd(grid: list[Point] | None = None) -> CheckResult:
    """Delta, Gamma, Theta, rho, vega against Richardson FD of the price."""
    tr = _Tracker("first-order-fd", 1e-6)
    for pt in grid or validation_grid():
        lbl = _label(pt)
        for kind, fn in (("call", call_price), ("put", put_price)):
            tr.add(rel_err(g.delta(*pt, kind), fd_wrt(fn, pt, "S")), f"{kind} delta {lbl}")
            tr.add(rel_err(g.theta(*pt, kind), fd_wrt(fn, pt, "t")), f"{kind} theta {lbl}")
            tr.add(rel_err(g.rho(*pt, kind), fd_wrt(fn, pt, "r")), f"{kind} rho {lbl}")
            tr.add(rel_err(g.gamma(*pt), fd_wrt(fn, pt, "S", order=2)), f"{kind} gamma {lbl}")
            tr.add(rel_err(g.vega(*pt), fd_wrt(fn, pt, "sigma")), f"{kind} vega {lbl}")
    return tr.result()


def check_second_order_fd(grid: list[Point] | None = None) -> CheckResult:
    """Second-order Greeks vs FD of a first-order Greek and direct FD of price.

    Also checks the two Schwarz routes for Vanna against each other (1e-6) and
    the two mixed routes for Vega bleed (1e-5).
    """
    tr = _Tracker("second-order-fd", 1e-5)
    for pt in grid or validation_grid():
        lbl = _label(pt)
        vanna = g.vanna(*pt)
        via_vega = fd_wrt(g.vega, pt, "S")
        via_delta = fd_wrt(g.delta, pt, "sigma")
        tr.add(rel_err(vanna, via_vega), f"vanna vs d(vega)/dS {lbl}")
        tr.add(rel_err(vanna, via_delta), f"vanna vs d(delta)/dsigma {lbl}")
        tr.add(rel_err(vanna, fd_mixed_wrt(call_price, pt, "S", "sigma")), f"vanna vs mixed FD {lbl}")
        tr.add(rel_err(via_vega, via_delta), f"vanna Schwarz routes {lbl}", tol=1e-6)

        volga = g.volga(*pt)
        tr.add(rel_err(volga, fd_wrt(g.vega, pt, "sigma")), f"volga vs d(vega)/dsigma {lbl}")
        tr.add(rel_err(volga, fd_wrt(call_price, pt, "sigma", order=2)), f"volga vs FD2 {lbl}")

        bleed = g.vega_bleed(*pt)
        vega_in_T = fd_wrt(g.vega, pt, "T")
        tr.add(rel_err(bleed, vega_in_T), f"vega_bleed vs d(vega)/dT {lbl}")
        tr.add(rel_err(bleed, fd_mixed_wrt(call_price, pt, "T", "sigma")), f"vega_bleed vs mixed FD {lbl}")
        tr.add(rel_err(fd_wrt(g.maturity_sensitivity, pt, "sigma"), vega_in_T), f"vega_bleed Schwarz {lbl}")

        sg = g.strike_gamma(*pt)
        tr.add(rel_err(sg, fd_wrt(g.strike_delta, pt, "K")), f"strike_gamma vs d(strike delta)/dK {lbl}")
        tr.add(rel_err(sg, fd_wrt(call_price, pt, "K", order=2)), f"strike_gamma vs FD2 {lbl}")
    return tr.result()


def check_structural(grid: list[Point] | None = None) -> CheckResult:
    """Parity, delta gap, call/put Gamma and vega equality, pdf ratio identity."""
    tr = _Tracker("structural-identities", 1e-12)
    for pt in grid or validation_grid():
        p, s, k = pt
        lbl = _label(pt)
        tm = terms(*pt)
        c, q = call_price(*pt), put_price(*pt)
        tr.add(abs(c - q - s.s_t + k * math.exp(-p.r * tm.tau)), f"parity {lbl}")
        call, put = g.ladder(*pt, "call"), g.ladder(*pt, "put")
        tr.add(abs(call.delta - put.delta - 1.0), f"delta gap {lbl}")
        tr.add(abs(call.gamma - put.gamma), f"gamma call/put {lbl}", tol=0.0)
        tr.add(abs(call.vega - put.vega), f"vega call/put {lbl}", tol=0.0)
        shift_t = p.alpha / p.sigma * tm.ert
        lhs = norm_pdf(tm.d2) * (tm.k_disc + shift_t)
        rhs = norm_pdf(tm.d1) * (s.s_t + shift_t)
        tr.add(rel_err(lhs, rhs), f"pdf ratio identity {lbl}", tol=1e-10)
        tr.add(0.0 if call.gamma >= 0 and call.strike_gamma >= 0 else 1.0, f"gamma sign {lbl}", tol=0.0)
    return tr.result()


def mc_points() -> list[ModelParams]:
    return [ModelParams(SPOT, RATE, 0.2, alpha, 1.0) for alpha in (-2.0, 0.0, 2.0)]


def check_monte_carlo(paths: int = 1_000_000, seed: int = 42) -> CheckResult:
    """Analytic call and put within 3 MC standard errors; MC deterministic."""
    tr = _Tracker("monte-carlo-consistency", 3.0)
    cfg = McConfig(paths=paths, seed=seed, antithetic=True)
    for p in mc_points():
        s0 = MarketState.initial(p)
        for kind, fn in (("call", call_price), ("put", put_price)):
            est = mc_price(p, SPOT, kind, cfg)
            z = abs(est.mean - fn(p, s0, SPOT)) / est.std_error
            tr.add(z, f"{kind} alpha={p.alpha:g} |analytic-mc|/se")
    p = mc_points()[-1]
    a = mc_price(p, SPOT, "call", cfg)
    b = mc_price(p, SPOT, "call", cfg)
    c = mc_price(p, SPOT, "call", McConfig(paths=paths, seed=seed, antithetic=True, workers=4))
    tr.add(0.0 if a == b == c else math.inf, "determinism (repeat and 4 workers)")
    return tr.result()


def check_martingale(paths: int = 1_000_000, seed: int = 42) -> CheckResult:
    """Discounted terminal mean equals s0 within 3 standard errors."""
    tr = _Tracker("martingale", 3.0)
    for p in mc_points():
        est = mc_discounted_terminal(p, McConfig(paths=paths, seed=seed, antithetic=True))
        tr.add(abs(est.mean - p.s0) / est.std_error, f"alpha={p.alpha:g} |mean-s0|/se")
    return tr.result()


def check_ledger(ledger: DiscrepancyLedger | None = None) -> CheckResult:
    """Every flagged published form carries a consistent, FD-backed verdict."""
    tr = _Tracker("discrepancy-ledger", 0.0)
    ledger = ledger or build_ledger()
    entries = ledger.by_quantity()
    for q in REQUIRED_LEDGER:
        tr.add(0.0 if q in entries else 1.0, f"entry {q} present")
    for e in ledger.entries:
        finite = math.isfinite(e.implemented_value) and math.isfinite(e.fd_value) and (
            e.printed_value is None or math.isfinite(e.printed_value)
        )
        tr.add(0.0 if finite else 1.0, f"{e.quantity} values finite")
        ok = e.verdict in (CONFIRMED, REJECTED, ABSENT) and e.verdict == verdict(
            e.printed_value, e.implemented_value, e.fd_value
        )
        tr.add(0.0 if ok else 1.0, f"{e.quantity} verdict consistent")
        # the implementation itself must pass FD adjudication
        tr.add(0.0 if rel_err(e.implemented_value, e.fd_value) <= 1e-5 else 1.0, f"{e.quantity} implemented ~ FD")
    return tr.result()


@dataclass
class ValidationReport:
    checks: list[CheckResult]
    ledger: DiscrepancyLedger

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [asdict(c) for c in self.checks],
            "ledger": self.ledger.to_dict(),
        }


def run_validation(grid: str = "default", paths: int = 1_000_000, seed: int = 42) -> ValidationReport:
    points = validation_grid(grid)
    ledger = build_ledger()
    checks = [
        check_bs_reduction(),
        check_first_order_fd(points),
        check_second_order_fd(points),
        check_monte_carlo(paths, seed),
        check_structural(points),
        check_martingale(paths, seed),
        check_ledger(ledger),
    ]
    return ValidationReport(checks, ledger)
