"""Adjudication of the published closed forms against finite differences.

Each entry evaluates a published expression ("printed"), the library's
implementation, and a finite-difference reference at one point. The printed
form is rejected only when ``|printed - fd| > 10 * |implemented - fd|``.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

from .math_kernel import norm_cdf, norm_pdf
from .model import MarketState, ModelParams, Terms, _d1_dsigma, _d1_dtau, terms
from .greeks import _gamma, _rho, _strike_gamma, _theta, _vanna, _vega_bleed, _volga
from .oracles import fd_mixed_wrt, fd_wrt
from .pricing import call_price

CONFIRMED = "paper-form-confirmed"
REJECTED = "paper-form-rejected"
ABSENT = "paper-form-absent"

#: Reference point used when none is given. t > 0 so the time-t forms differ
#: from their time-0 specialisations.
REFERENCE = (ModelParams(s0=100.0, r=0.05, sigma=0.2, alpha=2.0, T=1.0), MarketState(t=0.25, s_t=100.0), 100.0)


@dataclass(frozen=True)
class LedgerEntry:
    quantity: str
    paper_location: str
    printed_value: float | None
    implemented_value: float
    fd_value: float
    verdict: str


@dataclass(frozen=True)
class DiscrepancyLedger:
    entries: tuple[LedgerEntry, ...]
    reference: dict

    def to_dict(self) -> dict:
        return {"reference": self.reference, "entries": [asdict(e) for e in self.entries]}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def by_quantity(self) -> dict[str, LedgerEntry]:
        return {e.quantity: e for e in self.entries}


def verdict(printed: float | None, implemented: float, fd: float) -> str:
    if printed is None:
        return ABSENT
    if abs(printed - fd) > 10.0 * abs(implemented - fd):
        return REJECTED
    return CONFIRMED


# -- published forms, transcribed term by term --------------------------------

def printed_gamma_second(tm: Terms) -> float:
    p = tm.params
    return math.exp(-tm.d1**2 / 2) / (tm.s * p.sigma * math.sqrt(2 * math.pi * tm.tau))


def _printed_theta(tm: Terms, numerator: float) -> float:
    p = tm.params
    return (
        -numerator / (2 * math.sqrt(2 * math.pi * tm.tau)) * math.exp(-tm.d1**2 / 2)
        - p.r * tm.k * math.exp(-p.r * tm.tau) * norm_cdf(tm.d2)
        + p.r * p.alpha / p.sigma * tm.ert * (norm_cdf(tm.d1) - norm_cdf(tm.d2))
    )


def printed_theta_line1(tm: Terms) -> float:
    return _printed_theta(tm, tm.s * tm.params.sigma + tm.params.alpha * tm.ert)


def printed_theta_line2(tm: Terms) -> float:
    return _printed_theta(tm, tm.s * tm.params.sigma)


def printed_rho(tm: Terms) -> float:
    p = tm.params
    return tm.tau * tm.k * math.exp(-p.r * tm.tau) * norm_cdf(tm.d2) + p.alpha * tm.t / p.sigma * tm.ert * (
        norm_cdf(tm.d1) - norm_cdf(tm.d2)
    )


def printed_vanna_display(tm: Terms) -> float:
    p = tm.params
    first = (
        p.alpha / p.sigma**2
        * (tm.s - tm.k * math.exp(-p.r * tm.tau))
        / (tm.k * math.exp(-p.r * p.T) + p.alpha / p.sigma)
        * _gamma(tm)
    )
    return first - tm.d2 * math.exp(-tm.d1**2 / 2) / (p.sigma * math.sqrt(2 * math.pi))


def printed_d2_dsigma(tm: Terms) -> float:
    """The first sigma-partial display (labelled as the d2 partial)."""
    p = tm.params
    a = p.alpha / p.sigma
    kd = tm.k * math.exp(-p.r * tm.tau)
    bracket = 1 / (kd + a * tm.ert) * (tm.s - kd) / (tm.s + a * tm.ert)
    return -tm.d1 / p.sigma + p.alpha / (p.sigma**3 * tm.sqrt_tau) * tm.ert * bracket


def printed_volga(tm: Terms) -> float:
    p = tm.params
    dd2 = printed_d2_dsigma(tm)
    dd1 = dd2 + tm.sqrt_tau
    c = p.alpha / p.sigma**2 * tm.ert
    return (
        -2 * p.alpha / p.sigma**3 * tm.ert * (norm_cdf(tm.d2) - norm_cdf(tm.d1))
        + c * (norm_pdf(tm.d2) * dd2 - norm_pdf(tm.d1) * dd1)
        + tm.sqrt_tau * norm_pdf(tm.d1) * (1 - tm.d1 * tm.x * dd1)
    )


def printed_d1_dtau(tm: Terms) -> float:
    p = tm.params
    c = 1 / (2 * p.sigma * tm.tau * tm.sqrt_tau)
    drift = p.r + p.sigma**2 / 2
    return c * (tm.log_ratio + drift * tm.tau) + c * drift


def printed_vega_bleed(tm: Terms) -> float:
    p = tm.params
    dd1 = printed_d1_dtau(tm)
    dd2 = dd1 - p.sigma / (2 * tm.sqrt_tau)
    c = p.alpha / p.sigma**2 * tm.ert
    return c * (norm_pdf(tm.d2) * dd2 - norm_pdf(tm.d1) * dd1) + tm.sqrt_tau * norm_pdf(tm.d1) * tm.x * (
        1 / (2 * tm.tau) - tm.d1 * dd1
    )


def _d1(params, state, k):
    return terms(params, state, k).d1


def _d2(params, state, k):
    return terms(params, state, k).d2


def build_ledger(params: ModelParams | None = None, state: MarketState | None = None, k: float | None = None) -> DiscrepancyLedger:
    """Adjudicate every flagged published expression at one point."""
    if params is None:
        params, state, k = REFERENCE
    state = state if state is not None else MarketState.initial(params)
    pt = (params, state, k)
    tm = terms(*pt)

    fd_theta = fd_wrt(call_price, pt, "t")
    dd1_sigma = _d1_dsigma(tm)
    rows = [
        ("gamma", "published Gamma, second form (S_t*sigma denominator)",
         printed_gamma_second(tm), _gamma(tm), fd_wrt(call_price, pt, "S", order=2)),
        ("theta[line1]", "published call Theta, first line ((S_t*sigma + alpha*e^{rt}) numerator)",
         printed_theta_line1(tm), _theta(tm, False), fd_theta),
        ("theta[line2]", "published call Theta, second line (S_t*sigma numerator)",
         printed_theta_line2(tm), _theta(tm, False), fd_theta),
        ("rho", "published call rho", printed_rho(tm), _rho(tm, False), fd_wrt(call_price, pt, "r")),
        ("vanna", "published Vanna statement (K*e^{-rT} + alpha/sigma denominator)",
         printed_vanna_display(tm), _vanna(tm), fd_mixed_wrt(call_price, pt, "S", "sigma")),
        ("volga", "published Volga, last bracket [1 - d1*(S_t + (alpha/sigma)e^{rt})*dd1/dsigma]",
         printed_volga(tm), _volga(tm), fd_wrt(call_price, pt, "sigma", order=2)),
        ("vega_bleed", "published Vega bleed, assembled with the published dd1/dtau",
         printed_vega_bleed(tm), _vega_bleed(tm), fd_mixed_wrt(call_price, pt, "T", "sigma")),
        ("d1_dtau", "published dd1/dtau", printed_d1_dtau(tm), _d1_dtau(tm), fd_wrt(_d1, pt, "T")),
        ("d2_dsigma", "published sigma-partial display labelled dd2/dsigma",
         printed_d2_dsigma(tm), dd1_sigma - tm.sqrt_tau, fd_wrt(_d2, pt, "sigma")),
        ("strike_gamma", "published Strike gamma (definition only, no closed form)",
         None, _strike_gamma(tm), fd_wrt(call_price, pt, "K", order=2)),
    ]
    entries = tuple(
        LedgerEntry(q, loc, printed, impl, fd, verdict(printed, impl, fd))
        for q, loc, printed, impl, fd in rows
    )
    reference = {
        "s0": params.s0, "rate": params.r, "sigma": params.sigma, "alpha": params.alpha,
        "maturity": params.T, "time": state.t, "spot": state.s_t, "strike": k,
    }
    return DiscrepancyLedger(entries, reference)
