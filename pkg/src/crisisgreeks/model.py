"""Crisis-model parameters and the shifted-lognormal d-functions.

Under ``dS = r S dt + (sigma S + alpha e^{rt}) dW`` the shifted price
``X_t = S_t + (alpha/sigma) e^{rt}`` is a geometric Brownian motion, so every
formula below is Black-Scholes in ``X`` against the shifted strike
``K + (alpha/sigma) e^{rT}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateDiffusionError, DomainError, MaturityError

#: Smallest admissible time to maturity, in years.
MIN_TAU = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """The five market constants.

    ``alpha`` is in price units per sqrt(year) and may be negative.
    """

    s0: float
    r: float
    sigma: float
    alpha: float
    T: float

    def __post_init__(self):
        for name in ("s0", "r", "sigma", "alpha", "T"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite", v)
        if self.sigma <= 0:
            raise DomainError("sigma > 0", self.sigma)
        if self.T <= 0:
            raise MaturityError("T > 0", self.T)
        if self.s0 <= 0:
            raise DomainError("s0 > 0", self.s0)
        if self.s0 + self.alpha / self.sigma <= 0:
            raise DomainError("s0 + alpha/sigma > 0", self.s0 + self.alpha / self.sigma)

    @property
    def shift(self) -> float:
        """alpha / sigma."""
        return self.alpha / self.sigma


@dataclass(frozen=True)
class MarketState:
    """Evaluation time ``t`` and the asset price ``s_t`` observed then."""

    t: float
    s_t: float

    @classmethod
    def initial(cls, params: ModelParams) -> "MarketState":
        return cls(0.0, params.s0)


@dataclass(frozen=True)
class DPair:
    d1: float
    d2: float
    tau: float


@dataclass(frozen=True)
class Terms:
    """Shared intermediates of one evaluation point.

    Computed once by :func:`terms` and reused by pricing and every Greek, so
    a ladder costs a single log and a handful of exps.
    """

    params: ModelParams
    t: float
    s: float
    k: float
    tau: float
    sqrt_tau: float
    ert: float  # e^{rt}
    erT: float  # e^{rT}
    disc: float  # e^{-r tau}
    x: float  # S_t + (alpha/sigma) e^{rt}
    k_shift: float  # K + (alpha/sigma) e^{rT}
    k_disc: float  # K e^{-r tau}
    b_disc: float  # K e^{-r tau} + (alpha/sigma) e^{rt}
    log_ratio: float  # ln(x / k_shift)
    d1: float
    d2: float


def terms(params: ModelParams, state: MarketState, k: float) -> Terms:
    """Validate the evaluation point and compute all shared intermediates."""
    t, s, k = float(state.t), float(state.s_t), float(k)
    for name, v in (("t", t), ("s_t", s), ("strike", k)):
        if not math.isfinite(v):
            raise DomainError(f"{name} must be finite", v)
    if t < 0:
        raise DomainError("t >= 0", t)
    if k <= 0:
        raise DomainError("strike > 0", k)
    tau = params.T - t
    if tau < MIN_TAU:
        raise MaturityError(f"T - t >= {MIN_TAU:g}", tau)

    r, sigma = params.r, params.sigma
    shift = params.shift
    ert = math.exp(r * t)
    erT = math.exp(r * params.T)
    x = s + shift * ert
    if x <= 0:
        raise DegenerateDiffusionError(
            "s_t + (alpha/sigma) e^{rt} > 0 (equivalently sigma*s_t + alpha*e^{rt} > 0)", x
        )
    k_shift = k + shift * erT
    if k_shift <= 0:
        raise DomainError("strike + (alpha/sigma) e^{rT} > 0", k_shift)

    sqrt_tau = math.sqrt(tau)
    disc = math.exp(-r * tau)
    k_disc = k * disc
    log_ratio = math.log(x / k_shift)
    vol = sigma * sqrt_tau
    d1 = (log_ratio + (r + 0.5 * sigma * sigma) * tau) / vol
    d2 = d1 - vol
    return Terms(
        params=params, t=t, s=s, k=k, tau=tau, sqrt_tau=sqrt_tau, ert=ert, erT=erT,
        disc=disc, x=x, k_shift=k_shift, k_disc=k_disc, b_disc=k_disc + shift * ert,
        log_ratio=log_ratio, d1=d1, d2=d2,
    )


def d_pair(params: ModelParams, state: MarketState, k: float) -> DPair:
    """d1 and d2 at time ``t``; at ``t = 0`` these are the time-0 forms."""
    tm = terms(params, state, k)
    return DPair(tm.d1, tm.d2, tm.tau)


def _d1_dsigma(tm: Terms) -> float:
    p = tm.params
    sigma = p.sigma
    # d ln(x/k_shift)/d sigma, with alpha fixed and alpha/sigma moving
    cross = p.alpha * tm.ert * (tm.s - tm.k_disc) / (tm.x * tm.b_disc)
    return -tm.d1 / sigma + tm.sqrt_tau + cross / (sigma**3 * tm.sqrt_tau)


def _d1_dtau(tm: Terms) -> float:
    # T moves, t fixed: only k_shift inside the log depends on T besides tau.
    p = tm.params
    sigma, r = p.sigma, p.r
    dlog_dT = -p.shift * r * tm.erT / tm.k_shift
    return (
        dlog_dT / (sigma * tm.sqrt_tau)
        - tm.log_ratio / (2.0 * sigma * tm.tau * tm.sqrt_tau)
        + (r + 0.5 * sigma * sigma) / (2.0 * sigma * tm.sqrt_tau)
    )


def d1_dsigma(params: ModelParams, state: MarketState, k: float) -> float:
    """Partial of d1 in sigma at fixed S_t, t, T, K, r, alpha."""
    return _d1_dsigma(terms(params, state, k))


def d2_dsigma(params: ModelParams, state: MarketState, k: float) -> float:
    tm = terms(params, state, k)
    return _d1_dsigma(tm) - tm.sqrt_tau


def d1_dtau(params: ModelParams, state: MarketState, k: float) -> float:
    """Partial of d1 in time to maturity, moving T with t held fixed."""
    return _d1_dtau(terms(params, state, k))


def d2_dtau(params: ModelParams, state: MarketState, k: float) -> float:
    tm = terms(params, state, k)
    return _d1_dtau(tm) - params.sigma / (2.0 * tm.sqrt_tau)


#: Variable names accepted by :func:`with_value`.
VARIABLES = ("S", "K", "sigma", "alpha", "T", "t", "r")


def with_value(
    params: ModelParams, state: MarketState, k: float, name: str, value: float
) -> tuple[ModelParams, MarketState, float]:
    """Return the evaluation point with one variable replaced.

    ``S`` moves the observed price ``s_t`` (and ``s0`` too when ``t == 0``).
    """
    from dataclasses import replace

    if name == "S":
        if state.t == 0:
            params = replace(params, s0=value)
        return params, replace(state, s_t=value), k
    if name == "K":
        return params, state, value
    if name == "t":
        return params, replace(state, t=value), k
    if name in ("sigma", "alpha", "T", "r"):
        return replace(params, **{name: value}), state, k
    raise ValueError(f"unknown variable {name!r}; expected one of {VARIABLES}")


def value_of(params: ModelParams, state: MarketState, k: float, name: str) -> float:
    if name == "S":
        return state.s_t
    if name == "K":
        return k
    if name == "t":
        return state.t
    if name in ("sigma", "alpha", "T", "r"):
        return getattr(params, name)
    raise ValueError(f"unknown variable {name!r}; expected one of {VARIABLES}")
