"""First- and second-order price sensitivities.

All sensitivities are partial derivatives of the implemented price, derived
symbolically with every channel through which a variable enters: ``t``
through both ``tau`` and ``e^{rt}``, ``r`` through the discount, the drift
and both ``e^{rt}`` and ``e^{rT}``, and ``sigma`` through the explicit
``alpha/sigma`` shift. Theta is dC/dt at fixed S_t in per-year units (no
sign flip); vega bleed is d2C/dT dsigma with t held fixed.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .math_kernel import norm_cdf, norm_pdf
from .model import MarketState, ModelParams, Terms, _d1_dsigma, _d1_dtau, terms
from .pricing import OptionKind, _price

GREEK_NAMES = (
    "delta", "gamma", "theta", "rho", "vega",
    "vanna", "volga", "vega_bleed", "strike_gamma",
)


@dataclass(frozen=True)
class GreekLadder:
    price: float
    delta: float
    gamma: float
    theta: float
    rho: float
    vega: float
    vanna: float
    volga: float
    vega_bleed: float
    strike_gamma: float

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def _is_put(kind) -> bool:
    return OptionKind.parse(kind) is OptionKind.PUT


def _delta(tm: Terms, put: bool) -> float:
    n1 = norm_cdf(tm.d1)
    return n1 - 1.0 if put else n1


def _gamma(tm: Terms) -> float:
    # x * sigma == sigma*S_t + alpha*e^{rt}, positive by the domain check in terms()
    return norm_pdf(tm.d1) / (tm.x * tm.params.sigma * tm.sqrt_tau)


def _theta(tm: Terms, put: bool) -> float:
    p = tm.params
    out = (
        -tm.x * p.sigma * norm_pdf(tm.d1) / (2.0 * tm.sqrt_tau)
        - p.r * tm.k_disc * norm_cdf(tm.d2)
        + p.r * p.shift * tm.ert * (norm_cdf(tm.d1) - norm_cdf(tm.d2))
    )
    return out + p.r * tm.k_disc if put else out


def _rho(tm: Terms, put: bool) -> float:
    p = tm.params
    out = tm.tau * tm.k_disc * norm_cdf(tm.d2) + p.shift * tm.t * tm.ert * (
        norm_cdf(tm.d1) - norm_cdf(tm.d2)
    )
    return out - tm.tau * tm.k_disc if put else out


def _vega_coef(tm: Terms) -> float:
    """(alpha / sigma^2) e^{rt}, i.e. minus the sigma-derivative of the shift term."""
    return tm.params.alpha / tm.params.sigma**2 * tm.ert


def _vega(tm: Terms) -> float:
    return _vega_coef(tm) * (norm_cdf(tm.d2) - norm_cdf(tm.d1)) + norm_pdf(tm.d1) * tm.x * tm.sqrt_tau


def _vanna(tm: Terms) -> float:
    sigma = tm.params.sigma
    first = _vega_coef(tm) * _gamma(tm) * (tm.s - tm.k_disc) / tm.b_disc
    return first + norm_pdf(tm.d1) / sigma * (sigma * tm.sqrt_tau - tm.d1)


def _volga(tm: Terms) -> float:
    p = tm.params
    b = _vega_coef(tm)
    dd1 = _d1_dsigma(tm)
    dd2 = dd1 - tm.sqrt_tau
    pdf1, pdf2 = norm_pdf(tm.d1), norm_pdf(tm.d2)
    return (
        -2.0 * b / p.sigma * (norm_cdf(tm.d2) - norm_cdf(tm.d1))
        + b * (pdf2 * dd2 - pdf1 * dd1)
        + tm.sqrt_tau * pdf1 * (-b - tm.x * tm.d1 * dd1)
    )


def _vega_bleed(tm: Terms) -> float:
    b = _vega_coef(tm)
    dd1 = _d1_dtau(tm)
    dd2 = dd1 - tm.params.sigma / (2.0 * tm.sqrt_tau)
    pdf1, pdf2 = norm_pdf(tm.d1), norm_pdf(tm.d2)
    return b * (pdf2 * dd2 - pdf1 * dd1) + tm.sqrt_tau * pdf1 * tm.x * (
        1.0 / (2.0 * tm.tau) - tm.d1 * dd1
    )


def _strike_delta(tm: Terms) -> float:
    return -tm.disc * norm_cdf(tm.d2)


def _strike_gamma(tm: Terms) -> float:
    return tm.disc * norm_pdf(tm.d2) / (tm.params.sigma * tm.sqrt_tau * tm.k_shift)


def _maturity_sensitivity(tm: Terms) -> float:
    return tm.x * tm.params.sigma * norm_pdf(tm.d1) / (2.0 * tm.sqrt_tau) + tm.params.r * tm.k_disc * norm_cdf(tm.d2)


def delta(params: ModelParams, state: MarketState, k: float, kind="call") -> float:
    return _delta(terms(params, state, k), _is_put(kind))


def gamma(params: ModelParams, state: MarketState, k: float) -> float:
    """d2C/dS_t^2, identical for calls and puts."""
    return _gamma(terms(params, state, k))


def theta(params: ModelParams, state: MarketState, k: float, kind="call") -> float:
    return _theta(terms(params, state, k), _is_put(kind))


def rho(params: ModelParams, state: MarketState, k: float, kind="call") -> float:
    return _rho(terms(params, state, k), _is_put(kind))


def vega(params: ModelParams, state: MarketState, k: float) -> float:
    return _vega(terms(params, state, k))


def vanna(params: ModelParams, state: MarketState, k: float) -> float:
    """d2C/dS dsigma."""
    return _vanna(terms(params, state, k))


def volga(params: ModelParams, state: MarketState, k: float) -> float:
    """d2C/dsigma^2."""
    return _volga(terms(params, state, k))


def vega_bleed(params: ModelParams, state: MarketState, k: float) -> float:
    """d2C/dT dsigma with t held fixed."""
    return _vega_bleed(terms(params, state, k))


def strike_delta(params: ModelParams, state: MarketState, k: float) -> float:
    """dC/dK. The d-derivative terms cancel through the pdf ratio identity."""
    return _strike_delta(terms(params, state, k))


def strike_gamma(params: ModelParams, state: MarketState, k: float) -> float:
    """d2C/dK^2, the discounted risk-neutral density of S_T at K."""
    return _strike_gamma(terms(params, state, k))


def maturity_sensitivity(params: ModelParams, state: MarketState, k: float) -> float:
    """dC/dT with t held fixed (used for the vega-bleed symmetry check)."""
    return _maturity_sensitivity(terms(params, state, k))


def ladder(params: ModelParams, state: MarketState, k: float, kind="call") -> GreekLadder:
    """Price and all nine sensitivities from one shared evaluation."""
    kind = OptionKind.parse(kind)
    put = kind is OptionKind.PUT
    tm = terms(params, state, k)
    return GreekLadder(
        price=_price(tm, kind),
        delta=_delta(tm, put),
        gamma=_gamma(tm),
        theta=_theta(tm, put),
        rho=_rho(tm, put),
        vega=_vega(tm),
        vanna=_vanna(tm),
        volga=_volga(tm),
        vega_bleed=_vega_bleed(tm),
        strike_gamma=_strike_gamma(tm),
    )
