"""European option prices and Greeks under the crisis diffusion

    dS_t = r S_t dt + (sigma S_t + alpha e^{rt}) dW_t,

with finite-difference, Monte-Carlo and Black-Scholes oracles that check them.
"""

from .errors import ConfigError, DegenerateDiffusionError, DomainError, MaturityError, ModelError
from .greeks import (
    GreekLadder, delta, gamma, ladder, rho, strike_gamma, theta, vanna, vega, vega_bleed, volga,
)
from .math_kernel import norm_cdf, norm_pdf
from .model import DPair, MarketState, ModelParams, d1_dsigma, d1_dtau, d2_dsigma, d2_dtau, d_pair
from .pricing import OptionKind, call_price, price, put_price

__all__ = [
    "ConfigError", "DegenerateDiffusionError", "DomainError", "MaturityError", "ModelError",
    "GreekLadder", "delta", "gamma", "ladder", "rho", "strike_gamma", "theta", "vanna", "vega",
    "vega_bleed", "volga", "norm_cdf", "norm_pdf", "DPair", "MarketState", "ModelParams",
    "d1_dsigma", "d1_dtau", "d2_dsigma", "d2_dtau", "d_pair", "OptionKind", "call_price",
    "price", "put_price",
]
__version__ = "0.1.0"
