"""Closed-form European call and put prices under the crisis model.

Prices are not floored at zero: with ``alpha != 0`` the terminal price can go
negative, and the formulas price that exposure faithfully.
"""

from __future__ import annotations

import enum

from .math_kernel import norm_cdf
from .model import MarketState, ModelParams, Terms, terms


class OptionKind(str, enum.Enum):
    CALL = "call"
    PUT = "put"

    @classmethod
    def parse(cls, value: "OptionKind | str") -> "OptionKind":
        return value if isinstance(value, cls) else cls(str(value).lower())


def _call(tm: Terms) -> float:
    return tm.x * norm_cdf(tm.d1) - tm.b_disc * norm_cdf(tm.d2)


def _put(tm: Terms) -> float:
    # parity: P = C + K e^{-r tau} - S_t
    return _call(tm) + tm.k_disc - tm.s


def _price(tm: Terms, kind: OptionKind) -> float:
    return _call(tm) if kind is OptionKind.CALL else _put(tm)


def call_price(params: ModelParams, state: MarketState, k: float) -> float:
    """Call premium at ``state``; ``MarketState.initial(params)`` gives the time-0 premium."""
    return _call(terms(params, state, k))


def put_price(params: ModelParams, state: MarketState, k: float) -> float:
    return _put(terms(params, state, k))


def price(params: ModelParams, state: MarketState, k: float, kind: OptionKind | str = "call") -> float:
    return _price(terms(params, state, k), OptionKind.parse(kind))
