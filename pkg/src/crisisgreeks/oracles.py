"""Independent verification engines.

* :func:`bs_oracle_ladder` -- textbook Black-Scholes values. It uses
  ``scipy.special.ndtr`` and its own d-functions, so it shares no code with
  the crisis-model path.
* :func:`fd_derivative` / :func:`fd_mixed` -- central differences with one
  Richardson level.
* :func:`mc_price` -- Monte Carlo on the exact terminal solution.

Random numbers
--------------
Normals come from numpy's ziggurat sampler (``Generator.standard_normal``)
driven by Philox4x64-10, a counter-based generator. Draws are produced in
fixed blocks of :data:`BLOCK` values, and block ``b`` uses the Philox key
``(seed, b)``. Block statistics are merged in block order, so the estimate is
bit-identical for any number of worker threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import ndtr

from .errors import ConfigError, DomainError
from .greeks import GreekLadder
from .model import MarketState, ModelParams, value_of, with_value
from .pricing import OptionKind

BLOCK = 1 << 16
_SQRT_2PI = math.sqrt(2.0 * math.pi)


# -- Black-Scholes reference -------------------------------------------------

def bs_oracle_ladder(s0: float, k: float, r: float, sigma: float, T: float, kind="call") -> GreekLadder:
    """Classical Black-Scholes price and sensitivities (no dividends)."""
    if s0 <= 0 or k <= 0 or sigma <= 0 or T <= 0:
        raise DomainError("Black-Scholes needs s0, k, sigma, T > 0")
    put = OptionKind.parse(kind) is OptionKind.PUT
    vs = sigma * math.sqrt(T)
    d1 = (math.log(s0 / k) + (r + sigma**2 / 2) * T) / vs
    d2 = (math.log(s0 / k) + (r - sigma**2 / 2) * T) / vs
    nd1, nd2 = float(ndtr(d1)), float(ndtr(d2))
    pdf1 = math.exp(-d1 * d1 / 2) / _SQRT_2PI
    pdf2 = math.exp(-d2 * d2 / 2) / _SQRT_2PI
    df = math.exp(-r * T)

    call = s0 * nd1 - k * df * nd2
    vega = s0 * pdf1 * math.sqrt(T)
    theta = -s0 * pdf1 * sigma / (2 * math.sqrt(T)) - r * k * df * nd2
    rho = T * k * df * nd2
    return GreekLadder(
        price=call - s0 + k * df if put else call,
        delta=nd1 - 1 if put else nd1,
        gamma=pdf1 / (s0 * vs),
        theta=theta + r * k * df if put else theta,
        rho=rho - T * k * df if put else rho,
        vega=vega,
        vanna=-pdf1 * d2 / sigma,
        volga=vega * d1 * d2 / sigma,
        vega_bleed=vega * ((1 + d1 * d2) / (2 * T) - r * d1 / vs),
        strike_gamma=df * pdf2 / (k * vs),
    )


# -- finite differences ------------------------------------------------------

def _step(x: float, scale: float) -> float:
    return scale * max(abs(x), 1.0)


def _call_at(f: Callable[..., float], *args: float) -> float:
    try:
        return f(*args)
    except DomainError as exc:
        raise DomainError(f"finite-difference bump to {args!r} left the model domain: {exc}") from exc


def fd_derivative(
    f: Callable[[float], float],
    x: float,
    order: int = 1,
    scale: float | None = None,
    one_sided: bool = False,
) -> float:
    """Richardson-extrapolated central difference of ``f`` at ``x``.

    The step is ``h = scale * max(|x|, 1)``; ``scale`` defaults to 1e-4 for
    first and 1e-3 for second derivatives. Differences at ``h`` and ``h/2``
    are combined as ``(4 D(h/2) - D(h)) / 3``. ``one_sided=True`` (first
    order only) swaps in the forward stencil ``(-3f(x) + 4f(x+h) - f(x+2h)) / 2h``
    for points on a domain boundary such as ``t = 0``.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    if one_sided and order != 1:
        raise ValueError("one-sided differences are first order only")
    if scale is None:
        scale = 1e-4 if order == 1 else 1e-3
    h = _step(x, scale)

    def diff(h: float) -> float:
        if one_sided:
            return (-3 * _call_at(f, x) + 4 * _call_at(f, x + h) - _call_at(f, x + 2 * h)) / (2 * h)
        if order == 1:
            return (_call_at(f, x + h) - _call_at(f, x - h)) / (2 * h)
        return (_call_at(f, x + h) - 2 * _call_at(f, x) + _call_at(f, x - h)) / (h * h)

    return (4 * diff(h / 2) - diff(h)) / 3


def fd_mixed(f: Callable[[float, float], float], x: float, y: float, scale: float = 1e-3) -> float:
    """Richardson-extrapolated cross central difference d2f/dx dy."""
    hx, hy = _step(x, scale), _step(y, scale)

    def diff(hx: float, hy: float) -> float:
        return (
            _call_at(f, x + hx, y + hy) - _call_at(f, x + hx, y - hy)
            - _call_at(f, x - hx, y + hy) + _call_at(f, x - hx, y - hy)
        ) / (4 * hx * hy)

    return (4 * diff(hx / 2, hy / 2) - diff(hx, hy)) / 3


Point = tuple[ModelParams, MarketState, float]


def fd_wrt(fn: Callable[..., float], point: Point, name: str, order: int = 1) -> float:
    """FD of ``fn(params, state, k)`` in the named variable (see ``model.VARIABLES``).

    Differentiating in ``t`` at ``t = 0`` uses the forward stencil, since
    earlier times are outside the model domain.
    """
    params, state, k = point
    x = value_of(params, state, k, name)

    def f(v: float) -> float:
        return fn(*with_value(params, state, k, name, v))

    return fd_derivative(f, x, order=order, one_sided=(name == "t" and x == 0))


def fd_mixed_wrt(fn: Callable[..., float], point: Point, xname: str, yname: str) -> float:
    params, state, k = point

    def f(u: float, v: float) -> float:
        return fn(*with_value(*with_value(params, state, k, xname, u), yname, v))

    return fd_mixed(f, value_of(params, state, k, xname), value_of(params, state, k, yname))


# -- Monte Carlo -------------------------------------------------------------

@dataclass(frozen=True)
class McConfig:
    paths: int
    seed: int = 0
    antithetic: bool = True
    workers: int = 1

    def __post_init__(self):
        if int(self.paths) != self.paths or self.paths < 1:
            raise ConfigError(f"paths must be an integer >= 1 (got {self.paths!r})")
        if self.antithetic and self.paths % 2:
            raise ConfigError(f"antithetic sampling needs an even path count (got {self.paths})")
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigError(f"seed must fit in 64 unsigned bits (got {self.seed!r})")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    paths: int
    seed: int


def block_normals(seed: int, block: int, size: int = BLOCK) -> np.ndarray:
    """Standard normals of block ``block``; a pure function of (seed, block)."""
    key = np.array([seed, block], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key)).standard_normal(size)


def normals(seed: int, count: int) -> np.ndarray:
    """First ``count`` normals of the stream for ``seed``."""
    nblocks = -(-count // BLOCK)
    if nblocks == 0:
        return np.empty(0)
    return np.concatenate([block_normals(seed, b) for b in range(nblocks)])[:count]


def simulate_terminal(params: ModelParams, z) -> np.ndarray:
    """Map standard normals to exact terminal prices S_T. Negative values are kept."""
    z = np.asarray(z, dtype=float)
    p = params
    growth = np.exp((p.r - 0.5 * p.sigma**2) * p.T + p.sigma * math.sqrt(p.T) * z)
    return (p.s0 + p.shift) * growth - p.shift * math.exp(p.r * p.T)


def simulate_paths(params: ModelParams, times, n_paths: int, seed: int) -> np.ndarray:
    """Exact-solution trajectories at ``times`` (increasing, starting >= 0).

    Returns an array of shape ``(len(times), n_paths)``. Brownian values are
    built forward from independent increments ``W_{t+d} - W_t ~ N(0, d)``.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0 or times[0] < 0 or np.any(np.diff(times) <= 0):
        raise ConfigError("times must be a non-empty increasing sequence starting at t >= 0")
    if n_paths < 1:
        raise ConfigError("n_paths must be >= 1")
    dt = np.diff(times, prepend=0.0)
    z = normals(seed, times.size * n_paths).reshape(times.size, n_paths)
    w = np.cumsum(np.sqrt(dt)[:, None] * z, axis=0)
    p = params
    growth = np.exp((p.r - 0.5 * p.sigma**2) * times[:, None] + p.sigma * w)
    return (p.s0 + p.shift) * growth - p.shift * np.exp(p.r * times)[:, None]


def _merge(a: tuple[int, float, float], b: tuple[int, float, float]) -> tuple[int, float, float]:
    # Chan et al. pairwise update of (count, mean, sum of squared deviations)
    na, ma, qa = a
    nb, mb, qb = b
    n = na + nb
    delta = mb - ma
    return n, ma + delta * nb / n, qa + qb + delta * delta * na * nb / n


def mc_expectation(params: ModelParams, payoff: Callable[[np.ndarray], np.ndarray], config: McConfig) -> McEstimate:
    """Monte-Carlo mean of ``payoff(S_T)`` with its standard error.

    With antithetic sampling each sample is the average over the pair
    ``(z, -z)`` and the standard error is taken over pair averages.
    """
    samples = config.paths // 2 if config.antithetic else config.paths
    nblocks = -(-samples // BLOCK)

    def block_stats(b: int) -> tuple[int, float, float]:
        size = min(BLOCK, samples - b * BLOCK)
        z = block_normals(config.seed, b, size)
        v = payoff(simulate_terminal(params, z))
        if config.antithetic:
            v = 0.5 * (v + payoff(simulate_terminal(params, -z)))
        m = float(np.mean(v))
        return size, m, float(np.sum((v - m) ** 2))

    if config.workers > 1 and nblocks > 1:
        with ThreadPoolExecutor(config.workers) as pool:
            stats = list(pool.map(block_stats, range(nblocks)))
    else:
        stats = [block_stats(b) for b in range(nblocks)]

    acc = stats[0]
    for s in stats[1:]:
        acc = _merge(acc, s)
    n, mean, m2 = acc
    se = math.sqrt(m2 / (n - 1) / n) if n > 1 else math.inf
    return McEstimate(mean=mean, std_error=se, paths=config.paths, seed=config.seed)


def mc_price(params: ModelParams, k: float, kind, config: McConfig) -> McEstimate:
    """Discounted-payoff estimate of the time-0 European option price."""
    if k <= 0:
        raise DomainError("strike > 0", k)
    df = math.exp(-params.r * params.T)
    if OptionKind.parse(kind) is OptionKind.CALL:
        payoff = lambda s: df * np.maximum(s - k, 0.0)  # noqa: E731
    else:
        payoff = lambda s: df * np.maximum(k - s, 0.0)  # noqa: E731
    return mc_expectation(params, payoff, config)


def mc_discounted_terminal(params: ModelParams, config: McConfig) -> McEstimate:
    """Estimate of E[e^{-rT} S_T], which must equal s0 (martingale check)."""
    df = math.exp(-params.r * params.T)
    return mc_expectation(params, lambda s: df * s, config)
