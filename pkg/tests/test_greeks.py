import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crisisgreeks import greeks as g
from crisisgreeks.errors import DomainError
from crisisgreeks.math_kernel import norm_cdf, norm_pdf
from crisisgreeks.model import MarketState, ModelParams, d_pair
from crisisgreeks.oracles import bs_oracle_ladder, fd_mixed_wrt, fd_wrt
from crisisgreeks.pricing import call_price, put_price

# Black-Scholes values at S=K=100, r=5%, sigma=20%, T=1 (50-digit mpmath, closed
# forms cross-checked by mpmath numerical differentiation of the BS price)
BS = dict(
    price=10.450583572185566782,
    delta=0.63683065117561907122,
    gamma=0.018762017345846893919,
    theta=-6.4140275464381958008,
    rho=53.232481545376340341,
    vega=37.524034691693787837,
    vanna=-0.28143026018770340878,
    volga=9.8500591065696193073,
    vega_bleed=16.463670220980649414,
    strike_gamma=0.018762017345846893919,
)


@pytest.fixture
def atmf():
    p = ModelParams(100.0, 0.05, 0.2, 0.0, 1.0)
    return p, MarketState.initial(p), 100.0 * math.exp(0.05)


@pytest.mark.parametrize("name", list(BS))
def test_black_scholes_values(bs_point, name):
    assert getattr(g.ladder(*bs_point), name) == pytest.approx(BS[name], rel=1e-13)


def test_delta_examples(atmf, crisis_point):
    assert g.delta(*atmf) == pytest.approx(norm_cdf(0.1), rel=1e-14)
    assert g.delta(*crisis_point) == pytest.approx(fd_wrt(call_price, crisis_point, "S"), rel=1e-7)
    assert g.delta(*crisis_point, "put") == pytest.approx(fd_wrt(put_price, crisis_point, "S"), rel=1e-7)


def test_gamma_crisis(crisis_point, crisis_point_t):
    for pt in (crisis_point, crisis_point_t):
        assert g.gamma(*pt) == pytest.approx(fd_wrt(call_price, pt, "S", order=2), rel=1e-6)


def test_gamma_printed_forms_coincide_without_alpha(bs_point):
    from crisisgreeks.ledger import printed_gamma_second
    from crisisgreeks.model import terms
    tm = terms(*bs_point)
    assert printed_gamma_second(tm) == pytest.approx(g.gamma(*bs_point), rel=1e-15)


def test_theta_crisis_and_put_gap(crisis_point, crisis_point_t):
    for pt in (crisis_point, crisis_point_t):
        assert g.theta(*pt) == pytest.approx(fd_wrt(call_price, pt, "t"), rel=1e-6)
        tau = pt[0].T - pt[1].t
        gap = g.theta(*pt, "put") - g.theta(*pt, "call")
        assert gap == pytest.approx(0.05 * 100.0 * math.exp(-0.05 * tau), rel=1e-13)


def test_rho(bs_point, crisis_point, crisis_point_t):
    from crisisgreeks.ledger import printed_rho
    from crisisgreeks.model import terms
    assert printed_rho(terms(*bs_point)) == pytest.approx(fd_wrt(call_price, bs_point, "r"), rel=1e-8)
    for pt in (crisis_point, crisis_point_t):
        assert g.rho(*pt) == pytest.approx(fd_wrt(call_price, pt, "r"), rel=1e-6)
        assert g.rho(*pt, "put") == pytest.approx(fd_wrt(put_price, pt, "r"), rel=1e-6)


def test_vega(crisis_point, crisis_point_t):
    for pt in (crisis_point, crisis_point_t):
        assert g.vega(*pt) == pytest.approx(fd_wrt(call_price, pt, "sigma"), rel=1e-6)
        assert g.vega(*pt) == pytest.approx(fd_wrt(put_price, pt, "sigma"), rel=1e-6)


def test_vanna_two_routes(crisis_point, crisis_point_t):
    for pt in (crisis_point, crisis_point_t):
        v = g.vanna(*pt)
        assert v == pytest.approx(fd_wrt(g.vega, pt, "S"), rel=1e-6)
        assert v == pytest.approx(fd_wrt(g.delta, pt, "sigma"), rel=1e-6)


def test_vanna_at_discounted_strike():
    # S_t = K e^{-r tau} zeroes the shift term
    p = ModelParams(100.0, 0.05, 0.2, 2.0, 1.0)
    k = 100.0 * math.exp(0.05 * 0.75)
    pt = (p, MarketState(0.25, 100.0), k)
    d = d_pair(*pt)
    assert g.vanna(*pt) == pytest.approx(norm_pdf(d.d1) / 0.2 * (0.2 * math.sqrt(0.75) - d.d1), rel=1e-12, abs=1e-15)


def test_volga(crisis_point, crisis_point_t, atmf):
    for pt in (crisis_point, crisis_point_t):
        assert g.volga(*pt) == pytest.approx(fd_wrt(call_price, pt, "sigma", order=2), rel=1e-5)
    assert g.volga(*atmf) < 0
    vega = g.vega(*atmf)
    assert g.volga(*atmf) == pytest.approx(vega * (0.1 * -0.1) / 0.2, rel=1e-12)


def test_vega_bleed(bs_point, crisis_point, crisis_point_t):
    assert g.vega_bleed(*bs_point) == pytest.approx(fd_wrt(g.vega, bs_point, "T"), rel=1e-6)
    for pt in (crisis_point, crisis_point_t):
        b = g.vega_bleed(*pt)
        assert b == pytest.approx(fd_mixed_wrt(call_price, pt, "T", "sigma"), rel=1e-5)
        assert fd_wrt(g.maturity_sensitivity, pt, "sigma") == pytest.approx(fd_wrt(g.vega, pt, "T"), rel=1e-5)


def test_maturity_sensitivity(crisis_point_t):
    assert g.maturity_sensitivity(*crisis_point_t) == pytest.approx(fd_wrt(call_price, crisis_point_t, "T"), rel=1e-7)


def test_strike_gamma(crisis_point, crisis_point_t):
    for pt in (crisis_point, crisis_point_t):
        assert g.strike_gamma(*pt) > 0
        assert g.strike_gamma(*pt) == pytest.approx(fd_wrt(call_price, pt, "K", order=2), rel=1e-6)
        assert g.strike_delta(*pt) == pytest.approx(fd_wrt(call_price, pt, "K"), rel=1e-7)


@pytest.mark.parametrize("kind", ["call", "put"])
def test_ladder_is_bit_identical_to_individual_ops(crisis_point_t, kind):
    lad = g.ladder(*crisis_point_t, kind)
    pt = crisis_point_t
    assert lad.price == (call_price(*pt) if kind == "call" else put_price(*pt))
    assert lad.delta == g.delta(*pt, kind)
    assert lad.theta == g.theta(*pt, kind)
    assert lad.rho == g.rho(*pt, kind)
    for name in ("gamma", "vega", "vanna", "volga", "vega_bleed", "strike_gamma"):
        assert getattr(lad, name) == getattr(g, name)(*pt)


def test_ladder_matches_bs_oracle(bs_point):
    ours = g.ladder(*bs_point).as_dict()
    ref = bs_oracle_ladder(100.0, 100.0, 0.05, 0.2, 1.0).as_dict()
    for k in ours:
        assert ours[k] == pytest.approx(ref[k], abs=1e-10)


def test_greeks_propagate_domain_errors():
    p = ModelParams(100.0, 0.05, 0.2, -10.0, 1.0)
    with pytest.raises(DomainError):
        g.ladder(p, MarketState(0.5, 40.0), 100.0)


@settings(max_examples=200, deadline=None)
@given(
    s=st.floats(20, 300), m=st.floats(0.4, 1.8), sigma=st.floats(0.05, 0.9),
    alpha=st.floats(-5, 5), T=st.floats(0.05, 4), frac=st.floats(0, 0.9),
)
def test_call_put_invariants(s, m, sigma, alpha, T, frac):
    try:
        p = ModelParams(s, 0.04, sigma, alpha, T)
        pt = (p, MarketState(frac * T, s), s * m)
        c, q = g.ladder(*pt, "call"), g.ladder(*pt, "put")
    except DomainError:
        return
    assert c.delta - q.delta == pytest.approx(1.0, abs=1e-12)
    assert c.gamma == q.gamma and c.vega == q.vega
    assert c.gamma >= 0 and c.strike_gamma >= 0
