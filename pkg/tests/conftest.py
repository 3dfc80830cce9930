import pytest

from crisisgreeks.model import MarketState, ModelParams


@pytest.fixture
def bs_point():
    """The textbook point S=K=100, r=5%, sigma=20%, T=1 with alpha = 0."""
    p = ModelParams(s0=100.0, r=0.05, sigma=0.2, alpha=0.0, T=1.0)
    return p, MarketState.initial(p), 100.0


@pytest.fixture
def crisis_point():
    p = ModelParams(s0=100.0, r=0.05, sigma=0.2, alpha=2.0, T=1.0)
    return p, MarketState.initial(p), 100.0


@pytest.fixture
def crisis_point_t():
    p = ModelParams(s0=100.0, r=0.05, sigma=0.2, alpha=2.0, T=1.0)
    return p, MarketState(t=0.25, s_t=100.0), 100.0


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS.values():
            terminalreporter.write_line(line)
