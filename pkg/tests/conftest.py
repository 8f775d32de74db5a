import pytest
from hypothesis import HealthCheck, settings, strategies as st

from walkenum.graph import Graph

settings.register_profile("default", deadline=None, max_examples=150,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, n_max=7, e_max=14):
    n = draw(st.integers(1, n_max))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=e_max))
    return Graph.from_pairs(n, pairs)


@st.composite
def labelled_graphs(draw, n_max=5, sigma_max=3):
    n = draw(st.integers(1, n_max))
    sigma = draw(st.integers(1, sigma_max))
    pairs = []
    for q in range(n):
        for a in range(1, sigma + 1):
            t = draw(st.one_of(st.none(), st.integers(0, n - 1)))
            if t is not None:
                pairs.append((q, t, a))
    return Graph.from_pairs(n, pairs, sigma)


@pytest.fixture
def g1_text():
    return "4 4\n0 1\n1 2\n2 3\n0 2\n"


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num][1])
