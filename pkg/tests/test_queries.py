import pytest
from hypothesis import given, strategies as st

from walkenum.preprocess import INFINITE, preprocess
from walkenum.queries import PreconditionError, SparseMax
from walkenum.preprocess import Meter
from walkenum.testkit import brute_pmn, default_walk_vertices, fixtures, g1, random_graph, scan_pmn

from conftest import graphs


def pmn_cases(p, cap=18):
    for s in range(p.n):
        top = p.pi[s] if p.pi[s] != INFINITE else cap
        for length in range(1, min(top, cap) + 1):
            yield s, length


def check_pmn(g):
    p = preprocess(g)
    q = p.queries
    for s, length in pmn_cases(p):
        got = q.pmn(s, length)
        want = brute_pmn(p, s, length)
        if want is None:
            assert got is None
            continue
        value, attaining = want
        assert got is not None
        assert got.dist + p.w[got.vertex] == value
        assert (got.vertex, got.dist) in attaining
        assert got == scan_pmn(p, s, length)
        assert q.walk_end(s, length) == default_walk_vertices(p, s, length)[-1]


def test_g1_pmn():
    p = preprocess(g1())
    r = p.queries.pmn(0, 3)
    assert (r.vertex, r.dist + p.w[r.vertex]) == (0, 2)
    assert p.queries.pmn(1, 2) is None


@pytest.mark.parametrize("name", sorted(fixtures()))
def test_fixture_pmn(name):
    check_pmn(fixtures()[name])


@given(graphs())
def test_pmn_matches_scan(g):
    check_pmn(g)


@given(graphs())
def test_level_ancestor_matches_parent_walk(g):
    p = preprocess(g)
    la = p.queries.la
    parent = p.queries.tree_parent
    for v in range(g.n):
        x = v
        for j in range(p.level[v], -1, -1):
            assert la(v, j) == x
            x = parent[x] if parent[x] is not None else x
    with pytest.raises(PreconditionError):
        la(0, p.level[0] + 1)


def test_preconditions():
    q = preprocess(g1()).queries
    with pytest.raises(PreconditionError):
        q.pmn(0, 4)
    with pytest.raises(PreconditionError):
        q.pmn(0, 0)
    with pytest.raises(PreconditionError):
        q.walk_end(3, 1)


def test_query_cost_is_constant():
    # one counted step per query regardless of the walk length
    p = preprocess(random_graph(3, n_max=8))
    q = p.queries
    for s, length in pmn_cases(p, cap=200):
        before = q.steps
        q.pmn(s, length)
        assert q.steps - before == 1


@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), min_size=1, max_size=40),
       st.data())
def test_sparse_max(keys, data):
    sm = SparseMax(keys, Meter())
    lo = data.draw(st.integers(0, len(keys) - 1))
    hi = data.draw(st.integers(lo, len(keys) - 1))
    assert keys[sm.query(lo, hi)] == max(keys[lo:hi + 1])
