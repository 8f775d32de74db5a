import pytest
from hypothesis import given

from walkenum.preprocess import (INFINITE, NEG_INFINITE, Kind, branch_sort_key, compute_pi,
                                 preprocess)
from walkenum.testkit import (brute_branch_weight, brute_components, brute_pi, cycle_with_tree,
                              fixtures, g1, three_cycle)

from conftest import graphs, labelled_graphs


def check_against_oracles(g):
    p = preprocess(g)
    assert p.pi == brute_pi(g)
    for v in range(g.n):
        assert [b.edge for b in p.branch_lists[v]] == sorted(
            g.out_adj[v], key=lambda e: branch_sort_key(g, p.pi, e))
        assert [b.walk_len for b in p.branch_lists[v]] == [
            p.pi[g.edges[e.edge].dst] + 1 for e in p.branch_lists[v]]
        de = p.default_edge[v]
        assert de == (p.branch_lists[v][0].edge if g.out_adj[v] else None)
        assert p.w[v] == brute_branch_weight(g, p.pi, v, de)
    anchors = {}
    for v, (kind, anchor, root, d_t, d_c) in enumerate(brute_components(p)):
        c, d = p.components[v], p.depths[v]
        assert (c.kind, c.tree_root, d.d_t, d.d_c) == (kind, root, d_t, d_c)
        assert anchors.setdefault(c.component_id, anchor) == anchor
    return p


def test_g1():
    p = preprocess(g1())
    assert p.pi == [3, 2, 1, 0]
    assert p.default_edge == [0, 1, 2, None]
    assert p.w == [2, NEG_INFINITE, NEG_INFINITE, NEG_INFINITE]
    assert [d.d_t for d in p.depths] == [3, 2, 1, 0]
    assert {c.kind for c in p.components} == {Kind.INDEP_TREE}
    assert {c.tree_root for c in p.components} == {3}
    assert p.order == [0, 1, 2, 3]


def test_three_cycle():
    p = preprocess(three_cycle())
    assert p.pi == [INFINITE] * 3
    (rec,) = p.cycles
    assert rec.length == 3 and len(rec.arr) == 6
    assert [rec.depth[rec.first_occ[v]] for v in rec.arr[:3]] == [6, 5, 4]
    assert all(c.kind is Kind.CYCLE for c in p.components)


def test_cycle_with_tree():
    p = preprocess(cycle_with_tree())
    assert p.components[2].kind is Kind.CYCLE_TREE
    assert p.components[2].tree_root == 0
    assert p.depths[2].d_t == 1
    assert p.depths[2].d_c == p.depths[2].d_t + p.depths[0].d_c
    assert p.depths[0].d_t == 0 and p.depths[1].d_t is None


def test_self_loop_is_infinite():
    assert compute_pi(fixtures()["self_loop"]) == [INFINITE]
    assert compute_pi(fixtures()["single"]) == [0]


@pytest.mark.parametrize("name", sorted(fixtures()))
def test_fixtures(name):
    check_against_oracles(fixtures()[name])


@given(graphs())
def test_random_graphs(g):
    check_against_oracles(g)


@given(labelled_graphs())
def test_labelled_ties_break_by_label(g):
    p = check_against_oracles(g)
    for v in range(g.n):
        lst = p.branch_lists[v]
        for a, b in zip(lst, lst[1:]):
            if a.walk_len == b.walk_len:
                assert g.edges[a.edge].label < g.edges[b.edge].label


def test_parallel_edges_break_by_id():
    p = preprocess(fixtures()["parallel"])
    assert [b.edge for b in p.branch_lists[0]] == [0, 1]


@given(graphs())
def test_order_is_pi_desc_then_id(g):
    p = preprocess(g)
    key = [(-p.pi[v], v) for v in p.order]
    assert key == sorted(key) and sorted(p.order) == list(range(g.n))


def test_default_walk_precondition():
    p = preprocess(g1())
    assert p.default_walk(0, 3) == [0, 1, 2]
    with pytest.raises(ValueError):
        p.default_walk(0, 4)
