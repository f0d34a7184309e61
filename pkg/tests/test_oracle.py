import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from networkx.algorithms.approximation import treewidth_min_degree

from pwapprox.decomp import validate_path_decomposition, validate_tree_decomposition
from pwapprox.gen import (blowup, gen_clique, gen_cycle, gen_path, gen_random,
                          gen_random_tree, gen_tree)
from pwapprox.graph import Graph
from pwapprox.oracle import (OracleTooLarge, exact_pathwidth, exact_treewidth, minfill_td,
                             tree_pathwidth)


def naive_pathwidth(g: Graph) -> int:
    """Vertex separation minimised over all orderings (test-only, n <= 8)."""
    best = g.n
    for order in itertools.permutations(range(g.n)):
        seen = set()
        worst = 0
        for v in order:
            seen.add(v)
            worst = max(worst, sum(1 for u in seen if any(w not in seen for w in g.adj[u])))
        best = min(best, worst)
    return best if g.n else -1


def check_pw(g, value):
    res = exact_pathwidth(g)
    assert res.value == value
    rep = validate_path_decomposition(g, res.certificate)
    assert rep.valid and rep.width == value


def check_tw(g, value):
    res = exact_treewidth(g)
    assert res.value == value
    rep = validate_tree_decomposition(g, res.certificate)
    assert rep.valid and rep.width == value


@pytest.mark.parametrize("n", [1, 2, 5, 8])
def test_pw_clique(n):
    check_pw(gen_clique(n), n - 1)


@pytest.mark.parametrize("n", [2, 3, 9, 15])
def test_pw_path(n):
    check_pw(gen_path(n), 1)


@pytest.mark.parametrize("h,value", [(2, 1), (4, 2), (6, 3)])
def test_pw_binary_tree(h, value):
    check_pw(gen_tree("binary", h), value)


def test_tw_examples():
    check_tw(gen_random_tree(12, 4), 1)
    check_tw(gen_path(2), 1)
    for n in (3, 6, 10):
        check_tw(gen_cycle(n), 2)
    check_tw(blowup(gen_tree("ternary", 1), 2), 2)


def test_minfill_examples():
    for g, w in ((gen_random_tree(40, 1), 1), (gen_tree("binary", 5), 1),
                 (gen_clique(5), 4), (gen_cycle(4), 2)):
        td = minfill_td(g)
        rep = validate_tree_decomposition(g, td)
        assert rep.valid and rep.width == w


def test_limits(monkeypatch):
    monkeypatch.setenv("PWAPPROX_PW_LIMIT", "5")
    monkeypatch.setenv("PWAPPROX_TW_LIMIT", "5")
    with pytest.raises(OracleTooLarge):
        exact_pathwidth(gen_cycle(6))
    with pytest.raises(OracleTooLarge):
        exact_treewidth(gen_path(6))
    assert exact_pathwidth(gen_path(6)).value == 1  # forests fall back to the tree routine


def test_empty_graph():
    g = Graph.from_edges(0, [])
    assert exact_pathwidth(g).value == -1 and exact_treewidth(g).value == -1


small = st.builds(gen_random, st.integers(1, 8), st.sampled_from([0.2, 0.4, 0.7]), st.integers(0, 10 ** 6))
medium = st.builds(gen_random, st.integers(1, 11), st.sampled_from([0.2, 0.35, 0.5]), st.integers(0, 10 ** 6))


@settings(max_examples=60, deadline=None)
@given(small)
def test_pw_matches_naive(g):
    assert exact_pathwidth(g).value == naive_pathwidth(g)


@settings(max_examples=60, deadline=None)
@given(medium)
def test_pw_at_least_tw_and_certificates(g):
    pw, tw = exact_pathwidth(g), exact_treewidth(g)
    assert pw.value >= tw.value
    assert validate_path_decomposition(g, pw.certificate).width == pw.value
    assert validate_tree_decomposition(g, tw.certificate).valid
    md = minfill_td(g)
    assert validate_tree_decomposition(g, md).valid and md.width >= tw.value
    nxg = nx.Graph(g.edges())
    nxg.add_nodes_from(range(g.n))
    assert tw.value <= treewidth_min_degree(nxg)[0] or g.m == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 16), st.integers(0, 10 ** 6))
def test_tree_routine_matches_dp(n, seed):
    g = gen_random_tree(n, seed)
    res = tree_pathwidth(g)
    assert res.value == exact_pathwidth(g).value
    rep = validate_path_decomposition(g, res.certificate)
    assert rep.valid and rep.width == res.value
