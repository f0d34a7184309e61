import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pwapprox.decomp import TreeDecomposition, validate_tree_decomposition
from pwapprox.gen import blowup, blowup_td, gen_path, gen_random_connected, gen_tree
from pwapprox.graph import Graph, connected_components, is_connected, neighborhood
from pwapprox.normalize import (ChildNode, ClassificationError, ParentSide, build_normalized,
                                component_complement_classify, lca)
from pwapprox.oracle import minfill_td

F = frozenset


def p3_case():
    g = gen_path(3)
    td = TreeDecomposition.from_edges([F({0, 1}), F({1, 2})], [(0, 1)])
    return g, td, build_normalized(g, td, F({0, 1, 2}))


def star_case():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    td = TreeDecomposition.from_edges([F({0}), F({0, 1}), F({0, 2}), F({0, 3})], [(0, 1), (0, 2), (0, 3)])
    return g, td, build_normalized(g, td, g.vertices)


def test_p3_members():
    _, _, nd = p3_case()
    assert nd.vset == (F({0, 1, 2}), F({2}))
    assert nd.core == (F({0, 1}), F({2}))
    assert nd.bag[1] == F({1, 2}) and nd.bag[0] == F({0, 1})


def test_single_bag():
    g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    nd = build_normalized(g, TreeDecomposition((F({0, 1, 2}),), (-1,)), g.vertices)
    assert nd.vset == (g.vertices,) and len(nd) == 1


def test_star_members():
    _, _, nd = star_case()
    assert nd.vset[0] == F({0, 1, 2, 3})
    assert sorted(nd.vset[1:], key=min) == [F({1}), F({2}), F({3})]
    assert nd.core == (F({0}), F({1}), F({2}), F({3}))
    assert all(nd.parent[i] == 0 for i in (1, 2, 3))


def test_disconnected_rejected():
    g = Graph.from_edges(3, [(0, 1)])
    td = TreeDecomposition.from_edges([F({0, 1}), F({2})], [(0, 1)])
    with pytest.raises(ValueError):
        build_normalized(g, td, g.vertices)


def test_classify_examples():
    g, _, nd = p3_case()
    assert component_complement_classify(nd, g, [0], F({2})) == ChildNode(1)
    g, _, nd = star_case()
    for leaf in (1, 2, 3):
        kind = component_complement_classify(nd, g, [0], F({leaf}))
        assert isinstance(kind, ChildNode) and nd.vset[kind.node] == F({leaf})
    # a component disjoint from the member at the top of Q
    assert component_complement_classify(nd, g, [1], F({2})) == ParentSide()
    with pytest.raises(ClassificationError):
        component_complement_classify(nd, g, [1], F({1}))


def test_lca():
    _, _, nd = star_case()
    assert lca(nd, 2, 2) == 2
    assert lca(nd, 1, 0) == 0
    assert lca(nd, 1, 3) == 0


def instances():
    out = []
    for seed in range(40):
        rng = random.Random(seed)
        g = gen_random_connected(rng.randint(3, 14), rng.choice((0.15, 0.25, 0.4)), seed)
        out.append((g, minfill_td(g)))
    tree = gen_tree("ternary", 2)
    out.append((blowup(tree, 2), blowup_td(tree, 2)))
    out.append((gen_tree("binary", 4), minfill_td(gen_tree("binary", 4))))
    return out


def check_invariants(g, td, s, nd):
    t = td.width + 1
    assert nd.vset[0] == s and len(nd) <= len(s)
    # cores partition s
    assert sum(len(c) for c in nd.core) == len(s) and F().union(*nd.core) == s
    assert all(nd.core)
    for a in range(len(nd)):
        assert is_connected(g, nd.vset[a])
        assert nd.bag[a] == nd.core[a] | (neighborhood(g, nd.vset[a]) & s)
        assert len(nd.bag[a]) <= t
        p = nd.parent[a]
        if p != -1:
            assert nd.vset[a] < nd.vset[p]
        for b in range(a + 1, len(nd)):
            if not nd.is_ancestor(a, b):
                assert nd.vset[a].isdisjoint(nd.vset[b])
                assert not any(w in nd.vset[b] for v in nd.vset[a] for w in g.adj[v])
    assert validate_tree_decomposition(g, nd.as_tree_decomposition(), within=s).valid


@pytest.mark.parametrize("g,td", instances())
def test_invariants(g, td):
    check_invariants(g, td, g.vertices, build_normalized(g, td, g.vertices))


@pytest.mark.parametrize("g,td", instances()[:25])
def test_recursion_coherence(g, td):
    nd = build_normalized(g, td, g.vertices)
    for a in range(len(nd)):
        direct = build_normalized(g, td, nd.vset[a])
        view = nd.subtree(a)
        assert direct.vset == view.vset and direct.bag == view.bag and direct.core == view.core
        assert direct.parent == view.parent and direct.home == view.home
        check_invariants(g, td, nd.vset[a], direct)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.data())
def test_restriction_and_component_coherence(seed, data):
    g = gen_random_connected(10, 0.3, seed)
    td = minfill_td(g)
    nd = build_normalized(g, td, g.vertices)
    a = data.draw(st.integers(0, len(nd) - 1))
    extra = F(data.draw(st.sets(st.integers(0, 9))))
    x = nd.vset[a] | extra
    for comp in connected_components(g, x):
        sub = build_normalized(g, td, comp)
        members = set(sub.vset)
        if nd.vset[a] <= comp:
            assert nd.vset[a] in members
        for b in range(len(nd)):
            for c in connected_components(g, nd.vset[b] & comp):
                assert c in members
