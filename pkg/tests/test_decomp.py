import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cases import combine_case, component_pd
from pwapprox.decomp import (PathDecomposition, TreeDecomposition, combine_along_path,
                             combine_around_node, concatenate, restrict, restrict_td,
                             validate_path_decomposition, validate_tree_decomposition)
from pwapprox.gen import gen_clique, gen_cycle, gen_path, gen_random_connected
from pwapprox.graph import Graph
from pwapprox.oracle import minfill_td

P = PathDecomposition.of
F = frozenset


def td_of(bags, edges, root=0):
    return TreeDecomposition.from_edges([F(b) for b in bags], edges, root)


def test_td_validation_examples():
    rep = validate_tree_decomposition(gen_clique(3), td_of([{0, 1, 2}], []))
    assert rep.valid and rep.width == 2
    rep = validate_tree_decomposition(gen_path(3), td_of([{0, 1}, {1, 2}], [(0, 1)]))
    assert rep.valid and rep.width == 1
    rep = validate_tree_decomposition(gen_path(3), td_of([{0, 1}, {2}], [(0, 1)]))
    assert not rep.valid and any("edge 2-3" in v for v in rep.violations)


def test_td_subtree_condition():
    g = gen_path(3)
    td = td_of([{0, 1}, {1, 2}, {1}], [(0, 2), (2, 1)])
    assert validate_tree_decomposition(g, td).valid
    td = td_of([{0, 1}, {2}, {1, 2}], [(0, 1), (1, 2)])
    assert any("vertex 2" in v for v in validate_tree_decomposition(g, td).violations)


def test_td_structure_errors():
    with pytest.raises(ValueError):
        TreeDecomposition((F({0}), F({1})), (-1, -1))
    with pytest.raises(ValueError):
        TreeDecomposition.from_edges([F({0}), F({1}), F({2})], [(0, 1)])
    with pytest.raises(ValueError):
        TreeDecomposition((F({0}), F({1}), F({2})), (-1, 2, 1))


def test_pd_validation_examples():
    rep = validate_path_decomposition(gen_path(4), P([{0, 1}, {1, 2}, {2, 3}]))
    assert rep.valid and rep.width == 1
    rep = validate_path_decomposition(gen_cycle(4), P([{0, 1, 3}, {1, 2, 3}]))
    assert rep.valid and rep.width == 2
    rep = validate_path_decomposition(gen_path(2), P([{0}, {1}, {0, 1}, {1}, {0}]))
    assert not rep.valid


def test_restrict():
    assert restrict(P([{0, 1}, {1, 2}]), F({1})) == P([{1}, {1}])
    assert restrict(P([{0, 1}, {1, 2}]), F()) == P([])
    assert restrict(P([{0, 1}, {1, 2}, {2, 3}]), F({0, 3})) == P([{0}, {3}])


def test_restrict_td():
    assert restrict_td(td_of([{0, 1, 2}], []), F({0, 2})).bags == (F({0, 2}),)
    td = td_of([{0, 1}, {1, 2}], [(0, 1)])
    assert restrict_td(td, F({0, 1, 2})) == td
    assert restrict_td(td, F({0, 2})).bags == (F({0}), F({2}))


def test_concatenate():
    assert concatenate([]) == P([])
    assert concatenate([P([{0}]), P([{1}])]) == P([{0}, {1}])
    pds = [P([{0, 1}]), P([{2, 3, 4}]), P([{5, 6}])]
    assert concatenate(pds).width == 2


def test_combine_around_node_examples():
    g = gen_path(3)
    td = td_of([{0, 1}, {1, 2}], [(0, 1)])
    out = combine_around_node(g, td, 0, {F({2}): P([{2}])})
    assert out == P([{0, 1, 2}]) and out.width == 2
    k3 = gen_clique(3)
    assert combine_around_node(k3, td_of([{0, 1, 2}], []), 0, {}) == P([{0, 1, 2}])
    # two triangles sharing vertex 0, bag {0} at q
    bow = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
    td = td_of([{0}, {0, 1, 2}, {0, 3, 4}], [(0, 1), (0, 2)])
    parts = {F({1, 2}): P([{1, 2}]), F({3, 4}): P([{3, 4}])}
    out = combine_around_node(bow, td, 0, parts)
    assert validate_path_decomposition(bow, out).valid and out.width <= 1 + 3


def test_combine_errors():
    g = gen_path(3)
    td = td_of([{0, 1}, {1, 2}], [(0, 1)])
    with pytest.raises(ValueError):
        combine_around_node(g, td, 0, {})
    with pytest.raises(ValueError):
        combine_around_node(g, td, 0, {F({2}): P([{0}])})
    with pytest.raises(ValueError):
        combine_along_path(g, td_of([{0}, {1}, {2}], [(0, 1), (1, 2)]), [0, 2], {})


def test_combine_along_path_examples():
    g = gen_path(5)
    td = td_of([{0, 1}, {1, 2}, {2, 3}, {3, 4}], [(0, 1), (1, 2), (2, 3)])
    out = combine_along_path(g, td, [0, 1, 2, 3], {})
    assert out == P([{0, 1}, {1, 2}, {2, 3}, {3, 4}])
    single = combine_along_path(g, td, [1], {F({0}): P([{0}]), F({3, 4}): P([{3}, {3, 4}])})
    assert single == combine_around_node(g, td, 1, {F({0}): P([{0}]), F({3, 4}): P([{3}, {3, 4}])})


def test_combine_along_caterpillar():
    # spine 0-1-2-3, legs 4,5 on 1 and 6 on 3
    g = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (1, 4), (1, 5), (3, 6)])
    td = minfill_td(g)
    t = td.width + 1
    x = next(i for i, b in enumerate(td.bags) if 0 in b)
    y = next(i for i, b in enumerate(td.bags) if 6 in b)
    q = td.tree_path(x, y)
    covered = F().union(*(td.bags[i] for i in q))
    from pwapprox.graph import connected_components
    parts = {c: component_pd(g, c) for c in connected_components(g, g.vertices - covered)}
    out = combine_along_path(g, td, q, parts)
    ell = max((p.width for p in parts.values()), default=0)
    assert validate_path_decomposition(g, out).valid and out.width <= ell + t
    assert td.bags[x] <= out.bags[0] and td.bags[y] <= out.bags[-1]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_combine_around_node_random(seed):
    g, td, q, parts, ell = combine_case(seed, along=False)
    out = combine_around_node(g, td, q, parts)
    assert validate_path_decomposition(g, out).valid
    assert out.width <= ell + td.width + 1
    assert all(td.bags[q] <= b for b in out.bags)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_combine_along_path_random(seed):
    g, td, q, parts, ell = combine_case(seed, along=True)
    out = combine_along_path(g, td, q, parts)
    assert validate_path_decomposition(g, out).valid
    assert out.width <= ell + td.width + 1
    assert td.bags[q[0]] <= out.bags[0] and td.bags[q[-1]] <= out.bags[-1]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.data())
def test_restrict_td_keeps_validity(seed, data):
    g = gen_random_connected(9, 0.3, seed)
    td = minfill_td(g)
    s = F(data.draw(st.sets(st.integers(0, 8))))
    assert validate_tree_decomposition(g, restrict_td(td, s), within=s).valid
