import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pwapprox import formats
from pwapprox.decomp import PathDecomposition, TreeDecomposition
from pwapprox.gen import gen_path, gen_random
from pwapprox.oracle import minfill_td
from pwapprox.solve import solve_top
from pwapprox.witness import Subdivision, Witness, extract_binary_subdivision, leaf

F = frozenset


def test_graph_text():
    assert formats.write_graph(gen_path(3)) == "p tw 3 2\n1 2\n2 3\n"
    g = formats.read_graph("c hello\np tw 4 2\n1 2\nc mid\n4 3\n")
    assert g.n == 4 and sorted(g.edges()) == [(0, 1), (2, 3)]


@pytest.mark.parametrize("text", ["", "1 2\n", "p tw 2 1\n1 3\n", "p tw 2 2\n1 2\n",
                                  "p tw 2 1\n1 1\n", "p tw x 1\n", "p td 2 1\n1 2\n"])
def test_graph_errors(text):
    with pytest.raises(formats.FormatError):
        formats.read_graph(text)


def test_td_text_and_root():
    td = TreeDecomposition.from_edges([F({0, 1}), F({1, 2})], [(0, 1)], root=1)
    text = formats.write_td(td, 3)
    assert text.splitlines()[:2] == ["s td 2 2 3", "c root 2"]
    assert formats.read_td(text) == td


@pytest.mark.parametrize("text", ["s td 1 1 2\nb 1 1\nb 1 2\n", "s td 2 1 2\nb 1 1\nb 2 2\n",
                                  "s td 1 2 2\nb 1 1\n", "s td 1 1 2\nb 1 3\n", "s pd 1 1 1\nb 1 1\n"])
def test_td_errors(text):
    with pytest.raises(formats.FormatError):
        formats.read_td(text)


def test_witness_text():
    w = Witness(F({0, 1, 2, 3}), (leaf({1}), leaf({2}), leaf({3})))
    text = formats.write_witness(w)
    assert text == "w 0 1 2 3 4\n  w 1 2\n  w 1 3\n  w 1 4\n"
    assert formats.read_witness(text) == w
    assert formats.read_witness("") is None
    with pytest.raises(formats.FormatError):
        formats.read_witness("w 0 1 2\n  w 1 1\n")


def test_subdivision_text():
    sd = Subdivision((0, 1, 2), ((0, 1), (0, 3, 2)))
    text = formats.write_subdivision(sd)
    assert text == "s sub 1\nr 1\nr 2\nr 3\ne 1 1 2\ne 2 1 4 3\n"
    assert formats.read_subdivision(text) == sd
    with pytest.raises(formats.FormatError):
        formats.read_subdivision("s sub 2\nr 1\n")


graphs = st.builds(gen_random, st.integers(0, 14), st.sampled_from([0.1, 0.3, 0.6]), st.integers(0, 10 ** 6))


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_round_trip_all_kinds(g):
    assert formats.read_graph(formats.write_graph(g)) == g
    td = minfill_td(g)
    assert formats.read_td(formats.write_td(td, g.n)) == td
    r = solve_top(g, td)
    assert formats.read_pd(formats.write_pd(r.pd, g.n)) == r.pd
    assert formats.read_witness(formats.write_witness(r.witness)) == r.witness
    sd = extract_binary_subdivision(g, r.witness) if r.witness else None
    assert formats.read_subdivision(formats.write_subdivision(sd)) == sd


def test_pd_round_trip_empty():
    assert formats.read_pd(formats.write_pd(PathDecomposition(), 0)) == PathDecomposition()
