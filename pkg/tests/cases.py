"""Shared randomized instance builders for the test-suite."""
import random

from pwapprox.decomp import PathDecomposition
from pwapprox.gen import gen_random_connected
from pwapprox.graph import connected_components, induced_subgraph
from pwapprox.oracle import exact_pathwidth, minfill_td


def component_pd(g, comp) -> PathDecomposition:
    """An optimal path decomposition of G[comp] in the ids of g."""
    order = sorted(comp)
    sub = exact_pathwidth(induced_subgraph(g, comp)).certificate
    return PathDecomposition(tuple(frozenset(order[v] for v in b) for b in sub.bags))


def combine_case(seed: int, along: bool):
    """(g, td, q or q_path, parts, ell) for one randomized combination check."""
    rng = random.Random(seed)
    g = gen_random_connected(rng.randint(3, 12), rng.choice((0.2, 0.3, 0.45)), seed)
    td = minfill_td(g)
    nodes = range(len(td.bags))
    if along:
        q = td.tree_path(rng.choice(nodes), rng.choice(nodes))
        removed = frozenset().union(*(td.bags[x] for x in q))
    else:
        q = rng.choice(nodes)
        removed = td.bags[q]
    parts = {c: component_pd(g, c) for c in connected_components(g, g.vertices - removed)}
    ell = max((pd.width for pd in parts.values()), default=0)
    return g, td, q, parts, ell
