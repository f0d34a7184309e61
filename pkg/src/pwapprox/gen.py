"""Seeded generators: standard families, complete trees and clique blow-ups of trees.

Every generator is deterministic in its arguments.  Randomness comes from a
private ``random.Random(seed)``, never from the global generator.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .decomp import TreeDecomposition
from .graph import Graph, is_connected


@dataclass(frozen=True)
class GenSpec:
    """A named family plus its parameters, as addressed from the command line."""
    family: str
    n: int = 0
    h: int = 0
    t: int = 1
    rows: int = 0
    cols: int = 0
    p: float = 0.0
    kind: str = "binary"
    matching: str = "identity"
    seed: int = 0

    FAMILIES = ("tree", "blowup", "random", "random-connected", "random-tree",
                "path", "cycle", "clique", "grid")

    def __post_init__(self):
        if self.family not in self.FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if min(self.n, self.h, self.rows, self.cols) < 0 or self.t < 1:
            raise ValueError("sizes must be non-negative and t at least 1")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("edge probability must lie in [0, 1]")
        if self.kind not in ("binary", "ternary"):
            raise ValueError("tree kind is binary or ternary")
        if self.matching not in ("identity", "seeded"):
            raise ValueError("matching is identity or seeded")

    def build(self) -> tuple[Graph, Optional[TreeDecomposition]]:
        f = self.family
        if f == "tree":
            return gen_tree(self.kind, self.h), None
        if f == "blowup":
            tree = gen_tree(self.kind, self.h)
            return (blowup(tree, self.t, self.matching, self.seed),
                    blowup_td(tree, self.t, self.matching, self.seed))
        if f == "random":
            return gen_random(self.n, self.p, self.seed), None
        if f == "random-connected":
            return gen_random_connected(self.n, self.p, self.seed), None
        if f == "random-tree":
            return gen_random_tree(self.n, self.seed), None
        if f == "path":
            return gen_path(self.n), None
        if f == "cycle":
            return gen_cycle(self.n), None
        if f == "clique":
            return gen_clique(self.n), None
        return gen_grid(self.rows, self.cols), None


def gen_tree(kind: str, h: int) -> Graph:
    """Complete binary or ternary tree of height h, heap-numbered from the root."""
    if h < 0:
        raise ValueError("height must be non-negative")
    d = {"binary": 2, "ternary": 3}[kind]
    n = (d ** (h + 1) - 1) // (d - 1)
    return Graph.from_edges(n, [((v - 1) // d, v) for v in range(1, n)])


def gen_path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def gen_clique(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def gen_grid(rows: int, cols: int) -> Graph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph.from_edges(rows * cols, edges)


def gen_random(n: int, p: float, seed: int = 0) -> Graph:
    """G(n, p) with a private generator."""
    rng = random.Random(seed)
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)
                                if rng.random() < p])


def gen_random_connected(n: int, p: float, seed: int = 0, tries: int = 10_000) -> Graph:
    """First connected G(n, p) sample from a seeded stream (rejection)."""
    rng = random.Random(seed)
    for _ in range(tries):
        g = gen_random(n, p, rng.randrange(2 ** 63))
        if n == 0 or is_connected(g):
            return g
    raise ValueError(f"no connected G({n}, {p}) sample in {tries} tries")


def gen_random_tree(n: int, seed: int = 0) -> Graph:
    """Random recursive tree: vertex i attaches to a uniform earlier vertex."""
    rng = random.Random(seed)
    return Graph.from_edges(n, [(rng.randrange(i), i) for i in range(1, n)])


def _tree_edges(tree: Graph) -> list[tuple[int, int]]:
    """Edges oriented parent-to-child from root 0; raises for non-trees."""
    if tree.n == 0 or tree.m != tree.n - 1 or not is_connected(tree):
        raise ValueError("input is not a tree")
    parent = {0: -1}
    order = [0]
    for x in order:
        for y in tree.adj[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    return [(parent[y], y) for y in order[1:]]


def _matchings(tree: Graph, t: int, matching: str, seed: int) -> dict[tuple[int, int], list[int]]:
    """Per oriented edge (x, y): clique index of y matched to clique index i of x."""
    rng = random.Random(seed)
    out = {}
    for e in _tree_edges(tree):
        perm = list(range(t))
        if matching == "seeded":
            rng.shuffle(perm)
        elif matching != "identity":
            raise ValueError(f"unknown matching {matching!r}")
        out[e] = perm
    return out


def blowup(tree: Graph, t: int, matching: str = "identity", seed: int = 0) -> Graph:
    """Replace each tree node x by the clique {x*t .. x*t+t-1}, each edge by a perfect matching."""
    if t < 1:
        raise ValueError("t must be at least 1")
    perms = _matchings(tree, t, matching, seed)
    edges = []
    for x in range(tree.n):
        base = x * t
        edges.extend((base + i, base + j) for i in range(t) for j in range(i + 1, t))
    for (x, y), perm in perms.items():
        edges.extend((x * t + i, y * t + perm[i]) for i in range(t))
    return Graph.from_edges(tree.n * t, edges)


def blowup_td(tree: Graph, t: int, matching: str = "identity", seed: int = 0) -> TreeDecomposition:
    """Width-t decomposition of :func:`blowup` (same matching arguments).

    Each tree edge xy becomes a path of bags sliding from clique x to clique
    y: {u_1..u_t, v_1}, {u_2..u_t, v_1, v_2}, ..., {u_t, v_1..v_t}, where
    u_i is matched to v_i.  The node bags are the cliques themselves.
    """
    perms = _matchings(tree, t, matching, seed)
    bags: list[frozenset] = [frozenset(range(x * t, x * t + t)) for x in range(tree.n)]
    parent: list[int] = [-1] + [0] * (tree.n - 1)
    for (x, y), perm in perms.items():
        u = [x * t + i for i in range(t)]
        v = [y * t + perm[i] for i in range(t)]
        prev = x
        for j in range(1, t + 1):
            bags.append(frozenset(u[j - 1:]) | frozenset(v[:j]))
            parent.append(prev)
            prev = len(bags) - 1
        parent[y] = prev
    return TreeDecomposition(tuple(bags), tuple(parent))


def ternary_vertex_bound(t: int, h: int) -> bool:
    """|V(blow-up of the height-h ternary tree)| + 1 <= 3^(h+1) * t."""
    n = t * (3 ** (h + 1) - 1) // 2
    return n + 1 <= 3 ** (h + 1) * t
