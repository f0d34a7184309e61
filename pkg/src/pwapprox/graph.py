"""Immutable simple graphs and the subset queries the rest of the package needs.

Vertices are dense ids ``0..n-1``.  Every graph also carries an external label
per vertex (positive integers, ``id + 1`` for freshly parsed graphs) so that
induced subgraphs can be written back out in the namespace of the original
input.  Vertex sets are plain ``frozenset`` objects; all routines that produce
an ordering sort by internal id so results are reproducible.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import AbstractSet, Iterable, Optional, Sequence

VertexSet = frozenset  # frozenset[int]; equality and hashing are extensional


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, self.n + 1)))
        elif len(self.labels) != self.n or len(set(self.labels)) != self.n:
            raise ValueError("labels must be a bijection on the vertices")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[int] = ()) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs), tuple(labels))

    @property
    def vertices(self) -> VertexSet:
        return frozenset(range(self.n))

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adj[u]
        # adjacency lists are sorted; short lists dominate in practice
        return v in a

    def label_of(self, v: int) -> int:
        return self.labels[v]


def vertex_name(g: Graph, v: int) -> int:
    """External label used in messages (``v + 1`` for ids outside the graph)."""
    return g.labels[v] if 0 <= v < g.n else v + 1


def _check_ids(g: Graph, s: Iterable[int]) -> None:
    for v in s:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex id {v} out of range for n={g.n}")


def induced_subgraph(g: Graph, s: AbstractSet[int]) -> Graph:
    """Return G[s] renumbered to ``0..|s|-1`` in increasing id order.

    External labels are carried over, so ``label_of`` on the result names the
    same vertex as in ``g``.
    """
    _check_ids(g, s)
    order = sorted(s)
    new_id = {v: i for i, v in enumerate(order)}
    adj = tuple(tuple(new_id[w] for w in g.adj[v] if w in new_id) for v in order)
    return Graph(len(order), adj, tuple(g.labels[v] for v in order))


def connected_components(g: Graph, s: Optional[AbstractSet[int]] = None) -> list[VertexSet]:
    """Components of G[s], sorted by minimum vertex; ``[]`` when s is empty."""
    if s is None:
        s = range(g.n)
    else:
        _check_ids(g, s)
    s = s if isinstance(s, (set, frozenset)) else set(s)
    seen: set[int] = set()
    comps = []
    for v in sorted(s):
        if v in seen:
            continue
        seen.add(v)
        comp = [v]
        stack = [v]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if y in s and y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: Graph, s: Optional[AbstractSet[int]] = None) -> bool:
    return len(connected_components(g, s)) == 1


def neighborhood(g: Graph, s: AbstractSet[int]) -> VertexSet:
    """N_G(s): vertices outside s adjacent to something in s."""
    _check_ids(g, s)
    out = set()
    for v in s:
        for w in g.adj[v]:
            if w not in s:
                out.add(w)
    return frozenset(out)


def _check_endpoints(u: AbstractSet[int], a: AbstractSet[int], b: AbstractSet[int]) -> None:
    if not a or not b:
        raise ValueError("endpoint sets must be non-empty")
    if not (u.isdisjoint(a) and u.isdisjoint(b) and a.isdisjoint(b)):
        raise ValueError("u, a and b must be pairwise disjoint")


def u_path_connected(g: Graph, u: AbstractSet[int], a: AbstractSet[int],
                     b: AbstractSet[int]) -> bool:
    """True iff some path from a to b has all its internal vertices in u."""
    _check_endpoints(u, a, b)
    seen = set(a)
    stack = list(a)
    while stack:
        x = stack.pop()
        for y in g.adj[x]:
            if y in b:
                return True
            if y in u and y not in seen:
                seen.add(y)
                stack.append(y)
    return False


def find_u_path(g: Graph, u: AbstractSet[int], a: AbstractSet[int],
                b: AbstractSet[int]) -> Optional[list[int]]:
    """Breadth-first a-to-b path with internal vertices in u, or None.

    Sources are seeded in increasing id order and neighbours scanned in
    increasing order, so the returned path is deterministic.
    """
    _check_endpoints(u, a, b)
    parent: dict[int, int] = {}
    queue = deque(sorted(a))
    seen = set(a)
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if y in b:
                path = [y, x]
                while path[-1] in parent:
                    path.append(parent[path[-1]])
                return path[::-1]
            if y in u and y not in seen:
                seen.add(y)
                parent[y] = x
                queue.append(y)
    return None


def bfs_tree(g: Graph, root: int, within: AbstractSet[int]) -> tuple[list[int], dict[int, int]]:
    """BFS order and parent map of the component of ``root`` in G[within]."""
    order = [root]
    parent: dict[int, int] = {}
    seen = {root}
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for y in g.adj[x]:
            if y in within and y not in seen:
                seen.add(y)
                parent[y] = x
                order.append(y)
    return order, parent
