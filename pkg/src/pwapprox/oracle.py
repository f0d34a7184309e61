"""Exact pathwidth and treewidth for small graphs, and a min-fill decomposition.

Both exact routines are subset dynamic programs over bitmasks and record a
choice per subset so an optimal certificate can be rebuilt.  Forests larger
than the pathwidth limit go to an exact tree routine based on the branch
characterisation: a tree has pathwidth at least k+1 iff some vertex has three
branches of pathwidth at least k.

Size limits default to 20 (pathwidth) and 18 (treewidth) and can be raised
or lowered with ``PWAPPROX_PW_LIMIT`` and ``PWAPPROX_TW_LIMIT``.
"""
from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from typing import Sequence, Union

from .decomp import PathDecomposition, TreeDecomposition
from .graph import Graph, connected_components

PW_LIMIT = 20
TW_LIMIT = 18


class OracleTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    value: int
    certificate: Union[PathDecomposition, TreeDecomposition]


def _limit(var: str, default: int) -> int:
    raw = os.environ.get(var)
    return int(raw) if raw else default


def _masks(g: Graph) -> list[int]:
    return [sum(1 << w for w in g.adj[v]) for v in range(g.n)]


def is_forest(g: Graph) -> bool:
    return g.m == g.n - len(connected_components(g))


def pd_from_order(g: Graph, order: Sequence[int]) -> PathDecomposition:
    """Bag i is v_i plus every earlier vertex that still has a later neighbour."""
    pos = {v: i for i, v in enumerate(order)}
    last = {v: max([pos[w] for w in g.adj[v]] + [pos[v]]) for v in order}
    bags = []
    open_: set[int] = set()
    for i, v in enumerate(order):
        bags.append(frozenset(open_ | {v}))
        open_.add(v)
        open_ = {u for u in open_ if last[u] > i}
    return PathDecomposition(tuple(bags))


def exact_pathwidth(g: Graph) -> OracleResult:
    """Minimum vertex separation number over all orderings, with a certificate."""
    limit = _limit("PWAPPROX_PW_LIMIT", PW_LIMIT)
    if g.n > limit:
        if is_forest(g):
            return tree_pathwidth(g)
        raise OracleTooLarge(f"{g.n} vertices exceeds the pathwidth oracle limit {limit}")
    n = g.n
    if n == 0:
        return OracleResult(-1, PathDecomposition())
    nb = _masks(g)
    full = (1 << n) - 1
    cost = [0] * (1 << n)
    choice = [0] * (1 << n)
    for s in range(1, 1 << n):
        rest = full & ~s
        boundary = 0
        bits = s
        best = n + 1
        pick = -1
        while bits:
            low = bits & -bits
            v = low.bit_length() - 1
            bits ^= low
            if nb[v] & rest:
                boundary += 1
            c = cost[s ^ low]
            if c < best:
                best, pick = c, v
        cost[s] = max(best, boundary)
        choice[s] = pick
    order = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s ^= 1 << v
    order.reverse()
    pd = pd_from_order(g, order)
    return OracleResult(cost[full], pd)


def _q_size(nb: Sequence[int], s: int, v: int) -> int:
    """|Q(s, v)|: vertices outside s + v reachable from v through s."""
    comp = 1 << v
    frontier = comp
    reach = 0
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        x = nb[low.bit_length() - 1]
        reach |= x
        new = x & s & ~comp
        comp |= new
        frontier |= new
    return bin(reach & ~comp & ~s).count("1")


def td_from_elimination_order(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Tree decomposition whose bags are v plus its later neighbours in the fill graph.

    Nodes are numbered in reverse elimination order so the last eliminated
    vertex is the root (node 0); further roots of a disconnected graph hang
    off node 0.
    """
    n = len(order)
    if n == 0:
        return TreeDecomposition((), ())
    pos = {v: i for i, v in enumerate(order)}
    nbrs = [set(g.adj[v]) for v in range(g.n)]
    node = {v: n - 1 - i for i, v in enumerate(order)}
    bags: list[frozenset] = [frozenset()] * n
    parent = [-1] * n
    for v in order:
        later = nbrs[v]
        bags[node[v]] = frozenset(later | {v})
        if later:
            nxt = min(later, key=pos.__getitem__)
            parent[node[v]] = node[nxt]
            for a in later:
                nbrs[a].discard(v)
                nbrs[a] |= later - {a}
        elif node[v] != 0:
            parent[node[v]] = 0
    return TreeDecomposition(tuple(bags), tuple(parent))


def exact_treewidth(g: Graph) -> OracleResult:
    """Elimination-ordering subset DP: TW(S) = min_v max(TW(S - v), |Q(S - v, v)|)."""
    limit = _limit("PWAPPROX_TW_LIMIT", TW_LIMIT)
    if g.n > limit:
        raise OracleTooLarge(f"{g.n} vertices exceeds the treewidth oracle limit {limit}")
    n = g.n
    if n == 0:
        return OracleResult(-1, TreeDecomposition((), ()))
    nb = _masks(g)
    size = 1 << n
    tw = [0] * size
    choice = [0] * size
    tw[0] = -1
    for s in range(1, size):
        best = n + 1
        pick = -1
        bits = s
        while bits:
            low = bits & -bits
            bits ^= low
            prev = tw[s ^ low]
            if prev >= best:
                continue
            v = low.bit_length() - 1
            val = max(prev, _q_size(nb, s ^ low, v))
            if val < best:
                best, pick = val, v
        tw[s] = best
        choice[s] = pick
    order = []
    s = size - 1
    while s:
        v = choice[s]
        order.append(v)
        s ^= 1 << v
    order.reverse()
    return OracleResult(tw[size - 1], td_from_elimination_order(g, order))


def minfill_order(g: Graph) -> list[int]:
    """Greedy min-fill elimination ordering, ties broken by smallest id."""
    nbrs = [set(g.adj[v]) for v in range(g.n)]

    def fill(v: int) -> int:
        nv = nbrs[v]
        d = len(nv)
        inside = sum(len(nbrs[u] & nv) for u in nv) // 2
        return d * (d - 1) // 2 - inside

    current = [fill(v) for v in range(g.n)]
    heap = [(current[v], v) for v in range(g.n)]
    heapq.heapify(heap)
    done = [False] * g.n
    order = []
    while heap:
        f, v = heapq.heappop(heap)
        if done[v] or f != current[v]:
            continue
        done[v] = True
        order.append(v)
        nv = nbrs[v]
        for a in nv:
            nbrs[a].discard(v)
            nbrs[a] |= nv - {a}
        touched = set(nv)
        for a in nv:
            touched |= nbrs[a]
        touched -= {v}
        for u in touched:
            if not done[u]:
                f2 = fill(u)
                if f2 != current[u]:
                    current[u] = f2
                    heapq.heappush(heap, (f2, u))
        nbrs[v] = set()
    return order


def minfill_td(g: Graph) -> TreeDecomposition:
    return td_from_elimination_order(g, minfill_order(g))


# -- trees ---------------------------------------------------------------


def _min_size(k: int) -> int:
    """Fewest vertices of a tree with pathwidth at least k."""
    return 1 if k == 0 else (5 * 3 ** (k - 1) - 1) // 2


class _TreeOracle:
    def __init__(self, g: Graph):
        self.g = g
        self.memo: dict[tuple[frozenset, int], bool] = {}

    def branches(self, x: frozenset, v: int) -> list[frozenset]:
        return connected_components(self.g, x - {v})

    def ge(self, x: frozenset, k: int) -> bool:
        """Pathwidth of the tree G[x] is at least k."""
        if k <= 0:
            return bool(x)
        if len(x) < _min_size(k):
            return False
        if k == 1:
            return True
        key = (x, k)
        if key not in self.memo:
            need = _min_size(k - 1)
            self.memo[key] = any(
                sum(1 for b in self.branches(x, v) if len(b) >= need and self.ge(b, k - 1)) >= 3
                for v in sorted(x) if sum(1 for w in self.g.adj[v] if w in x) >= 3)
        return self.memo[key]

    def value(self, x: frozenset) -> int:
        k = 0
        while self.ge(x, k + 1):
            k += 1
        return k

    def spine(self, x: frozenset, k: int) -> list[int]:
        """A path whose removal leaves only branches of pathwidth below k."""
        g = self.g
        ends = sorted(v for v in x if sum(1 for w in g.adj[v] if w in x) <= 1)
        for a in ends:
            parent = {a: -1}
            order = [a]
            for y in order:
                for z in g.adj[y]:
                    if z in x and z not in parent:
                        parent[z] = y
                        order.append(z)
            for b in ends:
                if b < a:
                    continue
                path = [b]
                while parent[path[-1]] != -1:
                    path.append(parent[path[-1]])
                rest = x - frozenset(path)
                if not any(self.ge(c, k) for c in connected_components(g, rest)):
                    return path
        raise RuntimeError("no spine found; tree oracle is inconsistent")

    def decompose(self, x: frozenset) -> list[frozenset]:
        k = self.value(x)
        if k == 0:
            return [x]
        path = self.spine(x, k)
        on = set(path)
        bags: list[frozenset] = []
        for i, p in enumerate(path):
            for c in connected_components(self.g, x - on):
                if any(w == p for v in c for w in self.g.adj[v]):
                    bags.extend(b | {p} for b in self.decompose(c))
            bags.append(frozenset(path[i:i + 2]))
        return bags


def tree_pathwidth(g: Graph) -> OracleResult:
    """Exact pathwidth of a forest of any size, with a certificate."""
    if not is_forest(g):
        raise ValueError("graph is not a forest")
    oracle = _TreeOracle(g)
    bags: list[frozenset] = []
    value = -1
    for comp in connected_components(g):
        value = max(value, oracle.value(comp))
        bags.extend(oracle.decompose(comp))
    return OracleResult(value, PathDecomposition(tuple(bags)))
