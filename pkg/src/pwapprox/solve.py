"""Memoized recursive pathwidth approximation with witness certificates.

``Solver.solve(s, b)`` works on the connected induced subgraph G[s] of the
input graph with an upper bound request ``b`` (``INF`` for none) and returns
a :class:`SolveResult`: a height ``h <= b``, a height-h witness for G[s] and,
when ``h < b``, a path decomposition of G[s] of width at most ``t*h + 1``,
where ``t - 1`` is the width of the input tree decomposition.

Recursion goes through an explicit stack of generators: each run yields the
``(vertex set, bound)`` pairs it needs and is resumed with their results, so
nesting depth is not limited by the interpreter stack.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Generator, Optional, Sequence

from .decomp import (PathDecomposition, TreeDecomposition, combine_along_path,
                     combine_around_node, concatenate, restrict,
                     validate_tree_decomposition)
from .graph import Graph, VertexSet, connected_components, neighborhood
from .normalize import (ChildNode, InputIndex, NormalizedDecomposition, ParentSide,
                        build_normalized, component_complement_classify, lca)
from .witness import Witness, leaf

INF = math.inf


class InternalError(RuntimeError):
    """An invariant that holds for every valid input was violated."""


@dataclass(frozen=True)
class SolveResult:
    h: int
    witness: Witness
    pd: Optional[PathDecomposition]
    pruned: bool = field(default=False, compare=False)


@dataclass
class MemoTable:
    entries: dict = field(default_factory=dict)   # (vertex set, bound) -> SolveResult
    key_runs: int = 0
    pruned: int = 0
    primary_calls: int = 0
    secondary_calls: int = 0
    secondary_hits: int = 0        # secondary calls that returned height k


@dataclass(frozen=True)
class GammaEntry:
    piece: tuple[str, int]        # ("node", i) for G[V_i - B_i], ("between", i) for U_{i,i+1}
    comp: VertexSet
    kind: object                  # ChildNode or ParentSide
    secondary: Optional[VertexSet] = None


@dataclass
class KeyRunState:
    """Everything a key run derives from the path ζ_1..ζ_m of minimal nodes.

    Index conventions follow the math: ``zeta[0]`` and ``zeta[m+1]`` are the
    root, ``between[i]`` is U_{i,i+1} for 0 <= i <= m, and ``side``,
    ``blocks``, ``bags`` and ``r_node`` are indexed 1..m (slot 0 unused).
    ``r_between[i]`` is R_{i,i+1} for 1 <= i < m.
    """
    k: int
    m: int
    zeta: list[int]
    U: VertexSet
    between: list[VertexSet]
    side: list[VertexSet]
    blocks: list[VertexSet]
    bags: list[VertexSet]
    q_paths: list[list[int]]
    lcas: list[int]
    r_node: list[VertexSet]
    r_between: list[VertexSet]
    R: VertexSet
    gamma: list[GammaEntry]
    secondary: dict  # secondary component -> ("side", i) or ("between", i), first seen order


@dataclass
class AuxGraph:
    """Minimal-node graph H: ζ and ξ adjacent iff a U-path joins them."""
    U: VertexSet
    adj: list[set[int]]                # over positions in Z
    comp_touch: list[tuple[VertexSet, tuple[int, ...]]]   # U-component, touched nodes of T

    def is_path(self) -> bool:
        edges = sum(len(a) for a in self.adj) // 2
        return max(len(a) for a in self.adj) <= 2 and edges == len(self.adj) - 1

    def path_order(self, mins: Sequence[int]) -> list[int]:
        ends = [i for i, a in enumerate(self.adj) if len(a) == 1]
        start = min(ends, key=lambda i: mins[i])
        order = [start]
        prev = -1
        while len(order) < len(self.adj):
            nxt = next(j for j in sorted(self.adj[order[-1]]) if j != prev)
            prev = order[-1]
            order.append(nxt)
        return order

    def branching_triple(self) -> tuple[int, int, int]:
        for c, a in enumerate(self.adj):
            if len(a) >= 3:
                x, y, z = sorted(a)[:3]
                return x, y, z
        return 0, 1, 2  # H is a cycle; any three of its nodes work


def auxiliary_graph(nd: NormalizedDecomposition, g: Graph, Z: Sequence[int]) -> AuxGraph:
    s = nd.vertices
    owner = {}
    for pos, z in enumerate(Z):
        for v in nd.vset[z]:
            owner[v] = pos
    U = s - frozenset(owner)
    adj: list[set[int]] = [set() for _ in Z]
    comp_touch = []
    for comp in connected_components(g, U):
        touch = sorted({owner[w] for v in comp for w in g.adj[v] if w in owner})
        comp_touch.append((comp, tuple(Z[i] for i in touch)))
        for i in touch:
            for j in touch:
                if i != j:
                    adj[i].add(j)
    return AuxGraph(U, adj, comp_touch)


def branching_triple(g: Graph, s: VertexSet) -> Optional[tuple[int, int, int]]:
    """Three vertices pairwise linked avoiding the third, if G[s] is not a path."""
    edges = 0
    for v in sorted(s):
        nb = [w for w in g.adj[v] if w in s]
        if len(nb) >= 3:
            return nb[0], nb[1], nb[2]
        edges += len(nb)
    if edges // 2 >= len(s):
        a, b, c = sorted(s)[:3]
        return a, b, c
    return None


def path_decomposition_of_path(g: Graph, s: VertexSet) -> PathDecomposition:
    """Width-1 decomposition of a path G[s] (a single bag for one vertex)."""
    if len(s) == 1:
        return PathDecomposition((s,))
    ends = [v for v in sorted(s) if sum(1 for w in g.adj[v] if w in s) <= 1]
    walk = [ends[0]]
    seen = {ends[0]}
    while len(walk) < len(s):
        nxt = [w for w in g.adj[walk[-1]] if w in s and w not in seen]
        if len(nxt) != 1:
            raise InternalError("vertex set does not induce a path")
        seen.add(nxt[0])
        walk.append(nxt[0])
    return PathDecomposition(tuple(frozenset(p) for p in zip(walk, walk[1:])))


def build_key_run_state(nd: NormalizedDecomposition, g: Graph, Z: Sequence[int], k: int,
                        aux: Optional[AuxGraph] = None) -> KeyRunState:
    """Derive the key-run sets for minimal nodes Z listed in path order of H."""
    s = nd.vertices
    m = len(Z)
    if m < 2:
        raise ValueError("a key run needs at least two minimal nodes")
    if aux is None:
        aux = auxiliary_graph(nd, g, Z)
    zeta = [0] + list(Z) + [0]
    pos = {z: i + 1 for i, z in enumerate(Z)}
    between: list[set[int]] = [set() for _ in range(m + 1)]
    side: list[set[int]] = [set() for _ in range(m + 1)]
    for comp, touch in aux.comp_touch:
        idx = sorted(pos[z] for z in touch)
        if len(idx) == 2 and idx[1] == idx[0] + 1:
            between[idx[0]] |= comp
        elif idx == [1]:
            between[0] |= comp
        elif idx == [m]:
            between[m] |= comp
        elif len(idx) == 1:
            side[idx[0]] |= comp
        else:
            raise InternalError(f"U-component touches minimal nodes {idx}; H is not a path")
    U = aux.U
    bags = [frozenset()] + [nd.bag[z] for z in Z]
    side_f = [frozenset(x) for x in side]
    between_f = [frozenset(x) for x in between]
    blocks = [frozenset()] + [nd.vset[Z[i - 1]] | bags[i] | side_f[i] for i in range(1, m + 1)]
    q_paths = [nd.tree_path(zeta[i], zeta[i + 1]) for i in range(m + 1)]
    lcas = [lca(nd, zeta[i], zeta[i + 1]) for i in range(m + 1)]

    r_node = [frozenset()] + [U & bags[i] for i in range(1, m + 1)]
    for i in range(1, m + 1):
        if r_node[i] != neighborhood(g, nd.vset[zeta[i]]) & s:
            raise InternalError(f"R_{i} differs from the neighbourhood of ζ_{i}")

    sigma_cache: dict[int, tuple[dict[int, int], list[frozenset]]] = {}

    def sigma_components(sigma: int):
        if sigma not in sigma_cache:
            where: dict[int, int] = {}
            touch: list[frozenset] = []
            for ci, comp in enumerate(connected_components(g, U & nd.vset[sigma])):
                for v in comp:
                    where[v] = ci
                touch.append(frozenset(j for j in range(1, m + 1)
                                       if any(w in nd.vset[zeta[j]] for v in comp for w in g.adj[v])))
            sigma_cache[sigma] = (where, touch)
        return sigma_cache[sigma]

    r_between = [frozenset() for _ in range(m + 1)]
    for i in range(1, m):
        top = lcas[i]
        keep = set()
        for v in sorted(U & nd.bag[top]):
            sigma = nd.home[v]
            if not nd.is_ancestor(sigma, top):
                raise InternalError(f"vertex {v} of the bag at ζ_{i},{i + 1} has its core below it")
            where, touch = sigma_components(sigma)
            reach = touch[where[v]]
            if i in reach and i + 1 in reach:
                keep.add(v)
        r_between[i] = frozenset(keep)
    R = frozenset().union(*r_node, *r_between)

    gamma: list[GammaEntry] = []
    secondary: dict[VertexSet, tuple[str, int]] = {}

    def classify(piece, comps, q_path, admissible, hat_of):
        for comp in comps:
            kind = component_complement_classify(nd, g, q_path, comp)
            hat = None
            if isinstance(kind, ParentSide):
                if not admissible:
                    raise InternalError(f"parent component {sorted(comp)} in piece {piece}")
                hat = hat_of(comp)
                secondary.setdefault(hat, (("side" if piece[0] == "node" else "between"), piece[1]))
            gamma.append(GammaEntry(piece, comp, kind, hat))

    for i in range(m + 1):
        if i >= 1:
            comps = connected_components(g, blocks[i] - bags[i])

            def same(comp, i=i):
                if not comp <= side_f[i] - bags[i]:
                    raise InternalError(f"parent component {sorted(comp)} leaves U_{i}")
                return comp
            classify(("node", i), comps, [zeta[i]], 1 < i < m, same)
        covered = frozenset().union(*(nd.bag[q] for q in q_paths[i]))
        comps = connected_components(g, between_f[i] - covered)
        hat_map: dict[int, VertexSet] = {}
        if 1 <= i < m and comps:
            cut = r_node[i] | r_between[i] | r_node[i + 1]
            for hc in connected_components(g, between_f[i] - cut):
                for v in hc:
                    hat_map[v] = hc

        def widen(comp, hat_map=hat_map):
            hat = hat_map.get(min(comp))
            if hat is None or not comp <= hat:
                raise InternalError(f"no secondary component contains {sorted(comp)}")
            return hat
        classify(("between", i), comps, q_paths[i], 1 <= i < m, widen)

    return KeyRunState(k=k, m=m, zeta=zeta, U=U, between=between_f, side=side_f,
                       blocks=blocks, bags=bags, q_paths=q_paths, lcas=lcas,
                       r_node=r_node, r_between=r_between, R=R, gamma=gamma,
                       secondary=secondary)


Request = tuple  # (vertex set, bound)


class Solver:
    """Runs the recursion for one input graph and input tree decomposition."""

    def __init__(self, g: Graph, td: TreeDecomposition, check_input: bool = True):
        if check_input:
            report = validate_tree_decomposition(g, td)
            if not report.valid:
                raise ValueError(f"invalid input tree decomposition: {report.violations[0]}")
        self.g = g
        self.td = td
        self.t = td.width + 1
        self.index = InputIndex.of(g, td)
        self.memo = MemoTable()
        self.key_states: dict = {}      # vertex set -> KeyRunState, kept for inspection
        self._nd: dict[VertexSet, NormalizedDecomposition] = {}
        self._hint: dict[VertexSet, tuple[NormalizedDecomposition, int]] = {}
        self._td_of: dict[VertexSet, TreeDecomposition] = {}

    def normalized(self, s: VertexSet) -> NormalizedDecomposition:
        nd = self._nd.get(s)
        if nd is None:
            hint = self._hint.pop(s, None)
            nd = hint[0].subtree(hint[1]) if hint else build_normalized(self.g, self.td, s, self.index)
            self._nd[s] = nd
        return nd

    def _tree(self, nd: NormalizedDecomposition) -> TreeDecomposition:
        td = self._td_of.get(nd.vertices)
        if td is None:
            td = self._td_of[nd.vertices] = nd.as_tree_decomposition()
        return td

    def solve(self, s, b=INF) -> SolveResult:
        s = frozenset(s)
        entries = self.memo.entries
        key = (s, b)
        if key in entries:
            return entries[key]
        stack = [(key, self._run(s, b))]
        value = None
        while stack:
            key, gen = stack[-1]
            try:
                req = gen.send(value)
            except StopIteration as stop:
                entries[key] = value = stop.value
                stack.pop()
                continue
            if req in entries:
                value = entries[req]
            else:
                stack.append((req, self._run(*req)))
                value = None
        return entries[(s, b)]

    # -- one run -----------------------------------------------------------

    def _run(self, s: VertexSet, b) -> Generator[Request, SolveResult, SolveResult]:
        g = self.g
        if b == 0:
            self.memo.pruned += 1
            return SolveResult(0, leaf(s), None, pruned=True)
        nd = self.normalized(s)
        if len(nd) == 1:
            return self._flat(s, b, nd, {})

        results: dict[int, SolveResult] = {}
        for a in range(1, len(nd)):
            self._hint.setdefault(nd.vset[a], (nd, a))
            self.memo.primary_calls += 1
            r = yield (nd.vset[a], b)
            results[a] = r
            if r.h == b:
                self.memo.pruned += 1
                return SolveResult(b, r.witness.rerooted(s), None, pruned=True)

        k = max(r.h for r in results.values())
        if k == 0:
            return self._flat(s, b, nd, results)
        first = next(a for a in range(1, len(nd)) if results[a].h == k)
        k_below = [False] * len(nd)
        for a in range(len(nd) - 1, 0, -1):
            if results[a].h == k or k_below[a]:
                k_below[nd.parent[a]] = True
        Z = [a for a in range(1, len(nd)) if results[a].h == k and not k_below[a]]

        if len(Z) == 1:
            q_path = nd.tree_path(0, Z[0])
            pd = self._along(nd, q_path, results, s, k)
            return SolveResult(k, results[first].witness.rerooted(s), pd)

        aux = auxiliary_graph(nd, g, Z)
        if not aux.is_path():
            trio = aux.branching_triple()
            w = Witness(s, tuple(results[Z[i]].witness for i in trio))
            return SolveResult(k + 1, w, self._around_root(nd, results, s, b, k + 1))

        mins = [min(nd.vset[z]) for z in Z]
        ordered = [Z[i] for i in aux.path_order(mins)]
        state = build_key_run_state(nd, g, ordered, k, aux)
        self.memo.key_runs += 1
        self.key_states[s] = state

        for e in state.gamma:
            if isinstance(e.kind, ChildNode) and results[e.kind.node].h >= k:
                raise InternalError(f"child component {sorted(e.comp)} has height {results[e.kind.node].h}")

        sec: dict[VertexSet, SolveResult] = {}
        for hat, (where, i) in state.secondary.items():
            self.memo.secondary_calls += 1
            r = yield (hat, k)
            sec[hat] = r
            if r.h == k:
                self.memo.secondary_hits += 1
                z = state.zeta
                ends = (z[i - 1], z[i + 1]) if where == "side" else (z[i], z[i + 1])
                w = Witness(s, (results[ends[0]].witness, r.witness, results[ends[1]].witness))
                return SolveResult(k + 1, w, self._around_root(nd, results, s, b, k + 1))

        parts: dict[VertexSet, PathDecomposition] = {}
        for e in state.gamma:
            if isinstance(e.kind, ChildNode):
                parts[e.comp] = results[e.kind.node].pd
            else:
                parts[e.comp] = restrict(sec[e.secondary].pd, e.comp)
        td = self._tree(nd)
        pieces = []
        for i in range(state.m + 1):
            if i >= 1:
                pieces.append(combine_around_node(g, td, state.zeta[i], parts,
                                                  within=state.blocks[i], check=False))
            pieces.append(combine_along_path(g, td, state.q_paths[i], parts,
                                             within=state.between[i], home=nd.home, check=False))
        return SolveResult(k, results[first].witness.rerooted(s), concatenate(pieces))

    # -- outcomes ----------------------------------------------------------

    def _flat(self, s, b, nd, results) -> SolveResult:
        """All proper members have height 0 (or there are none)."""
        trio = branching_triple(self.g, s)
        if trio is None:
            return SolveResult(0, leaf(s), path_decomposition_of_path(self.g, s))
        w = Witness(s, tuple(leaf([v]) for v in trio))
        if len(nd) == 1:
            return SolveResult(1, w, PathDecomposition((s,)) if 1 < b else None)
        return SolveResult(1, w, self._around_root(nd, results, s, b, 1))

    def _around_root(self, nd, results, s, b, h) -> Optional[PathDecomposition]:
        if h >= b:
            return None
        parts = {}
        for comp in connected_components(self.g, s - nd.bag[0]):
            kind = component_complement_classify(nd, self.g, [0], comp)
            if not isinstance(kind, ChildNode):
                raise InternalError(f"component {sorted(comp)} of G - B_root is not a member")
            parts[comp] = results[kind.node].pd
        return combine_around_node(self.g, self._tree(nd), 0, parts, within=s, check=False)

    def _along(self, nd, q_path, results, s, k) -> PathDecomposition:
        covered = frozenset().union(*(nd.bag[q] for q in q_path))
        parts = {}
        for comp in connected_components(self.g, s - covered):
            kind = component_complement_classify(nd, self.g, q_path, comp)
            if not isinstance(kind, ChildNode) or results[kind.node].h >= k:
                raise InternalError(f"component {sorted(comp)} off the path to ζ is not a lower member")
            parts[comp] = results[kind.node].pd
        return combine_along_path(self.g, self._tree(nd), q_path, parts, within=s,
                                  home=nd.home, check=False)


@dataclass
class TopResult:
    h: int
    t: int
    components: list[tuple[VertexSet, SolveResult]]
    pd: PathDecomposition
    witness: Optional[Witness]
    solver: Solver

    @property
    def vacuous(self) -> bool:
        return self.witness is None


def solve_top(g: Graph, td: TreeDecomposition) -> TopResult:
    """Solve every connected component with no bound and join the results."""
    solver = Solver(g, td)
    comps = []
    for c in connected_components(g):
        comps.append((c, solver.solve(c, INF)))
    pd = concatenate(r.pd for _, r in comps)
    if not comps:
        return TopResult(0, solver.t, [], pd, None, solver)
    h = max(r.h for _, r in comps)
    witness = next(r.witness for _, r in comps if r.h == h)
    return TopResult(h, solver.t, comps, pd, witness, solver)


@dataclass(frozen=True)
class SubproblemStats:
    n: int
    subproblems: int
    key_runs: int
    pruned: int
    primary_calls: int
    secondary_calls: int
    finite_bounds: tuple[int, ...]

    @property
    def max_bound(self) -> Optional[int]:
        return max(self.finite_bounds, default=None)

    @property
    def budget(self) -> int:
        """n * (ceil(log_3 n) + 2)."""
        c = 0
        while 3 ** c < self.n:
            c += 1
        return self.n * (c + 2)


def subproblem_stats(memo: MemoTable, n: int) -> SubproblemStats:
    bounds = sorted({b for _, b in memo.entries if b != INF})
    return SubproblemStats(n=n, subproblems=len(memo.entries), key_runs=memo.key_runs,
                           pruned=memo.pruned, primary_calls=memo.primary_calls,
                           secondary_calls=memo.secondary_calls,
                           finite_bounds=tuple(int(b) for b in bounds))
