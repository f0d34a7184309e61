"""Pathwidth witnesses (complete ternary trees of vertex sets) and subdivisions.

A height-h witness for a connected graph is ``<V; W1, W2, W3>`` where the Wi
are height-(h-1) witnesses of pairwise disjoint connected vertex sets, any
two of which are joined by a path avoiding the third.  A height-0 witness is
just ``<V>``.  Any graph with such a witness has pathwidth at least h and
contains a subdivision of the complete binary tree of height h; the latter is
built by :func:`extract_binary_subdivision`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .graph import Graph, VertexSet, bfs_tree, is_connected, u_path_connected, vertex_name


@dataclass(frozen=True)
class Witness:
    vset: VertexSet
    children: tuple["Witness", ...] = ()

    def __post_init__(self):
        if len(self.children) not in (0, 3):
            raise ValueError("a witness node has zero or three children")

    @property
    def height(self) -> int:
        h = 0
        w = self
        while w.children:
            w = w.children[0]
            h += 1
        return h

    def rerooted(self, vset: VertexSet) -> "Witness":
        """Same certificate for a connected supergraph on ``vset``."""
        return Witness(frozenset(vset), self.children)

    def walk(self, depth: int = 0):
        """Yield ``(depth, node)`` in preorder."""
        yield depth, self
        for c in self.children:
            yield from c.walk(depth + 1)


def leaf(vset) -> Witness:
    return Witness(frozenset(vset))


def validate_witness(g: Graph, w: Witness) -> Union[int, list[str]]:
    """Height of a valid witness, otherwise the list of violations."""
    problems: list[str] = []
    heights: set[int] = set()

    def check(node: Witness, depth: int) -> None:
        s = node.vset
        shown = [vertex_name(g, v) for v in sorted(s)[:6]]
        name = f"node {shown}{'...' if len(s) > 6 else ''} at depth {depth}"
        if any(not 0 <= v < g.n for v in s):
            problems.append(f"{name}: unknown vertex")
            return
        if not s or not is_connected(g, s):
            problems.append(f"{name}: induced subgraph is not connected")
        if not node.children:
            heights.add(depth)
            return
        parts = [c.vset for c in node.children]
        shape_ok = True
        for i, p in enumerate(parts):
            if not p <= s:
                problems.append(f"{name}: child {i} is not a subset")
                shape_ok = False
            for j in range(i + 1, 3):
                if not p.isdisjoint(parts[j]):
                    problems.append(f"{name}: children {i} and {j} intersect")
                    shape_ok = False
        if shape_ok:
            for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
                if not _linked(g, s, parts[i], parts[j], parts[k]):
                    problems.append(f"{name}: children {i} and {j} are not linked avoiding child {k}")
        for c in node.children:
            check(c, depth + 1)

    check(w, 0)
    if len(heights) > 1:
        problems.append(f"leaves at different depths {sorted(heights)}")
    return problems if problems else heights.pop()


def _linked(g: Graph, s: VertexSet, a: VertexSet, b: VertexSet, avoid: VertexSet) -> bool:
    if not a or not b:
        return False
    return u_path_connected(g, s - a - b - avoid, a, b)


@dataclass(frozen=True)
class Subdivision:
    """Embedding of the complete binary tree of height h.

    Abstract tree nodes use heap numbering (root 0, children 2i+1 and 2i+2);
    ``branch[i]`` is the graph vertex of node i.  Edge e (0-based) joins node
    ``e // 2`` to node ``e + 1`` and ``paths[e]`` runs from the parent's
    branch vertex to the child's.
    """
    branch: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]

    @property
    def height(self) -> int:
        return (len(self.branch) + 1).bit_length() - 2


def validate_subdivision(g: Graph, sd: Subdivision, h: int) -> list[str]:
    """Violations, naming paths 1-based and vertices by external label."""

    def lab(v: int) -> int:
        return vertex_name(g, v)

    problems = []
    nodes = 2 ** (h + 1) - 1
    if len(sd.branch) != nodes:
        problems.append(f"expected {nodes} branch vertices, got {len(sd.branch)}")
    if len(sd.paths) != max(nodes - 1, 0):
        problems.append(f"expected {nodes - 1} paths, got {len(sd.paths)}")
    if problems:
        return problems
    if len(set(sd.branch)) != nodes:
        problems.append("branch vertices are not distinct")
    for v in sd.branch:
        if not 0 <= v < g.n:
            problems.append(f"branch vertex {lab(v)} is not in the graph")
    if problems:
        return problems
    branch = set(sd.branch)
    owner: dict[int, int] = {}
    for e, path in enumerate(sd.paths):
        want = (sd.branch[e // 2], sd.branch[e + 1])
        if len(path) < 2 or (path[0], path[-1]) != want:
            problems.append(f"path {e + 1} does not join branch vertices {lab(want[0])} and {lab(want[1])}")
            continue
        if len(set(path)) != len(path):
            problems.append(f"path {e + 1} repeats a vertex")
        for x, y in zip(path, path[1:]):
            if not (0 <= x < g.n and 0 <= y < g.n) or not g.has_edge(x, y):
                problems.append(f"path {e + 1} uses non-edge {lab(x)}-{lab(y)}")
        for v in path[1:-1]:
            if v in branch:
                problems.append(f"path {e + 1} passes through branch vertex {lab(v)}")
            elif v in owner:
                problems.append(f"paths {owner[v] + 1} and {e + 1} share internal vertex {lab(v)}")
            else:
                owner[v] = e
    return problems


@dataclass
class _Embedded:
    root: int
    legs: list  # [(path from root to child root, _Embedded)]


def _grow(g: Graph, w: Witness, v: int) -> tuple[_Embedded, list[int]]:
    """Subdivision of height h inside G[w.vset] plus a path from v to its root.

    The path meets the subdivision only at the root.
    """
    if not w.children:
        return _Embedded(v, []), [v]
    s = w.vset
    parts = [c.vset for c in w.children]
    chosen: Optional[tuple[int, int, int]] = None
    for j in (2, 0, 1):
        a, b = (i for i in range(3) if i != j)
        free = s - parts[a] - parts[b]
        if v in parts[j] or (v in free and u_path_connected(g, free - parts[j] - {v}, frozenset([v]), parts[j])):
            chosen = (a, b, j)
            break
    if chosen is None:
        raise ValueError(f"vertex {v} reaches no child set; witness is invalid")
    a, b, _ = chosen
    free = s - parts[a] - parts[b]
    order, parent = bfs_tree(g, v, free)

    def entry(target: VertexSet) -> tuple[int, int]:
        for x in order:
            for y in g.adj[x]:
                if y in target:
                    return x, y
        raise ValueError("child set unreachable; witness is invalid")

    def trail(x: int) -> list[int]:
        out = [x]
        while out[-1] != v:
            out.append(parent[out[-1]])
        return out[::-1]

    xa, va = entry(parts[a])
    xb, vb = entry(parts[b])
    ta, tb = trail(xa), trail(xb)
    split = 0
    while split + 1 < min(len(ta), len(tb)) and ta[split + 1] == tb[split + 1]:
        split += 1
    stem = ta[:split + 1]
    r = stem[-1]
    legs = []
    for t, vi, i in ((ta, va, a), (tb, vb, b)):
        sub, sub_stem = _grow(g, w.children[i], vi)
        legs.append((t[split:] + sub_stem, sub))
    return _Embedded(r, legs), stem


def extract_binary_subdivision(g: Graph, w: Witness, anchor: Optional[int] = None) -> Subdivision:
    """Complete binary tree subdivision of height ``w.height`` inside G[w.vset]."""
    if anchor is None:
        anchor = min(w.vset)
    top, _ = _grow(g, w, anchor)
    h = w.height
    branch = [0] * (2 ** (h + 1) - 1)
    paths: list[tuple[int, ...]] = [()] * (len(branch) - 1)
    stack = [(0, top)]
    while stack:
        i, node = stack.pop()
        branch[i] = node.root
        for side, (path, sub) in enumerate(node.legs):
            c = 2 * i + 1 + side
            paths[c - 1] = tuple(path)
            stack.append((c, sub))
    return Subdivision(tuple(branch), tuple(paths))
