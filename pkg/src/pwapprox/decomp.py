"""Tree and path decompositions: types, validation, restriction and combination."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import AbstractSet, Iterable, Mapping, Optional, Sequence

from .graph import Graph, VertexSet, connected_components, vertex_name


@dataclass(frozen=True)
class TreeDecomposition:
    """Rooted tree decomposition; ``parent[root] == -1``.

    Node ids are ``0..len(bags)-1``.  Bags may be empty (restriction produces
    them).  The constructor only checks that ``parent`` describes a single
    rooted tree; graph-related conditions are checked by
    :func:`validate_tree_decomposition`.
    """
    bags: tuple[VertexSet, ...]
    parent: tuple[int, ...]
    children: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    depth: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.bags)
        if len(self.parent) != n:
            raise ValueError("parent and bags differ in length")
        roots = [x for x, p in enumerate(self.parent) if p == -1]
        if n and len(roots) != 1:
            raise ValueError(f"expected exactly one root, found {len(roots)}")
        kids: list[list[int]] = [[] for _ in range(n)]
        for x, p in enumerate(self.parent):
            if p != -1:
                if not 0 <= p < n or p == x:
                    raise ValueError(f"bad parent {p} for node {x}")
                kids[p].append(x)
        depth = [-1] * n
        if n:
            depth[roots[0]] = 0
            stack = [roots[0]]
            while stack:
                x = stack.pop()
                for c in kids[x]:
                    depth[c] = depth[x] + 1
                    stack.append(c)
            if min(depth) < 0:
                raise ValueError("parent pointers contain a cycle")
        object.__setattr__(self, "children", tuple(tuple(k) for k in kids))
        object.__setattr__(self, "depth", tuple(depth))

    @classmethod
    def from_edges(cls, bags: Sequence[Iterable[int]], edges: Iterable[tuple[int, int]],
                   root: int = 0) -> "TreeDecomposition":
        n = len(bags)
        nbrs: list[list[int]] = [[] for _ in range(n)]
        count = 0
        for x, y in edges:
            if not (0 <= x < n and 0 <= y < n) or x == y:
                raise ValueError(f"bad tree edge ({x}, {y})")
            nbrs[x].append(y)
            nbrs[y].append(x)
            count += 1
        if n and count != n - 1:
            raise ValueError(f"{n} nodes need {n - 1} tree edges, got {count}")
        parent = [-2] * n
        if n:
            parent[root] = -1
            stack = [root]
            while stack:
                x = stack.pop()
                for y in sorted(nbrs[x]):
                    if parent[y] == -2:
                        parent[y] = x
                        stack.append(y)
            if -2 in parent:
                raise ValueError("tree edges do not connect all nodes")
        return cls(tuple(frozenset(b) for b in bags), tuple(parent))

    @property
    def root(self) -> int:
        return self.parent.index(-1)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(p, x) for x, p in enumerate(self.parent) if p != -1]

    def tree_path(self, x: int, y: int) -> list[int]:
        """Node sequence of the tree path from x to y."""
        up, down = [x], [y]
        while up[-1] != down[-1]:
            if self.depth[up[-1]] >= self.depth[down[-1]]:
                up.append(self.parent[up[-1]])
            else:
                down.append(self.parent[down[-1]])
        return up + down[-2::-1]


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[VertexSet, ...] = ()

    @classmethod
    def of(cls, bags: Iterable[Iterable[int]]) -> "PathDecomposition":
        return cls(tuple(frozenset(b) for b in bags))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def __len__(self) -> int:
        return len(self.bags)


@dataclass
class ValidationReport:
    width: int
    violations: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


def _coverage_violations(g: Graph, bags: Sequence[AbstractSet[int]],
                         within: Optional[AbstractSet[int]]) -> list[str]:
    """Messages name bags 1-based and vertices by external label."""

    def lab(v: int) -> int:
        return vertex_name(g, v)

    scope = range(g.n) if within is None else within
    out = []
    seen = set()
    for i, bag in enumerate(bags):
        for v in bag:
            if not 0 <= v < g.n:
                out.append(f"bag {i + 1} holds unknown vertex {lab(v)}")
            elif within is not None and v not in within:
                out.append(f"bag {i + 1} holds vertex {lab(v)} outside the graph")
            seen.add(v)
    for v in sorted(scope):
        if v not in seen:
            out.append(f"vertex {lab(v)} is in no bag")
    if out:
        return out
    home: dict[int, list[int]] = {}
    for i, bag in enumerate(bags):
        for v in bag:
            home.setdefault(v, []).append(i)
    for u in sorted(scope):
        for v in g.adj[u]:
            if u < v and (within is None or v in within):
                if not any(v in bags[i] for i in home[u]):
                    out.append(f"edge {lab(u)}-{lab(v)} is in no bag")
    return out


def validate_tree_decomposition(g: Graph, td: TreeDecomposition,
                                within: Optional[AbstractSet[int]] = None) -> ValidationReport:
    """Check td against G (or G[within]).  Violations are returned, not raised."""
    report = ValidationReport(td.width)
    if not td.bags:
        if (g.n if within is None else len(within)):
            report.violations.append("decomposition has no nodes")
        return report
    report.violations.extend(_coverage_violations(g, td.bags, within))
    # occurrences of v form a subtree iff exactly one node holding v has a
    # parent not holding v
    tops: dict[int, int] = {}
    for x, bag in enumerate(td.bags):
        p = td.parent[x]
        for v in bag:
            if p == -1 or v not in td.bags[p]:
                tops[v] = tops.get(v, 0) + 1
    for v in sorted(tops):
        if tops[v] > 1:
            report.violations.append(f"bags holding vertex {vertex_name(g, v)} are not connected in the tree")
    return report


def validate_path_decomposition(g: Graph, pd: PathDecomposition,
                                within: Optional[AbstractSet[int]] = None) -> ValidationReport:
    report = ValidationReport(pd.width)
    report.violations.extend(_coverage_violations(g, pd.bags, within))
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    count: dict[int, int] = {}
    for i, bag in enumerate(pd.bags):
        for v in bag:
            first.setdefault(v, i)
            last[v] = i
            count[v] = count.get(v, 0) + 1
    for v in sorted(count):
        if last[v] - first[v] + 1 != count[v]:
            report.violations.append(f"bags holding vertex {vertex_name(g, v)} are not consecutive")
    return report


def restrict(pd: PathDecomposition, s: AbstractSet[int]) -> PathDecomposition:
    """Intersect every bag with s, dropping bags that become empty."""
    bags = (b & s for b in pd.bags)
    return PathDecomposition(tuple(b for b in bags if b))


def restrict_td(td: TreeDecomposition, s: AbstractSet[int]) -> TreeDecomposition:
    """Same tree, bags intersected with s (empty bags kept)."""
    return TreeDecomposition(tuple(b & s for b in td.bags), td.parent)


def concatenate(pds: Iterable[PathDecomposition]) -> PathDecomposition:
    return PathDecomposition(tuple(b for pd in pds for b in pd.bags))


def _dedupe(bags: Iterable[VertexSet]) -> tuple[VertexSet, ...]:
    out: list[VertexSet] = []
    for b in bags:
        if b and (not out or out[-1] != b):
            out.append(b)
    return tuple(out)


def _part(g: Graph, parts: Mapping[VertexSet, PathDecomposition], comp: VertexSet,
          check: bool) -> PathDecomposition:
    try:
        pd = parts[comp]
    except KeyError:
        raise ValueError(f"no path decomposition supplied for component {sorted(comp)}") from None
    if check:
        rep = validate_path_decomposition(g, pd, within=comp)
        if not rep.valid:
            raise ValueError(f"invalid decomposition for component {sorted(comp)}: "
                             f"{rep.violations[0]}")
    return pd


def _wrap(pds: Sequence[PathDecomposition], bag: VertexSet) -> list[VertexSet]:
    if not pds:
        return [bag]
    return [b | bag for pd in pds for b in pd.bags]


def combine_around_node(g: Graph, td: TreeDecomposition, q: int,
                        parts: Mapping[VertexSet, PathDecomposition],
                        within: Optional[AbstractSet[int]] = None,
                        check: bool = True) -> PathDecomposition:
    """Path decomposition of G[within] holding bag q in every bag.

    ``parts`` must map every component of G[within] - B_q to a path
    decomposition of it.  Components are laid out by increasing minimum
    vertex and B_q is added to each of their bags.
    """
    scope = frozenset(range(g.n)) if within is None else frozenset(within)
    bq = td.bags[q] & scope
    comps = connected_components(g, scope - bq)
    pds = [_part(g, parts, c, check) for c in comps]
    return PathDecomposition(_dedupe(_wrap(pds, bq)))


def combine_along_path(g: Graph, td: TreeDecomposition, q_path: Sequence[int],
                       parts: Mapping[VertexSet, PathDecomposition],
                       within: Optional[AbstractSet[int]] = None,
                       home: Optional[Mapping[int, int]] = None,
                       check: bool = True) -> PathDecomposition:
    """Path decomposition of G[within] with B_x in the first bag and B_y in the last.

    ``q_path`` is the tree path x..y.  Each component of G[within] minus the
    union of the path's bags hangs off exactly one path node q (the subtree
    T_q holding it); its decomposition is widened by B_q and placed in the
    block of q.  ``home`` optionally maps a vertex to some node whose bag
    holds it, which saves a scan over all bags.
    """
    if not q_path:
        raise ValueError("empty tree path")
    for a, b in zip(q_path, q_path[1:]):
        if td.parent[a] != b and td.parent[b] != a:
            raise ValueError(f"nodes {a} and {b} are not adjacent in the tree")
    scope = frozenset(range(g.n)) if within is None else frozenset(within)
    on_path = set(q_path)
    if len(on_path) != len(q_path):
        raise ValueError("tree path repeats a node")
    top = min(q_path, key=lambda x: td.depth[x])
    restricted = {q: td.bags[q] & scope for q in q_path}
    covered = frozenset().union(*restricted.values())
    comps = connected_components(g, scope - covered)
    if comps and home is None:
        home = {}
        for x, bag in enumerate(td.bags):
            for v in bag:
                home.setdefault(v, x)
    hanging: dict[int, list[VertexSet]] = {q: [] for q in q_path}
    for c in comps:
        z = home[min(c)]
        while z != -1 and z not in on_path:
            z = td.parent[z]
        hanging[top if z == -1 else z].append(c)
    bags: list[VertexSet] = []
    for q in q_path:
        pds = [_part(g, parts, c, check) for c in hanging[q]]
        bags.extend(_wrap(pds, restricted[q]))
    return PathDecomposition(_dedupe(bags))
