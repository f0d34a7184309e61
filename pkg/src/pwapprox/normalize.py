"""Normalized tree decompositions of connected induced subgraphs.

For an input graph with a rooted input tree decomposition, the normalized
decomposition of G[s] has one node per member of the laminar family
``Sub(G[s])``: the connected components of G[V'_x] over all input nodes x,
where V'_x holds the vertices of s that occur only in bags below-or-at x.

A vertex v of s lies in V'_x exactly when the topmost input node holding v is
in the subtree of x, so one post-order sweep with a union-find over s yields
every member together with its parent in the laminar tree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import AbstractSet, Optional, Sequence

from .decomp import TreeDecomposition
from .graph import Graph, VertexSet


class ClassificationError(RuntimeError):
    """A component fits neither case of the complement classification."""


@dataclass(frozen=True)
class InputIndex:
    """Per-input-decomposition data shared by every normalized build."""
    top: tuple[int, ...]          # topmost input node holding each vertex
    tin: tuple[int, ...]          # preorder entry time per input node
    tout: tuple[int, ...]         # exclusive exit time
    post: tuple[int, ...]         # input nodes in post-order

    @classmethod
    def of(cls, g: Graph, td: TreeDecomposition) -> "InputIndex":
        n_nodes = len(td.bags)
        tin = [0] * n_nodes
        tout = [0] * n_nodes
        post = []
        clock = 0
        if n_nodes:
            stack = [(td.root, False)]
            while stack:
                x, done = stack.pop()
                if done:
                    tout[x] = clock
                    post.append(x)
                    continue
                tin[x] = clock
                clock += 1
                stack.append((x, True))
                for c in reversed(td.children[x]):
                    stack.append((c, False))
        top = [-1] * g.n
        for x, bag in enumerate(td.bags):
            for v in bag:
                if top[v] == -1 or td.depth[x] < td.depth[top[v]]:
                    top[v] = x
        if -1 in top:
            raise ValueError(f"vertex {top.index(-1)} is in no bag of the input decomposition")
        return cls(tuple(top), tuple(tin), tuple(tout), tuple(post))


@dataclass(frozen=True)
class NormalizedDecomposition:
    """Nodes are numbered in preorder (root 0), siblings by minimum vertex."""
    vset: tuple[VertexSet, ...]
    core: tuple[VertexSet, ...]
    bag: tuple[VertexSet, ...]
    parent: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    depth: tuple[int, ...]
    size: tuple[int, ...]                       # subtree node counts
    index: dict = field(repr=False, compare=False)   # vset -> node
    home: dict = field(repr=False, compare=False)    # vertex -> node whose core holds it

    root = 0

    def __len__(self) -> int:
        return len(self.vset)

    @property
    def vertices(self) -> VertexSet:
        return self.vset[0]

    def as_tree_decomposition(self) -> TreeDecomposition:
        return TreeDecomposition(self.bag, self.parent)

    def is_ancestor(self, a: int, b: int) -> bool:
        """a is b or lies above b."""
        return a <= b < a + self.size[a]

    def tree_path(self, a: int, b: int) -> list[int]:
        up, down = [a], [b]
        while up[-1] != down[-1]:
            if self.depth[up[-1]] >= self.depth[down[-1]]:
                up.append(self.parent[up[-1]])
            else:
                down.append(self.parent[down[-1]])
        return up + down[-2::-1]

    def subtree(self, a: int) -> "NormalizedDecomposition":
        """Normalized decomposition of the member at node a.

        Members below a are exactly the members of the smaller graph, so this
        is a slice of the preorder with bags cut down to V(a).
        """
        if a == 0:
            return self
        lo, hi = a, a + self.size[a]
        keep = self.vset[a]
        vset = self.vset[lo:hi]
        parent = tuple(-1 if i == lo else p - lo for i, p in enumerate(self.parent[lo:hi], lo))
        return NormalizedDecomposition(
            vset=vset,
            core=self.core[lo:hi],
            bag=tuple(b if b <= keep else b & keep for b in self.bag[lo:hi]),
            parent=parent,
            children=tuple(tuple(c - lo for c in ch) for ch in self.children[lo:hi]),
            depth=tuple(d - self.depth[lo] for d in self.depth[lo:hi]),
            size=self.size[lo:hi],
            index={s: i for i, s in enumerate(vset)},
            home={v: self.home[v] - lo for v in keep},
        )


def build_normalized(g: Graph, td: TreeDecomposition, s: AbstractSet[int],
                     index: Optional[InputIndex] = None) -> NormalizedDecomposition:
    """Normalized decomposition of G[s] from td restricted to s.

    Raises ValueError when G[s] is not connected.
    """
    if not s:
        raise ValueError("vertex set is empty")
    if index is None:
        index = InputIndex.of(g, td)
    s = frozenset(s)
    top, tin, tout = index.top, index.tin, index.tout
    groups: dict[int, list[int]] = {}
    for v in s:
        groups.setdefault(top[v], []).append(v)

    dsu: dict[int, int] = {}
    members: dict[int, list[int]] = {}
    absorbed: dict[int, list[int]] = {}   # member ids merged into a root since its last record
    current: dict[int, int] = {}          # root -> member id equal to its set, if any

    def find(x: int) -> int:
        r = x
        while dsu[r] != r:
            r = dsu[r]
        while dsu[x] != r:
            dsu[x], x = r, dsu[x]
        return r

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra == rb:
            return
        if len(members[ra]) < len(members[rb]):
            ra, rb = rb, ra
        dsu[rb] = ra
        members[ra].extend(members.pop(rb))
        merged = absorbed[ra]
        for r in (ra, rb):
            mid = current.pop(r, None)
            if mid is not None:
                merged.append(mid)
        merged.extend(absorbed.pop(rb))

    m_vset: list[VertexSet] = []
    m_core: list[VertexSet] = []
    m_node: list[int] = []
    m_kids: list[list[int]] = []
    for x in index.post:
        new = groups.get(x)
        if not new:
            continue
        for v in new:
            dsu[v] = v
            members[v] = [v]
            absorbed[v] = []
        lo, hi = tin[x], tout[x]
        for v in new:
            for w in g.adj[v]:
                if w in s and lo <= tin[top[w]] < hi:
                    union(v, w)
        by_root: dict[int, list[int]] = {}
        for v in new:
            by_root.setdefault(find(v), []).append(v)
        for r, core in by_root.items():
            mid = len(m_vset)
            m_vset.append(frozenset(members[r]))
            m_core.append(frozenset(core))
            m_node.append(x)
            m_kids.append(absorbed[r])
            absorbed[r] = []
            current[r] = mid

    root_mid = len(m_vset) - 1
    if m_vset[root_mid] != s:
        raise ValueError("G[s] is not connected")

    # preorder renumbering, siblings by minimum vertex
    order: list[int] = []
    parent: list[int] = []
    depth: list[int] = []
    stack = [(root_mid, -1, 0)]
    mins = [min(c) for c in m_vset]
    while stack:
        mid, p, d = stack.pop()
        order.append(mid)
        parent.append(p)
        depth.append(d)
        me = len(order) - 1
        for k in sorted(m_kids[mid], key=lambda c: mins[c], reverse=True):
            stack.append((k, me, d + 1))
    count = len(order)
    children: list[list[int]] = [[] for _ in range(count)]
    for i, p in enumerate(parent):
        if p != -1:
            children[p].append(i)
    size = [1] * count
    for i in range(count - 1, 0, -1):
        size[parent[i]] += size[i]

    vset = tuple(m_vset[mid] for mid in order)
    core = tuple(m_core[mid] for mid in order)
    home = {}
    for i, c in enumerate(core):
        for v in c:
            home[v] = i
    bags = []
    for i, mid in enumerate(order):
        members_i = vset[i]
        nbrs = set()
        # the neighbourhood of a member lies inside the input bag where it was formed
        for v in td.bags[m_node[mid]]:
            if v in s and v not in members_i and any(w in members_i for w in g.adj[v]):
                nbrs.add(v)
        bags.append(core[i] | nbrs)
    return NormalizedDecomposition(
        vset=vset, core=core, bag=tuple(bags), parent=tuple(parent),
        children=tuple(tuple(c) for c in children), depth=tuple(depth),
        size=tuple(size), index={v: i for i, v in enumerate(vset)}, home=home,
    )


def lca(nd: NormalizedDecomposition, a: int, b: int) -> int:
    while a != b:
        if nd.depth[a] >= nd.depth[b]:
            a = nd.parent[a]
        else:
            b = nd.parent[b]
    return a


@dataclass(frozen=True)
class ChildNode:
    node: int


@dataclass(frozen=True)
class ParentSide:
    pass


def component_complement_classify(nd: NormalizedDecomposition, g: Graph,
                                  q_path: Sequence[int], comp: AbstractSet[int]):
    """Classify a component of G minus the bags of a subtree Q.

    Returns ``ChildNode(a)`` when the component is itself a member hanging
    below Q, and ``ParentSide()`` when it avoids the member at the top of Q.
    """
    on_q = set(q_path)
    node = nd.index.get(frozenset(comp))
    if node is not None and node not in on_q and nd.parent[node] in on_q:
        return ChildNode(node)
    top = min(q_path, key=lambda x: nd.depth[x])
    if nd.vset[top].isdisjoint(comp):
        return ParentSide()
    raise ClassificationError(
        f"component {sorted(comp)} is neither a child member of the path "
        f"nor disjoint from node {top}")
