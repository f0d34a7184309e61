"""Text formats for graphs and certificates.

Vertices are written 1-indexed (internal id + 1).  Lines starting with ``c``
are comments, except for the ``c root <id>`` line that records a tree
decomposition root other than bag 1.

* graph: ``p tw <n> <m>`` then one ``<u> <v>`` line per edge
* tree decomposition: ``s td <#bags> <max bag size> <n>``, ``b <id> <v...>``
  lines, then ``<i> <j>`` tree edges
* path decomposition: ``s pd <#bags> <max bag size> <n>`` and bag lines in path order
* witness: ``w <depth> <v...>`` per node in preorder, indented by depth
* subdivision: ``s sub <height>``, ``r <v>`` per branch node in level order, and
  ``e <edge> <v0 ... vk>`` per tree edge (edge e, 1-based, enters node e+1)
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator, Optional

from .decomp import PathDecomposition, TreeDecomposition
from .graph import Graph
from .witness import Subdivision, Witness


class FormatError(ValueError):
    def __init__(self, msg: str, line: Optional[int] = None):
        super().__init__(msg if line is None else f"line {line}: {msg}")


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if parts and parts[0] != "c":
            yield no, parts
        elif len(parts) == 3 and parts[:2] == ["c", "root"]:
            yield no, parts


def _ints(parts: Iterable[str], no: int) -> list[int]:
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(parts)!r}", no) from None


def _vertex(x: int, n: Optional[int], no: int) -> int:
    if x < 1 or (n is not None and x > n):
        raise FormatError(f"vertex {x} out of range", no)
    return x - 1


def _bag_text(bag) -> str:
    return " ".join(str(v + 1) for v in sorted(bag))


# -- graphs --------------------------------------------------------------

def write_graph(g: Graph) -> str:
    out = [f"p tw {g.n} {g.m}"]
    out.extend(f"{u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def read_graph(text: str) -> Graph:
    header = None
    edges = []
    for no, parts in _lines(text):
        if parts[0] == "c":
            continue
        if parts[0] == "p":
            if header is not None:
                raise FormatError("second header line", no)
            if len(parts) != 4 or parts[1] != "tw":
                raise FormatError("header must be 'p tw <n> <m>'", no)
            header = _ints(parts[2:], no)
            continue
        if header is None:
            raise FormatError("edge before header", no)
        if len(parts) != 2:
            raise FormatError("edge lines hold two vertices", no)
        u, v = (_vertex(x, header[0], no) for x in _ints(parts, no))
        if u == v:
            raise FormatError(f"self-loop at {u + 1}", no)
        edges.append((u, v))
    if header is None:
        raise FormatError("missing 'p tw' header")
    n, m = header
    if m != len(edges):
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


# -- decompositions ------------------------------------------------------

def _header(kind: str, bags, n: int) -> str:
    return f"s {kind} {len(bags)} {max((len(b) for b in bags), default=0)} {n}"


def write_td(td: TreeDecomposition, n: int) -> str:
    out = [_header("td", td.bags, n)]
    if td.bags and td.root != 0:
        out.append(f"c root {td.root + 1}")
    out.extend(f"b {i + 1} {_bag_text(b)}".rstrip() for i, b in enumerate(td.bags))
    out.extend(f"{p + 1} {x + 1}" for p, x in td.edges())
    return "\n".join(out) + "\n"


def write_pd(pd: PathDecomposition, n: int) -> str:
    out = [_header("pd", pd.bags, n)]
    out.extend(f"b {i + 1} {_bag_text(b)}".rstrip() for i, b in enumerate(pd.bags))
    return "\n".join(out) + "\n"


def _read_bags(text: str, kind: str):
    header = None
    root = 0
    bags: dict[int, frozenset] = {}
    edges = []
    for no, parts in _lines(text):
        if parts[0] == "c":
            root = _ints(parts[2:], no)[0] - 1
            continue
        if parts[0] == "s":
            if header is not None or len(parts) != 5 or parts[1] != kind:
                raise FormatError(f"header must be 's {kind} <#bags> <max bag> <n>'", no)
            header = _ints(parts[2:], no)
            continue
        if header is None:
            raise FormatError("content before header", no)
        if parts[0] == "b":
            nums = _ints(parts[1:], no)
            if not nums:
                raise FormatError("bag line without id", no)
            i = nums[0]
            if not 1 <= i <= header[0] or i in bags:
                raise FormatError(f"bad or repeated bag id {i}", no)
            bags[i] = frozenset(_vertex(v, header[2], no) for v in nums[1:])
            continue
        if kind != "td" or len(parts) != 2:
            raise FormatError(f"unexpected line {' '.join(parts)!r}", no)
        x, y = _ints(parts, no)
        if not (1 <= x <= header[0] and 1 <= y <= header[0]):
            raise FormatError(f"tree edge ({x}, {y}) names an unknown bag", no)
        edges.append((x - 1, y - 1))
    if header is None:
        raise FormatError(f"missing 's {kind}' header")
    count, width, _ = header
    if sorted(bags) != list(range(1, count + 1)):
        raise FormatError(f"expected bags 1..{count}")
    ordered = [bags[i] for i in range(1, count + 1)]
    if max((len(b) for b in ordered), default=0) != width:
        raise FormatError("header max bag size does not match the bags")
    return ordered, edges, root, header[2]


def read_td(text: str) -> TreeDecomposition:
    bags, edges, root, _ = _read_bags(text, "td")
    if bags and not 0 <= root < len(bags):
        raise FormatError(f"root {root + 1} is not a bag")
    try:
        return TreeDecomposition.from_edges(bags, edges, root=root)
    except ValueError as e:
        raise FormatError(str(e)) from None


def read_pd(text: str) -> PathDecomposition:
    bags, _, _, _ = _read_bags(text, "pd")
    return PathDecomposition(tuple(bags))


# -- witnesses and subdivisions -----------------------------------------

def write_witness(w: Optional[Witness]) -> str:
    if w is None:
        return ""
    return "".join(f"{'  ' * d}w {d} {_bag_text(node.vset)}\n" for d, node in w.walk())


def read_witness(text: str) -> Optional[Witness]:
    nodes: list[tuple[int, frozenset, int]] = []
    for no, parts in _lines(text):
        if parts[0] != "w":
            raise FormatError("witness lines start with 'w'", no)
        nums = _ints(parts[1:], no)
        if not nums or len(nums) < 2:
            raise FormatError("witness line needs a depth and vertices", no)
        nodes.append((nums[0], frozenset(_vertex(v, None, no) for v in nums[1:]), no))
    if not nodes:
        return None
    pos = 0

    def build(depth: int) -> Witness:
        nonlocal pos
        d, vset, no = nodes[pos]
        if d != depth:
            raise FormatError(f"expected depth {depth}, got {d}", no)
        pos += 1
        kids = []
        while pos < len(nodes) and nodes[pos][0] == depth + 1:
            kids.append(build(depth + 1))
        if len(kids) not in (0, 3):
            raise FormatError(f"witness node has {len(kids)} children, not 0 or 3", no)
        return Witness(vset, tuple(kids))

    w = build(0)
    if pos != len(nodes):
        raise FormatError("lines after the witness root's subtree", nodes[pos][2])
    return w


def write_subdivision(sd: Optional[Subdivision]) -> str:
    if sd is None:
        return ""
    out = [f"s sub {sd.height}"]
    out.extend(f"r {v + 1}" for v in sd.branch)
    out.extend(f"e {e + 1} {' '.join(str(v + 1) for v in path)}" for e, path in enumerate(sd.paths))
    return "\n".join(out) + "\n"


def read_subdivision(text: str) -> Optional[Subdivision]:
    branch, paths = [], {}
    height = None
    for no, parts in _lines(text):
        if parts[0] == "s":
            if len(parts) != 3 or parts[1] != "sub":
                raise FormatError("header must be 's sub <height>'", no)
            height = _ints(parts[2:], no)[0]
        elif parts[0] == "r":
            nums = _ints(parts[1:], no)
            if len(nums) != 1:
                raise FormatError("branch lines hold one vertex", no)
            branch.append(_vertex(nums[0], None, no))
        elif parts[0] == "e":
            nums = _ints(parts[1:], no)
            if len(nums) < 3 or nums[0] in paths:
                raise FormatError("bad or repeated path line", no)
            paths[nums[0]] = tuple(_vertex(v, None, no) for v in nums[1:])
        else:
            raise FormatError(f"unexpected line {' '.join(parts)!r}", no)
    if height is None and not branch:
        return None
    if sorted(paths) != list(range(1, len(paths) + 1)):
        raise FormatError("path indices must be 1..#edges")
    sd = Subdivision(tuple(branch), tuple(paths[i] for i in range(1, len(paths) + 1)))
    if height is not None and len(branch) != 2 ** (height + 1) - 1:
        raise FormatError(f"height {height} needs {2 ** (height + 1) - 1} branch vertices")
    return sd


READERS = {"graph": read_graph, "td": read_td, "pd": read_pd,
           "witness": read_witness, "subdivision": read_subdivision}


def load(kind: str, path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e.strerror}") from None
    return READERS[kind](text)
