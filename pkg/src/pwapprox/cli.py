"""Command-line entry point: ``pwapprox solve|validate|oracle|gen``.

Exit codes: 0 ok, 1 certificate invalid, 2 input error, 3 internal error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import formats
from .decomp import validate_path_decomposition, validate_tree_decomposition
from .gen import GenSpec
from .graph import Graph
from .normalize import ClassificationError
from .oracle import OracleTooLarge, exact_pathwidth, exact_treewidth, minfill_td
from .solve import InternalError, solve_top, subproblem_stats
from .witness import extract_binary_subdivision, validate_subdivision, validate_witness

OK, INVALID, INPUT_ERROR, INTERNAL_ERROR = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass
class RunReport:
    graph: str
    n: int
    m: int
    h: int
    td_width: int
    pd_width: int
    components: list[dict] = field(default_factory=list)
    files: dict = field(default_factory=dict)
    counters: dict = field(default_factory=dict)
    wall_time: float = 0.0


def _load(kind: str, path):
    try:
        return formats.load(kind, path)
    except formats.FormatError as e:
        raise InputError(f"{path}: {e}") from None


def solve_file(graph_path: str, td_path: Optional[str] = None, td_source: str = "minfill",
               out: Optional[str] = None) -> RunReport:
    """Solve one graph file and write its .pd, .wit and .sub files."""
    start = time.perf_counter()
    g: Graph = _load("graph", graph_path)
    if td_path:
        td = _load("td", td_path)
        if len(td.bags) and max(max(b, default=-1) for b in td.bags) >= g.n:
            raise InputError(f"{td_path}: decomposition names vertices beyond n={g.n}")
        report = validate_tree_decomposition(g, td)
        if not report.valid:
            raise InputError(f"{td_path}: invalid tree decomposition: {report.violations[0]}")
    elif td_source == "exact":
        try:
            td = exact_treewidth(g).certificate
        except OracleTooLarge as e:
            raise InputError(str(e)) from None
    else:
        td = minfill_td(g)

    result = solve_top(g, td)
    sub = extract_binary_subdivision(g, result.witness) if result.witness else None
    # self-check: a certificate failing here is a bug, not bad input
    if not validate_path_decomposition(g, result.pd).valid or result.pd.width > result.t * result.h + 1:
        raise InternalError("emitted path decomposition does not validate")
    if result.witness is not None:
        if validate_witness(g, result.witness) != result.h or validate_subdivision(g, sub, result.h):
            raise InternalError("emitted witness or subdivision does not validate")

    prefix = Path(out) if out else Path(graph_path).with_suffix("")
    files = {"pd": str(prefix) + ".pd", "witness": str(prefix) + ".wit",
             "subdivision": str(prefix) + ".sub"}
    Path(files["pd"]).write_text(formats.write_pd(result.pd, g.n))
    Path(files["witness"]).write_text(formats.write_witness(result.witness))
    Path(files["subdivision"]).write_text(formats.write_subdivision(sub))

    stats = subproblem_stats(result.solver.memo, g.n)
    counters = asdict(stats)
    counters["budget"] = stats.budget
    return RunReport(
        graph=str(graph_path), n=g.n, m=g.m, h=result.h, td_width=td.width,
        pd_width=result.pd.width,
        components=[{"min_vertex": min(c) + 1, "size": len(c), "h": r.h}
                    for c, r in result.components],
        files=files, counters=counters,
        wall_time=round(time.perf_counter() - start, 6))


def _solve_job(args: tuple) -> dict:
    try:
        return asdict(solve_file(*args))
    except InputError as e:
        return {"graph": args[0], "error": str(e), "exit": INPUT_ERROR}
    except (InternalError, ClassificationError) as e:
        return {"graph": args[0], "error": str(e), "exit": INTERNAL_ERROR}


def cmd_solve(ns) -> int:
    if ns.batch:
        folder = Path(ns.batch)
        if not folder.is_dir():
            raise InputError(f"{folder} is not a directory")
        jobs = [(str(p), None, ns.td_source, None) for p in sorted(folder.glob("*.gr"))]
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            reports = list(pool.map(_solve_job, jobs))
        print(json.dumps(reports, indent=2))
        return max((r.get("exit", OK) for r in reports), default=OK)
    if not ns.graph:
        raise InputError("a graph file or --batch directory is required")
    report = solve_file(ns.graph, ns.td, ns.td_source, ns.out)
    print(json.dumps(asdict(report), indent=2))
    return OK


def cmd_validate(ns) -> int:
    g = _load("graph", ns.graph)
    cert = _load(ns.kind if ns.kind != "witness" else "witness", ns.certificate)
    problems: list[str]
    detail = ""
    if ns.kind in ("td", "pd"):
        check = validate_tree_decomposition if ns.kind == "td" else validate_path_decomposition
        if any(v >= g.n for b in cert.bags for v in b):
            raise InputError("certificate names vertices beyond the graph")
        report = check(g, cert)
        problems, detail = report.violations, f"width {report.width}"
    elif ns.kind == "witness":
        if cert is None:
            problems = [] if g.n == 0 else ["empty witness for a non-empty graph"]
        else:
            res = validate_witness(g, cert)
            problems = res if isinstance(res, list) else []
            if not problems and ns.height is not None and res != ns.height:
                problems = [f"witness height {res}, expected {ns.height}"]
            detail = "" if problems else f"height {res}"
    else:
        if cert is None:
            problems = [] if g.n == 0 else ["empty subdivision for a non-empty graph"]
        else:
            h = cert.height if ns.height is None else ns.height
            problems = validate_subdivision(g, cert, h)
            detail = f"height {h}"
    if problems:
        print(f"INVALID {ns.kind}: {len(problems)} violation(s)")
        for p in problems:
            print(f"  - {p}")
        return INVALID
    print(f"VALID {ns.kind} {detail}".rstrip())
    return OK


def cmd_oracle(ns) -> int:
    g = _load("graph", ns.graph)
    try:
        res = exact_pathwidth(g) if ns.kind == "pw" else exact_treewidth(g)
    except OracleTooLarge as e:
        raise InputError(str(e)) from None
    if ns.out:
        text = (formats.write_pd(res.certificate, g.n) if ns.kind == "pw"
                else formats.write_td(res.certificate, g.n))
        Path(ns.out).write_text(text)
    print(json.dumps({"graph": ns.graph, "kind": ns.kind, "value": res.value,
                      "certificate": ns.out}))
    return OK


def cmd_gen(ns) -> int:
    try:
        spec = GenSpec(family=ns.family, n=ns.n, h=ns.height, t=ns.t, rows=ns.rows,
                       cols=ns.cols, p=ns.p, kind=ns.kind, matching=ns.matching, seed=ns.seed)
        g, td = spec.build()
    except ValueError as e:
        raise InputError(str(e)) from None
    text = formats.write_graph(g)
    if ns.out:
        Path(ns.out).write_text(text)
    else:
        sys.stdout.write(text)
    if ns.td_out:
        if td is None:
            raise InputError(f"family {ns.family} has no companion decomposition")
        Path(ns.td_out).write_text(formats.write_td(td, g.n))
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pwapprox", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="approximate pathwidth with certificates")
    s.add_argument("graph", nargs="?")
    s.add_argument("--td", help="input tree decomposition file")
    s.add_argument("--td-source", choices=("minfill", "exact"), default="minfill",
                   help="decomposition to use when --td is absent")
    s.add_argument("--out", help="output prefix (default: graph path without suffix)")
    s.add_argument("--batch", help="solve every *.gr file in this directory")
    s.add_argument("--jobs", type=int, default=None, help="worker processes for --batch")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(run=cmd_solve)

    v = sub.add_parser("validate", help="check a certificate against a graph")
    v.add_argument("kind", choices=("td", "pd", "witness", "subdivision"))
    v.add_argument("graph")
    v.add_argument("certificate")
    v.add_argument("--height", type=int, help="required witness or subdivision height")
    v.set_defaults(run=cmd_validate)

    o = sub.add_parser("oracle", help="exact pathwidth or treewidth of a small graph")
    o.add_argument("kind", choices=("pw", "tw"))
    o.add_argument("graph")
    o.add_argument("--out", help="certificate output file")
    o.set_defaults(run=cmd_oracle)

    gp = sub.add_parser("gen", help="write a generated graph")
    gp.add_argument("family", choices=GenSpec.FAMILIES)
    gp.add_argument("--n", type=int, default=0)
    gp.add_argument("--height", type=int, default=0)
    gp.add_argument("--t", type=int, default=1)
    gp.add_argument("--rows", type=int, default=0)
    gp.add_argument("--cols", type=int, default=0)
    gp.add_argument("--p", type=float, default=0.0)
    gp.add_argument("--kind", choices=("binary", "ternary"), default="binary")
    gp.add_argument("--matching", choices=("identity", "seeded"), default="identity")
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("--out", help="graph output file (default stdout)")
    gp.add_argument("--td-out", help="companion decomposition file (blow-ups)")
    gp.set_defaults(run=cmd_gen)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        return ns.run(ns)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR
    except (InternalError, ClassificationError) as e:
        print(f"internal error: {e}", file=sys.stderr)
        return INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
