"""Sweep random connected graphs and report h <= pw <= width(pd) <= t*h + 1.

Writes one CSV row per graph; the last line summarises violations.
"""
import argparse
import csv
import random
import sys
from dataclasses import dataclass, fields

from pwapprox.gen import gen_random_connected
from pwapprox.oracle import exact_pathwidth, exact_treewidth, minfill_td
from pwapprox.solve import solve_top


@dataclass
class SweepConfig:
    count: int = 500
    n_min: int = 4
    n_max: int = 11
    probabilities: tuple = (0.2, 0.35, 0.5)
    td_source: str = "exact"     # exact | minfill
    seed: int = 0


def run(cfg: SweepConfig, out=sys.stdout) -> int:
    writer = csv.writer(out)
    writer.writerow(["seed", "n", "m", "p", "t", "h", "pw", "pd_width", "ok"])
    violations = 0
    for i in range(cfg.count):
        seed = cfg.seed + i
        rng = random.Random(seed)
        n = rng.randint(cfg.n_min, cfg.n_max)
        p = cfg.probabilities[i % len(cfg.probabilities)]
        g = gen_random_connected(n, p, seed)
        td = exact_treewidth(g).certificate if cfg.td_source == "exact" else minfill_td(g)
        t = td.width + 1
        r = solve_top(g, td)
        pw = exact_pathwidth(g).value
        ok = r.h <= pw <= r.pd.width <= t * r.h + 1
        violations += not ok
        writer.writerow([seed, n, g.m, p, t, r.h, pw, r.pd.width, int(ok)])
    print(f"# {cfg.count} graphs, {violations} violations", file=out)
    return violations


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(SweepConfig):
        if f.name != "probabilities":
            ap.add_argument(f"--{f.name.replace('_', '-')}", type=type(f.default), default=f.default)
    ap.add_argument("--probabilities", type=float, nargs="+", default=list(SweepConfig.probabilities))
    ns = ap.parse_args()
    cfg = SweepConfig(**{k: (tuple(v) if k == "probabilities" else v) for k, v in vars(ns).items()})
    sys.exit(1 if run(cfg) else 0)


if __name__ == "__main__":
    main()
