"""Memo size against the n(ceil(log_3 n) + 2) budget on growing instances."""
import argparse
import csv
import sys
import time
from dataclasses import dataclass

from pwapprox.gen import blowup, gen_grid, gen_random_tree, gen_tree
from pwapprox.oracle import minfill_td
from pwapprox.solve import solve_top, subproblem_stats


@dataclass
class ScalingConfig:
    sizes: tuple = (50, 100, 200, 500, 1000, 2000)
    blowup_t: int = 3
    seed: int = 0


def instances(cfg: ScalingConfig):
    for n in cfg.sizes:
        yield "random-tree", gen_random_tree(n, cfg.seed + n)
        side = int(n ** 0.5)
        yield "grid", gen_grid(side, side)
    for h in range(1, 7):
        g = blowup(gen_tree("ternary", h), cfg.blowup_t)
        if g.n <= max(cfg.sizes):
            yield f"blowup-t{cfg.blowup_t}", g


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=list(ScalingConfig.sizes))
    ap.add_argument("--blowup-t", type=int, default=ScalingConfig.blowup_t)
    ap.add_argument("--seed", type=int, default=0)
    ns = ap.parse_args()
    cfg = ScalingConfig(tuple(ns.sizes), ns.blowup_t, ns.seed)
    writer = csv.writer(sys.stdout)
    writer.writerow(["family", "n", "td_width", "h", "pd_width", "subproblems", "budget",
                     "key_runs", "pruned", "max_bound", "seconds"])
    for family, g in instances(cfg):
        start = time.perf_counter()
        td = minfill_td(g)
        r = solve_top(g, td)
        st = subproblem_stats(r.solver.memo, g.n)
        writer.writerow([family, g.n, td.width, r.h, r.pd.width, st.subproblems, st.budget,
                         st.key_runs, st.pruned, st.max_bound, f"{time.perf_counter() - start:.2f}"])
        sys.stdout.flush()


if __name__ == "__main__":
    main()
