"""Clique blow-ups of complete ternary trees: treewidth t, pathwidth about t(h+1).

For each (t, h) the script reports the solver's height and path decomposition
width from the sliding-bag decomposition, and exact values where the oracle
can reach them.
"""
import argparse
import csv
import sys
from dataclasses import dataclass

from pwapprox.gen import blowup, blowup_td, gen_tree
from pwapprox.oracle import OracleTooLarge, exact_pathwidth, exact_treewidth
from pwapprox.solve import solve_top


@dataclass
class TightnessConfig:
    t_max: int = 4
    h_max: int = 4
    matching: str = "identity"
    seed: int = 0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--t-max", type=int, default=TightnessConfig.t_max)
    ap.add_argument("--h-max", type=int, default=TightnessConfig.h_max)
    ap.add_argument("--matching", choices=("identity", "seeded"), default="identity")
    ap.add_argument("--seed", type=int, default=0)
    cfg = TightnessConfig(**{k: v for k, v in vars(ap.parse_args()).items()})
    writer = csv.writer(sys.stdout)
    writer.writerow(["t", "h", "n", "td_width", "h_ret", "pd_width", "tw", "pw", "pw_lower"])
    for t in range(1, cfg.t_max + 1):
        for h in range(0, cfg.h_max + 1):
            tree = gen_tree("ternary", h)
            g = blowup(tree, t, cfg.matching, cfg.seed)
            td = blowup_td(tree, t, cfg.matching, cfg.seed)
            r = solve_top(g, td)
            try:
                tw = exact_treewidth(g).value
            except OracleTooLarge:
                tw = ""
            try:
                pw = exact_pathwidth(g).value
            except OracleTooLarge:
                pw = ""
            writer.writerow([t, h, g.n, td.width, r.h, r.pd.width, tw, pw, t * (h + 1) - 1])
            sys.stdout.flush()


if __name__ == "__main__":
    main()
