"""Mean query counts of each solver on uniform hidden points, next to k + n and
the decision-tree depth bound log_{(k+1)^2}(0.8 n^k) - 1.

    python scripts/query_scaling.py --out scaling.csv
"""
import argparse
import csv
import sys

from tarski_query.adversary import leaf_depth_bound, yao_average_queries
from tarski_query.lattice import GridShape

GRID = [(2, 8), (2, 32), (2, 128), (8, 8), (16, 16), (64, 4), (64, 64), (256, 2), (1024, 2), (1024, 3)]


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--solvers", nargs="+", default=["kleene", "dnc", "family"])
    p.add_argument("--out")
    args = p.parse_args()

    rows = []
    for n, k in GRID:
        row = {"n": n, "k": k, "k_plus_n": k + n, "depth_bound": round(leaf_depth_bound(n, k), 3)}
        for name in args.solvers:
            if name == "dnc" and k > 3 and n > 2:
                row[name] = ""  # (log n)^k blows up
                continue
            res = yao_average_queries(name, GridShape(n, k), trials=args.trials, seed=args.seed)
            assert not res.failures
            row[name] = round(res.mean_queries, 2)
        rows.append(row)
        print(row, file=sys.stderr)

    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)


if __name__ == "__main__":
    main()
