"""Per-query information gain on the hypercube for each built-in strategy.

    python scripts/info_gain.py --k 8 16 32 64 --trials 1000 --seed 0
"""
import argparse

from tarski_query.adversary import STRATEGIES, simulate_info_gain


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--k", type=int, nargs="+", default=[8, 16, 32])
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-c", type=int, default=6)
    args = p.parse_args()

    head = "".join(f"  P>{c:<6}" for c in range(1, args.max_c + 1))
    print(f"{'strategy':<22}{'k':>4}{'steps/trial':>13}{'mean':>8}{'max':>5}{head}")
    for k in args.k:
        for name in sorted(STRATEGIES):
            stats = simulate_info_gain(name, k, args.trials, args.seed)
            tail = "".join(f"  {r['freq']:.4f}" for r in stats.tail_table(args.max_c)[1:])
            steps = len(stats.records) / args.trials
            print(f"{name:<22}{k:>4}{steps:>13.2f}{stats.mean_gain:>8.3f}{stats.max_gain:>5}{tail}")
    bounds = "".join(f"  {2.0 ** -c:.4f}" for c in range(1, args.max_c + 1))
    print(f"{'2^-C':<52}{bounds}")


if __name__ == "__main__":
    main()
