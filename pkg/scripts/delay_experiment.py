"""Measure the instrumented delay (max steps between emissions) as m grows.

    python3 scripts/delay_experiment.py [--cap 20000] [--ms 10 100 1000 10000 100000]
"""
import argparse

from walkenum.preprocess import preprocess
from walkenum.testkit import branching_cycles, cycle_with_branches, delay_probe, fixtures


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cap", type=int, default=20_000, help="emissions per run")
    ap.add_argument("--ms", type=int, nargs="+", default=[10, 100, 1000, 10_000, 100_000])
    args = ap.parse_args()
    graphs = {"cycle_with_branches": cycle_with_branches(), "branching_cycles": branching_cycles(),
              "two_loops": fixtures()["two_loops"]}
    print(f"{'graph':<22}{'m':>8}{'emitted':>10}{'max_delay':>11}")
    for name, g in graphs.items():
        p = preprocess(g)
        for m in args.ms:
            emitted, k = delay_probe(p, m, args.cap)
            print(f"{name:<22}{m:>8}{emitted:>10}{k:>11}")


if __name__ == "__main__":
    main()
