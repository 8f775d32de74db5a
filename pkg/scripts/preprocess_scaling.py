"""Instrumented preprocessing steps against |E| log |E| on random multigraphs.

    python3 scripts/preprocess_scaling.py [--es 1000 10000 100000] [--seeds 3]
"""
import argparse
import math
import time

from walkenum.preprocess import preprocess
from walkenum.testkit import big_random_graph


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--es", type=int, nargs="+", default=[1000, 10_000, 100_000])
    ap.add_argument("--seeds", type=int, default=3)
    args = ap.parse_args()
    print(f"{'|E|':>8}{'seed':>6}{'steps':>12}{'steps/E':>10}{'c':>8}{'secs':>8}")
    worst = 0.0
    for e in args.es:
        for seed in range(args.seeds):
            g = big_random_graph(seed, e)
            t0 = time.perf_counter()
            p = preprocess(g)
            dt = time.perf_counter() - t0
            c = p.steps / (e * math.log2(e))
            worst = max(worst, c)
            print(f"{e:>8}{seed:>6}{p.steps:>12}{p.steps / e:>10.2f}{c:>8.3f}{dt:>8.2f}")
    print(f"fitted c = {worst:.3f}")


if __name__ == "__main__":
    main()
