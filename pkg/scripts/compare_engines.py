"""Solve a corpus with every engine and the oracle; print per-engine totals.

Usage: python3 scripts/compare_engines.py planar --count 30
"""
import argparse
import time
from collections import defaultdict

from unitflow.corpora import mid_corpus, planar_corpus
from unitflow.oracles import cycle_canceling_oracle
from unitflow.scaling import SolverConfig, min_cost_circulation


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("corpus", choices=["mid", "planar"])
    ap.add_argument("--count", type=int, default=30)
    args = ap.parse_args()

    corpus = planar_corpus if args.corpus == "planar" else mid_corpus
    engines = ["heap", "dial"] + (["planar"] if args.corpus == "planar" else [])
    wall = defaultdict(float)
    phases = defaultdict(int)
    wrong = defaultdict(int)
    for inst in corpus(args.count):
        t0 = time.perf_counter()
        want = cycle_canceling_oracle(inst.graph)
        wall["oracle"] += time.perf_counter() - t0
        for eng in engines:
            t0 = time.perf_counter()
            sol = min_cost_circulation(inst.graph, SolverConfig(engine=eng, rotation=inst.rotation))
            wall[eng] += time.perf_counter() - t0
            phases[eng] += sol.phases
            wrong[eng] += sol.cost != want
    print(f"{'engine':>8} {'seconds':>9} {'phases':>8} {'wrong':>6}")
    for eng in engines:
        print(f"{eng:>8} {wall[eng]:9.2f} {phases[eng]:8d} {wrong[eng]:6d}")
    print(f"{'oracle':>8} {wall['oracle']:9.2f}")


if __name__ == "__main__":
    main()
