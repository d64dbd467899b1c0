"""Planar solves on growing square grids; writes a plot-ready CSV and JSON.

Usage: python3 scripts/scaling_trend.py [--sides 4 8 16 ...] [--out results/trend]
"""
import argparse
import csv
import json
from dataclasses import asdict
from pathlib import Path

from unitflow.bench import grid_trend


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sides", type=int, nargs="+", default=[4, 6, 8, 11, 16, 22, 32])
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--multiplicity", type=int, default=1)
    ap.add_argument("--r", type=int, default=None)
    ap.add_argument("--out", default="results/trend")
    args = ap.parse_args()

    rows = grid_trend(args.sides, seed=args.seed, multiplicity=args.multiplicity, r=args.r)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    dicts = [asdict(r) for r in rows]
    for d in dicts:
        d.pop("extra")
    with open(out.with_suffix(".csv"), "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(dicts[0]))
        w.writeheader()
        w.writerows(dicts)
    out.with_suffix(".json").write_text(json.dumps(dicts, indent=1) + "\n")

    print(f"{'side':>5} {'n':>6} {'m':>6} {'r':>3} {'phases':>7} {'8vm+2':>7} {'ddg/ph':>9} {'n/vr':>7} {'sec':>7}")
    for r in rows:
        print(f"{r.rows:5d} {r.n:6d} {r.m:6d} {r.r:3d} {r.max_phases:7d} {8 * r.sqrt_m + 2:7.1f} "
              f"{r.ddg_work_per_phase:9.1f} {r.n_over_sqrt_r:7.1f} {r.wall_time:7.2f}")
    print(f"wrote {out.with_suffix('.csv')} and {out.with_suffix('.json')}")


if __name__ == "__main__":
    main()
