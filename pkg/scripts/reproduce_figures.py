#!/usr/bin/env python
"""Regenerate the CSV series behind the published figures.

    fig2_sqrt1px2_sweep.csv   FLANN vs exact, integral of sqrt(1+x^2) over [0, b1]
    fig3_sqrt1px2_trace.csv   E per gradient-descent iteration
    fig4_pow2x_sweep.csv      FLANN vs exact, integral of 2^x over [0, b1]
    fig6_x6_compare.csv       FLANN, trapezoid, Simpson and exact for x^6 on [0, b1]
    elliptic_compare.csv      same comparison for the elliptic integrand

Usage: python scripts/reproduce_figures.py [--out results] [--seed 0]
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from flannquad.cli import main as cli  # noqa: E402

RUNS = [
    ("fig2_sqrt1px2_sweep.csv", ["sweep", "--corpus", "sqrt1px2", "--steps", "40"]),
    ("fig3_sqrt1px2_trace.csv", ["trace", "--corpus", "sqrt1px2", "--every", "100"]),
    ("fig4_pow2x_sweep.csv", ["sweep", "--corpus", "pow2x", "--steps", "40"]),
    ("fig6_x6_compare.csv", ["compare", "--corpus", "x6", "--k", "10", "--steps", "24"]),
    ("elliptic_compare.csv", ["compare", "--corpus", "elliptic_half", "--steps", "20"]),
]


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", default="results", help="output directory")
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    status = 0
    for name, argv in RUNS:
        t0 = time.perf_counter()
        code = cli(argv + ["--seed", str(args.seed), "--output", str(out / name)])
        print(f"{name}: exit {code} in {time.perf_counter() - t0:.1f}s")
        status = max(status, code)
    return status


if __name__ == "__main__":
    sys.exit(main())
