#!/usr/bin/env python
"""Why the basis is scaled: Gram conditioning and what plain GD reaches.

For each scaling, prints cond(A^T A) of the derivative design matrix and the
integral error after gradient descent on the x^6 experiment (k=10, n=8).
"""
from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from flannquad import TrainingConfig, parse, sample_points, train  # noqa: E402
from flannquad.trainer import DivergenceError  # noqa: E402

EXACT = 6.0**7 / 7.0


def main() -> None:
    f = parse("x^6")
    pts = sample_points(0.0, 6.0, 10)
    print(f"{'scaling':>9} {'cond(AtA)':>12} {'iterations':>10} {'final E':>11} {'integral err':>13}")
    for scaling in ("none", "unit", "centered"):
        cfg = TrainingConfig(degree=8, k=10, scaling=scaling, max_iterations=200_000)
        A = cfg.basis(0.0, 6.0).design_matrix(pts)
        cond = np.linalg.cond(A.T @ A)
        try:
            net, trace = train(f, 0.0, 6.0, cfg)
            err = net.integrate(0.0, 6.0) - EXACT
            print(f"{scaling:>9} {cond:12.3e} {trace.iterations_run:10d} {trace.final_error:11.3e} {err:13.3e}")
        except DivergenceError as exc:
            print(f"{scaling:>9} {cond:12.3e} diverged at iteration {exc.iteration}")


if __name__ == "__main__":
    main()
