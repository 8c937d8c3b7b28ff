"""Classical baselines: composite trapezoid, composite Simpson 1/3, their
worst-case error bounds, and an adaptive Simpson reference integrator."""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

Function = Callable[[float], float]

METHODS = ("trapezoid", "simpson", "reference", "flann")
MAX_EVALUATIONS = 1_000_000


class NonConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    method: str
    subintervals: int | None = None
    error_bound: float | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        composite = self.method in ("trapezoid", "simpson")
        if composite != (self.subintervals is not None):
            raise ValueError("subintervals must be given exactly for trapezoid and simpson")


def _check_interval(a: float, b: float) -> None:
    if not b > a:
        raise ValueError(f"need b > a, got a={a!r}, b={b!r}")


def _nodes(a: float, b: float, m: int) -> list[float]:
    h = (b - a) / m
    return [a + j * h for j in range(m)] + [b]


def trapezoid(f: Function, a: float, b: float, m: int, max_abs_f2: float | None = None) -> QuadratureResult:
    _check_interval(a, b)
    if m < 1:
        raise ValueError(f"trapezoid needs m >= 1 subintervals, got {m}")
    h = (b - a) / m
    ys = [float(f(x)) for x in _nodes(a, b, m)]
    value = h * (0.5 * ys[0] + math.fsum(ys[1:-1]) + 0.5 * ys[-1])
    bound = None if max_abs_f2 is None else trapezoid_error_bound(max_abs_f2, a, b, h)
    return QuadratureResult(value, "trapezoid", m, bound)


def simpson(f: Function, a: float, b: float, m: int, max_abs_f4: float | None = None) -> QuadratureResult:
    _check_interval(a, b)
    if m < 2 or m % 2:
        raise ValueError(f"Simpson's 1/3 rule needs an even m >= 2, got {m}")
    h = (b - a) / m
    ys = [float(f(x)) for x in _nodes(a, b, m)]
    value = h / 3.0 * (ys[0] + 4.0 * math.fsum(ys[1:-1:2]) + 2.0 * math.fsum(ys[2:-1:2]) + ys[-1])
    bound = None if max_abs_f4 is None else simpson_error_bound(max_abs_f4, a, b, h)
    return QuadratureResult(value, "simpson", m, bound)


def trapezoid_error_bound(max_abs_f2: float, a: float, b: float, h: float) -> float:
    """h^2 (b - a) / 12 * max|f''| over [a, b]."""
    _check_interval(a, b)
    if max_abs_f2 < 0:
        raise ValueError("max_abs_f2 must be non-negative")
    if h <= 0:
        raise ValueError("h must be positive")
    return h * h * (b - a) / 12.0 * max_abs_f2


def simpson_error_bound(max_abs_f4: float, a: float, b: float, h: float) -> float:
    """(b - a) h^4 / 180 * max|f''''| over [a, b]."""
    _check_interval(a, b)
    if max_abs_f4 < 0:
        raise ValueError("max_abs_f4 must be non-negative")
    if h <= 0:
        raise ValueError("h must be positive")
    return (b - a) * h**4 / 180.0 * max_abs_f4


def reference(f: Function, a: float, b: float, rel_tol: float = 1e-12) -> QuadratureResult:
    """Adaptive Simpson with bisection and Richardson correction.

    A panel is accepted when |S_halves - S_whole| / 15 is within its
    width-proportional share of ``rel_tol * |I|``, where I is a running
    estimate of the whole integral.  Iterative (explicit stack), so deep
    refinement near a kink cannot hit the recursion limit.
    """
    _check_interval(a, b)
    if not rel_tol >= 1e-13:
        raise ValueError(f"rel_tol must be >= 1e-13, got {rel_tol}")

    evaluations = 0

    def fx(x: float) -> float:
        nonlocal evaluations
        evaluations += 1
        return float(f(x))

    # Seed the scale estimate with a 16-panel Simpson pass.
    seed_m = 16
    xs = _nodes(a, b, 2 * seed_m)
    ys = [fx(x) for x in xs]
    panels = []
    for p in range(seed_m):
        x0, x1, x2 = xs[2 * p], xs[2 * p + 1], xs[2 * p + 2]
        y0, y1, y2 = ys[2 * p], ys[2 * p + 1], ys[2 * p + 2]
        panels.append((x0, x2, y0, y1, y2, (x2 - x0) / 6.0 * (y0 + 4.0 * y1 + y2)))
    estimate = math.fsum(p[-1] for p in panels)
    magnitude = math.fsum(abs(p[-1]) for p in panels)
    scale = abs(estimate) if estimate != 0 else magnitude
    tol = rel_tol * max(scale, 1e-300)
    width = b - a

    accepted = []
    stack = panels[::-1]
    while stack:
        x0, x2, y0, y1, y2, whole = stack.pop()
        x1 = 0.5 * (x0 + x2)
        left_mid, right_mid = 0.5 * (x0 + x1), 0.5 * (x1 + x2)
        yl, yr = fx(left_mid), fx(right_mid)
        h6 = (x2 - x0) / 12.0
        left = h6 * (y0 + 4.0 * yl + y1)
        right = h6 * (y1 + 4.0 * yr + y2)
        delta = left + right - whole
        share = tol * (x2 - x0) / width
        # Bisection can no longer separate nodes once the panel is this thin.
        too_thin = (x2 - x0) <= 64 * math.ulp(max(abs(x0), abs(x2), 1e-300))
        if abs(delta) <= 15.0 * share or too_thin:
            accepted.append(left + right + delta / 15.0)
        else:
            stack.append((x1, x2, y1, yr, y2, right))
            stack.append((x0, x1, y0, yl, y1, left))
        if evaluations > MAX_EVALUATIONS:
            raise NonConvergenceError(
                f"reference quadrature did not reach rel_tol={rel_tol} within {MAX_EVALUATIONS} evaluations"
            )
    return QuadratureResult(math.fsum(accepted), "reference")
