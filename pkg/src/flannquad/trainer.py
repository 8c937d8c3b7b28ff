"""Gradient-descent training of the functional-link weights.

The loss is E(w) = 1/2 * sum_i (f(x_i) - N'(x_i))**2 over k interior grid
points, with gradient dE/dw_j = -sum_i e_i * Phi_j'(x_i).  E is quadratic
in w, so :func:`solve_least_squares` gives its exact minimiser and serves as
the oracle for the descent loop.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .basis import SCALINGS, BasisSet
from .integrator import TrainedNetwork

Function = Callable[[float], float]

# Fraction of the stability limit 2/lambda_max used by the automatic step.
AUTO_STEP_FRACTION = 0.95
DIVERGENCE_LIMIT = 1e12


class DivergenceError(RuntimeError):
    def __init__(self, iteration: int, error: float):
        self.iteration = iteration
        self.error = error
        super().__init__(
            f"training diverged at iteration {iteration} (E={error!r}); "
            "lower the learning rate or enable basis scaling"
        )


class RankDeficientError(ValueError):
    pass


@dataclass(frozen=True)
class TrainingConfig:
    degree: int = 8
    k: int = 10
    eta: float | None = None  # None: AUTO_STEP_FRACTION * 2 / lambda_max(A^T A)
    max_iterations: int = 500_000
    tolerance: float = 1e-10
    init: str = "uniform"
    init_low: float = -0.5
    init_high: float = 0.5
    seed: int = 0
    scaling: str = "centered"

    def __post_init__(self):
        if self.eta is not None and not self.eta > 0:
            raise ValueError(f"eta must be positive, got {self.eta}")
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.k < self.degree:
            raise ValueError(f"k={self.k} training points cannot determine {self.degree} weights")
        if self.init not in ("uniform", "zeros"):
            raise ValueError(f"init must be 'uniform' or 'zeros', got {self.init!r}")
        if self.init == "uniform" and not self.init_high > self.init_low:
            raise ValueError("uniform init needs init_high > init_low")
        if self.scaling not in SCALINGS:
            raise ValueError(f"scaling must be one of {SCALINGS}, got {self.scaling!r}")

    def basis(self, a: float, b: float) -> BasisSet:
        if self.scaling == "none":
            return BasisSet(self.degree)
        return BasisSet(self.degree, self.scaling, float(a), float(b))

    def initial_weights(self) -> np.ndarray:
        if self.init == "zeros":
            return np.zeros(self.degree)
        rng = np.random.default_rng(self.seed)
        return rng.uniform(self.init_low, self.init_high, self.degree)


@dataclass(frozen=True)
class ConvergenceTrace:
    """E after every weight update; ``initial_error`` is E at the starting weights."""

    errors: np.ndarray
    converged: bool
    iterations_run: int
    initial_error: float
    eta: float

    @property
    def final_error(self) -> float:
        return float(self.errors[-1]) if self.iterations_run else self.initial_error


def sample_points(a: float, b: float, k: int) -> np.ndarray:
    """k interior points splitting [a, b] into k + 1 equal sub-intervals."""
    if not b > a:
        raise ValueError(f"need b > a, got a={a!r}, b={b!r}")
    if k < 1:
        raise ValueError("k must be at least 1")
    return a + np.arange(1, k + 1) * ((b - a) / (k + 1))


def residual(f: Function, w, basis: BasisSet, x: float) -> float:
    return float(f(x)) - float(np.dot(w, basis.expand_derivative(x)))


def _targets(f: Function, points) -> np.ndarray:
    return np.array([float(f(float(x))) for x in points])


def error(f: Function, w, basis: BasisSet, points) -> float:
    r = _targets(f, points) - basis.design_matrix(points) @ np.asarray(w, dtype=float)
    return 0.5 * float(r @ r)


def gradient(f: Function, w, basis: BasisSet, points) -> np.ndarray:
    A = basis.design_matrix(points)
    r = _targets(f, points) - A @ np.asarray(w, dtype=float)
    return -(A.T @ r)


def gd_step(w, grad, eta: float) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    grad = np.asarray(grad, dtype=float)
    if w.shape != grad.shape:
        raise ValueError(f"weight/gradient shape mismatch: {w.shape} vs {grad.shape}")
    return w - eta * grad


def auto_learning_rate(basis: BasisSet, points) -> float:
    A = basis.design_matrix(points)
    lam_max = float(np.linalg.eigvalsh(A.T @ A)[-1])
    return AUTO_STEP_FRACTION * 2.0 / lam_max


def train(f: Function, a: float, b: float, config: TrainingConfig | None = None):
    """Full-batch gradient descent; returns ``(TrainedNetwork, ConvergenceTrace)``.

    Stops as soon as E <= tolerance or after ``max_iterations`` updates.
    Raises :class:`DivergenceError` when E turns non-finite, or climbs past
    1e12 above its starting value.
    """
    config = config or TrainingConfig()
    points = sample_points(a, b, config.k)
    basis = config.basis(a, b)
    A = basis.design_matrix(points)
    At = np.ascontiguousarray(A.T)
    y = _targets(f, points)
    eta = config.eta if config.eta is not None else auto_learning_rate(basis, points)

    w = config.initial_weights()
    r = y - A @ w
    E = 0.5 * float(r @ r)
    initial = E
    ceiling = max(DIVERGENCE_LIMIT, initial)
    errors = np.empty(config.max_iterations)
    it = 0
    while E > config.tolerance and it < config.max_iterations:
        w = gd_step(w, -(At @ r), eta)
        r = y - A @ w
        E = 0.5 * float(r @ r)
        if not math.isfinite(E) or E > ceiling:
            raise DivergenceError(it + 1, E)
        errors[it] = E
        it += 1

    trace = ConvergenceTrace(errors[:it].copy(), E <= config.tolerance, it, initial, eta)
    net = TrainedNetwork(tuple(w), basis, (a, b), E)
    return net, trace


def _solve_pivoted(M: np.ndarray, rhs: np.ndarray, row_scale: np.ndarray) -> np.ndarray:
    """Gaussian elimination with partial pivoting on a copy of M."""
    n = len(rhs)
    M = M.astype(float).copy()
    rhs = rhs.astype(float).copy()
    scale = row_scale.copy()
    for col in range(n):
        p = col + int(np.argmax(np.abs(M[col:, col])))
        if abs(M[p, col]) < 1e-12 * scale[p]:
            raise RankDeficientError(f"normal equations are rank deficient at column {col + 1}")
        if p != col:
            M[[col, p]] = M[[p, col]]
            rhs[[col, p]] = rhs[[p, col]]
            scale[[col, p]] = scale[[p, col]]
        factors = M[col + 1:, col] / M[col, col]
        M[col + 1:, col:] -= np.outer(factors, M[col, col:])
        rhs[col + 1:] -= factors * rhs[col]
    w = np.zeros(n)
    for row in range(n - 1, -1, -1):
        w[row] = (rhs[row] - M[row, row + 1:] @ w[row + 1:]) / M[row, row]
    return w


def solve_least_squares(f: Function, basis: BasisSet, points, refinements: int = 3) -> np.ndarray:
    """Exact minimiser of E via the normal equations (A^T A) w = A^T y.

    Refinement residuals are formed in extended precision, which recovers
    the digits the squared condition number of A^T A would otherwise cost.
    """
    A = basis.design_matrix(points)
    if A.shape[0] < A.shape[1]:
        raise RankDeficientError(f"{A.shape[0]} points cannot determine {A.shape[1]} weights")
    y = _targets(f, points)
    A_ext = A.astype(np.longdouble)
    G_ext = A_ext.T @ A_ext
    rhs_ext = A_ext.T @ y.astype(np.longdouble)
    G = G_ext.astype(float)
    row_scale = np.max(np.abs(G), axis=1)
    w = _solve_pivoted(G, rhs_ext.astype(float), row_scale)
    for _ in range(refinements):
        r = (rhs_ext - G_ext @ w.astype(np.longdouble)).astype(float)
        w = w + _solve_pivoted(G, r, row_scale)
    return w


def fit_least_squares(f: Function, a: float, b: float, config: TrainingConfig | None = None) -> TrainedNetwork:
    """Same network as :func:`train` would aim for, solved directly."""
    config = config or TrainingConfig()
    points = sample_points(a, b, config.k)
    basis = config.basis(a, b)
    w = solve_least_squares(f, basis, points)
    return TrainedNetwork(tuple(w), basis, (a, b), error(f, w, basis, points))
