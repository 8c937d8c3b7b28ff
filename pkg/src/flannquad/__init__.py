"""Definite integration with a functional-link neural network (FLANN).

A single-layer network N(x) = sum_i w_i * Phi_i(x) over monomial links is
trained by gradient descent so that N'(x) matches f(x) on sample points;
the integral over [a, b] is then N(b) - N(a).
"""

from .basis import BasisSet
from .expr import DomainError, Integrand, ParseError, UnknownIdentifierError, evaluate, parse
from .integrator import OutOfDomainError, TrainedNetwork, evaluate_network, integrate
from .quadrature import QuadratureResult, reference, simpson, trapezoid
from .trainer import (
    ConvergenceTrace,
    DivergenceError,
    RankDeficientError,
    TrainingConfig,
    fit_least_squares,
    sample_points,
    solve_least_squares,
    train,
)

__version__ = "0.1.0"
