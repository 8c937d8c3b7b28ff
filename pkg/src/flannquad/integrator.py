"""The trained antiderivative N(x) and definite integrals read off it."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .basis import BasisSet


class OutOfDomainError(ValueError):
    pass


@dataclass(frozen=True)
class TrainedNetwork:
    weights: tuple[float, ...]
    basis: BasisSet
    domain: tuple[float, float]
    final_error: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "domain", (float(self.domain[0]), float(self.domain[1])))
        if len(self.weights) != self.basis.degree:
            raise ValueError(f"expected {self.basis.degree} weights, got {len(self.weights)}")
        if not self.domain[1] > self.domain[0]:
            raise ValueError(f"domain needs b > a, got {self.domain}")
        if not self.final_error >= 0:
            raise ValueError("final_error must be non-negative")

    def __call__(self, x: float) -> float:
        return evaluate_network(self, x)

    def integrate(self, a1: float, b1: float) -> float:
        return integrate(self, a1, b1)

    def to_dict(self) -> dict:
        return {
            "degree": self.basis.degree,
            "scaling": self.basis.scaling_dict(),
            "weights": list(self.weights),
            "domain": list(self.domain),
            "final_error": self.final_error,
        }

    def to_json(self) -> str:
        """Flat JSON object; weights written with 17 significant digits."""
        scaling = self.basis.scaling_dict()
        weights = ", ".join(f"{w:.17g}" for w in self.weights)
        return (
            "{"
            f'"degree": {self.basis.degree}, '
            f'"scaling": {json.dumps(scaling)}, '
            f'"weights": [{weights}], '
            f'"domain": [{self.domain[0]!r}, {self.domain[1]!r}], '
            f'"final_error": {self.final_error!r}'
            "}"
        )

    @classmethod
    def from_dict(cls, data: dict) -> "TrainedNetwork":
        basis = BasisSet.from_scaling_dict(int(data["degree"]), data.get("scaling"))
        return cls(tuple(data["weights"]), basis, tuple(data["domain"]), float(data.get("final_error", 0.0)))

    @classmethod
    def from_json(cls, text: str) -> "TrainedNetwork":
        return cls.from_dict(json.loads(text))

    def save(self, path) -> None:
        Path(path).write_text(self.to_json() + "\n")

    @classmethod
    def load(cls, path) -> "TrainedNetwork":
        return cls.from_json(Path(path).read_text())


def evaluate_network(net: TrainedNetwork, x: float) -> float:
    if not math.isfinite(x):
        raise ValueError(f"x must be finite, got {x!r}")
    return float(np.dot(net.weights, net.basis.expand(float(x))))


def integrate(net: TrainedNetwork, a1: float, b1: float) -> float:
    """N(b1) - N(a1); limits must lie in the trained domain, either order."""
    lo, hi = min(a1, b1), max(a1, b1)
    a, b = net.domain
    if lo < a or hi > b:
        raise OutOfDomainError(f"[{lo!r}, {hi!r}] is outside the trained domain [{a!r}, {b!r}]")
    return evaluate_network(net, b1) - evaluate_network(net, a1)
