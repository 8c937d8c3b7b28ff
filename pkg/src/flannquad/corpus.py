"""Built-in integrands: the published experiments plus exactness witnesses."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    expression: str
    a: float
    b: float
    analytic: float | None = None
    note: str = ""


CORPUS: dict[str, CorpusEntry] = {
    e.name: e
    for e in [
        CorpusEntry(
            "sqrt1px2",
            "sqrt(1+x^2)",
            0.0,
            2.0,
            0.5 * (2.0 * math.sqrt(5.0) + math.asinh(2.0)),
            "antiderivative (x*sqrt(1+x^2) + asinh(x)) / 2",
        ),
        CorpusEntry("pow2x", "2^x", 0.0, 2.0, 3.0 / math.log(2.0), "antiderivative 2^x / ln 2"),
        CorpusEntry("x6", "x^6", 0.0, 6.0, 6.0**7 / 7.0, "antiderivative x^7 / 7"),
        CorpusEntry(
            "elliptic_half",
            "sqrt(1-0.5*sin(x)^2)",
            0.0,
            math.pi / 2,
            1.3506438810476755,
            "complete elliptic integral of the second kind, E(m=0.5)",
        ),
        CorpusEntry("linear", "x", 0.0, 2.0, 2.0, "antiderivative x^2 / 2"),
        CorpusEntry("quadratic", "3*x^2", 0.0, 2.0, 8.0, "antiderivative x^3"),
        CorpusEntry("cubic", "x^3", 0.0, 2.0, 4.0, "antiderivative x^4 / 4"),
    ]
}


def get(name: str) -> CorpusEntry:
    try:
        return CORPUS[name]
    except KeyError:
        raise KeyError(f"unknown corpus entry {name!r}; known: {', '.join(CORPUS)}") from None
