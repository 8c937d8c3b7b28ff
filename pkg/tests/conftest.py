import math

import pytest

from flannquad.expr import parse

ACCEPTANCE_LINES: list[str] = []

# name -> (expression, a, b, analytic integral)
KNOWN = {
    "sqrt1px2": ("sqrt(1+x^2)", 0.0, 2.0, 0.5 * (2.0 * math.sqrt(5.0) + math.asinh(2.0))),
    "pow2x": ("2^x", 0.0, 2.0, 3.0 / math.log(2.0)),
    "x6": ("x^6", 0.0, 6.0, 6.0**7 / 7.0),
}


@pytest.fixture
def report():
    """Record one acceptance line and assert the criterion."""

    def _report(number: int, ok: bool, detail: str) -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return _report


@pytest.fixture
def sqrt1px2():
    return parse("sqrt(1+x^2)")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
