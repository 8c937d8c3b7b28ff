"""Integrand expressions: a small recursive-descent parser and evaluator.

Grammar, loosest to tightest binding::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' expon)?          # right-associative
    expon  := '-' expon | power
    atom   := NUMBER | 'x' | 'pi' | 'e' | FUNC '(' expr ')' | '(' expr ')'

FUNC is one of sqrt, exp, log (natural), sin, cos, tan, abs.  There is no
implicit multiplication, so ``2x`` is a syntax error.
"""

from __future__ import annotations

import math
import re
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field

__all__ = [
    "FUNCTIONS",
    "CONSTANTS",
    "ExpressionError",
    "ParseError",
    "UnknownIdentifierError",
    "DomainError",
    "Integrand",
    "parse",
    "parse_constant",
    "evaluate",
]


class ExpressionError(ValueError):
    """Base class for everything the expression layer raises."""


class ParseError(ExpressionError):
    def __init__(self, source: str, offset: int, expected: str, found: str | None = None):
        self.source = source
        self.offset = offset
        self.expected = expected
        self.found = found
        got = "end of input" if found is None else repr(found)
        super().__init__(f"syntax error at offset {offset}: expected {expected}, got {got}")


class UnknownIdentifierError(ParseError):
    def __init__(self, source: str, offset: int, name: str):
        self.name = name
        ExpressionError.__init__(self, f"unknown identifier {name!r} at offset {offset}")
        self.source = source
        self.offset = offset
        self.expected = "x, pi, e or a known function"
        self.found = name


class DomainError(ExpressionError, ArithmeticError):
    """Evaluation left the real domain (or overflowed) in some sub-expression."""

    def __init__(self, expression: str, x: float, reason: str):
        self.expression = expression
        self.x = x
        self.reason = reason
        super().__init__(f"{reason} in {expression} at x={x!r}")


def _sqrt(v: float) -> float:
    if v < 0:
        raise ValueError("sqrt of negative value")
    return math.sqrt(v)


def _log(v: float) -> float:
    if v <= 0:
        raise ValueError("log of non-positive value")
    return math.log(v)


FUNCTIONS: dict[str, Callable[[float], float]] = {
    "sqrt": _sqrt,
    "exp": math.exp,
    "log": _log,
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "abs": abs,
}

CONSTANTS: dict[str, float] = {"pi": math.pi, "e": math.e}


# -- expression tree ---------------------------------------------------------


class Node:
    __slots__ = ()

    def eval(self, x: float) -> float:
        raise NotImplementedError

    def uses_x(self) -> bool:
        raise NotImplementedError


def _checked(node: Node, x: float, value: float) -> float:
    if not math.isfinite(value):
        raise DomainError(str(node), x, "non-finite intermediate")
    return value


@dataclass(frozen=True, slots=True)
class Num(Node):
    value: float

    def eval(self, x: float) -> float:
        return self.value

    def uses_x(self) -> bool:
        return False

    def __str__(self) -> str:
        return repr(self.value)


@dataclass(frozen=True, slots=True)
class Var(Node):
    name: str = "x"

    def eval(self, x: float) -> float:
        return x

    def uses_x(self) -> bool:
        return True

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Const(Node):
    name: str

    def eval(self, x: float) -> float:
        return CONSTANTS[self.name]

    def uses_x(self) -> bool:
        return False

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Neg(Node):
    operand: Node

    def eval(self, x: float) -> float:
        return -self.operand.eval(x)

    def uses_x(self) -> bool:
        return self.operand.uses_x()

    def __str__(self) -> str:
        return f"(-{self.operand})"


@dataclass(frozen=True, slots=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node

    def eval(self, x: float) -> float:
        lhs = self.left.eval(x)
        rhs = self.right.eval(x)
        op = self.op
        if op == "+":
            return _checked(self, x, lhs + rhs)
        if op == "-":
            return _checked(self, x, lhs - rhs)
        if op == "*":
            return _checked(self, x, lhs * rhs)
        if op == "/":
            if rhs == 0:
                raise DomainError(str(self), x, "division by zero")
            return _checked(self, x, lhs / rhs)
        # '^'
        if lhs == 0 and rhs < 0:
            raise DomainError(str(self), x, "division by zero")
        try:
            value = math.pow(lhs, rhs)
        except OverflowError:
            raise DomainError(str(self), x, "overflow") from None
        except ValueError:
            raise DomainError(str(self), x, "non-real power") from None
        return _checked(self, x, value)

    def uses_x(self) -> bool:
        return self.left.uses_x() or self.right.uses_x()

    def __str__(self) -> str:
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True, slots=True)
class Call(Node):
    name: str
    arg: Node
    fn: Callable[[float], float] = field(compare=False, repr=False)

    def eval(self, x: float) -> float:
        v = self.arg.eval(x)
        try:
            value = self.fn(v)
        except OverflowError:
            raise DomainError(str(self), x, "overflow") from None
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(str(self), x, str(exc) or "domain error") from None
        return _checked(self, x, float(value))

    def uses_x(self) -> bool:
        return self.arg.uses_x()

    def __str__(self) -> str:
        return f"{self.name}({self.arg})"


# -- tokenizer ---------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True, slots=True)
class _Tok:
    kind: str  # num | ident | op | end
    text: str
    offset: int


def _tokenize(source: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise ParseError(source, pos, "a number, identifier, operator or parenthesis", source[pos])
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("end", "", len(source)))
    return toks


class _Parser:
    def __init__(self, source: str, functions: Mapping[str, Callable[[float], float]]):
        self.source = source
        self.functions = functions
        self.toks = _tokenize(source)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def _fail(self, expected: str):
        t = self.tok
        raise ParseError(self.source, t.offset, expected, None if t.kind == "end" else t.text)

    def _is_op(self, *ops: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def _advance(self) -> _Tok:
        t = self.tok
        self.i += 1
        return t

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            self._fail("an operator or end of input")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self._is_op("+", "-"):
            op = self._advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self._is_op("*", "/"):
            op = self._advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self._is_op("-"):
            self._advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self._is_op("^"):
            self._advance()
            return BinOp("^", base, self.exponent())
        return base

    def exponent(self) -> Node:
        if self._is_op("-"):
            self._advance()
            return Neg(self.exponent())
        return self.power()

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self._advance()
            return Num(float(t.text))
        if t.kind == "ident":
            self._advance()
            if self._is_op("("):
                fn = self.functions.get(t.text)
                if fn is None:
                    raise UnknownIdentifierError(self.source, t.offset, t.text)
                self._advance()
                arg = self.expr()
                if not self._is_op(")"):
                    self._fail("')'")
                self._advance()
                return Call(t.text, arg, fn)
            if t.text in self.functions and t.text not in CONSTANTS and t.text != "x":
                self._fail(f"'(' after {t.text}")
            if t.text == "x":
                return Var()
            if t.text in CONSTANTS:
                return Const(t.text)
            raise UnknownIdentifierError(self.source, t.offset, t.text)
        if self._is_op("("):
            self._advance()
            node = self.expr()
            if not self._is_op(")"):
                self._fail("')'")
            self._advance()
            return node
        self._fail("a number, x, a constant, a function call or '('")


# -- public surface ----------------------------------------------------------


@dataclass(frozen=True)
class Integrand:
    """A parsed f(x). Calling it evaluates at a single real x."""

    root: Node
    source: str

    def __call__(self, x: float) -> float:
        return evaluate(self, x)

    def __str__(self) -> str:
        return self.source


def parse(source: str, functions: Mapping[str, Callable[[float], float]] | None = None) -> Integrand:
    """Parse ``source`` into an :class:`Integrand`.

    ``functions`` registers extra unary functions by name on top of the
    built-in table; this is the hook for native Python callables.
    """
    if not source or not source.strip():
        raise ParseError(source, 0, "an expression")
    table = dict(FUNCTIONS)
    if functions:
        table.update(functions)
    return Integrand(_Parser(source, table).parse(), source)


def parse_constant(source: str) -> float:
    """Evaluate an expression that must not mention ``x`` (e.g. ``pi/2``)."""
    f = parse(source)
    if f.root.uses_x():
        raise ExpressionError(f"expected a constant expression, got {source!r}")
    return evaluate(f, 0.0)


def evaluate(f: Integrand, x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f.source, x, "non-finite argument")
    return float(f.root.eval(x))
