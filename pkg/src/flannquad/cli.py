"""Command-line harness: integrate, sweep, trace, compare, corpus list.

Exit codes: 0 success, 1 usage/parse/domain error, 2 training divergence or
non-convergence.  Outputs are written even when training stops without
reaching the tolerance; the exit code reports it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from . import corpus
from .expr import ExpressionError, parse, parse_constant
from .integrator import OutOfDomainError, TrainedNetwork
from .quadrature import NonConvergenceError, reference, simpson, trapezoid
from .trainer import DivergenceError, TrainingConfig, train

GRAMMAR_HELP = """\
expression grammar for --f:
  numbers (1, 2.5, 1e-3), the variable x, constants pi and e
  operators + - * / ^  (^ binds tightest and is right-associative: 2^3^2 = 512;
  then unary minus: -x^2 = -(x^2); then * /; then + -), parentheses
  functions: sqrt exp log(natural) sin cos tan abs
  no implicit multiplication: write 2*x, not 2x
--a and --b accept constant expressions such as pi/2.
"""

SCALE_FLAGS = {"on": "centered", "off": "none", "unit": "unit"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    function: str | None = None
    a: float | None = None
    b: float | None = None
    degree: int = 8
    k: int = 10
    eta: float | None = None
    max_iterations: int = 500_000
    tolerance: float = 1e-10
    init: str = "uniform"
    seed: int = 0
    scaling: str = "centered"
    output: str | None = None
    format: str = "csv"
    steps: int = 20
    every: int = 1

    def training(self) -> TrainingConfig:
        return TrainingConfig(
            degree=self.degree,
            k=self.k,
            eta=self.eta,
            max_iterations=self.max_iterations,
            tolerance=self.tolerance,
            init=self.init,
            seed=self.seed,
            scaling=self.scaling,
        )

    def interval(self) -> tuple[float, float]:
        if self.a is None or self.b is None:
            raise UsageError("an interval is required: pass --a and --b, --corpus, or --load-model")
        if not self.b > self.a:
            raise UsageError(f"need a < b, got a={self.a}, b={self.b}")
        return self.a, self.b


# flag dest -> RunConfig field
_FLAG_FIELDS = {
    "f": "function",
    "a": "a",
    "b": "b",
    "degree": "degree",
    "k": "k",
    "eta": "eta",
    "iters": "max_iterations",
    "tol": "tolerance",
    "init": "init",
    "seed": "seed",
    "output": "output",
    "format": "format",
    "steps": "steps",
    "every": "every",
}


def _number(text: str) -> float:
    try:
        return parse_constant(text)
    except ExpressionError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then corpus entry, then config file, then explicit flags."""
    values: dict = {}
    if getattr(args, "corpus", None):
        entry = corpus.get(args.corpus)
        values.update(function=entry.expression, a=entry.a, b=entry.b)
    if getattr(args, "config", None):
        data = json.loads(Path(args.config).read_text())
        known = {f.name for f in fields(RunConfig)}
        unknown = set(data) - known
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        for key in ("a", "b"):
            if isinstance(data.get(key), str):
                data[key] = parse_constant(data[key])
        values.update(data)
    for dest, name in _FLAG_FIELDS.items():
        v = getattr(args, dest, None)
        if v is not None:
            values[name] = v
    if getattr(args, "scale", None) is not None:
        values["scaling"] = SCALE_FLAGS[args.scale]
    return replace(RunConfig(), **values)


# -- output ------------------------------------------------------------------


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.12g}"
    return str(v)


def _jsonable(v):
    if isinstance(v, (float, np.floating)):
        return float(f"{float(v):.12g}")
    return v


def render(rows: list[dict], fmt: str, preamble: str | None = None) -> str:
    if fmt == "json":
        return json.dumps([{k: _jsonable(v) for k, v in row.items()} for row in rows], indent=2) + "\n"
    buf = io.StringIO()
    if preamble:
        buf.write(f"# {preamble}\n")
    columns = list(rows[0]) if rows else []
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(row[c]) for c in columns])
    return buf.getvalue()


def emit(text: str, cfg: RunConfig) -> None:
    if cfg.output and cfg.output != "-":
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)


# -- commands ----------------------------------------------------------------


def _integrand(cfg: RunConfig):
    if not cfg.function:
        raise UsageError("an integrand is required: pass --f or --corpus")
    return parse(cfg.function)


def _network(args, cfg: RunConfig, f):
    """Load or train the network; returns (net, trace or None, cfg with interval)."""
    if getattr(args, "load_model", None):
        net = TrainedNetwork.load(args.load_model)
        if cfg.a is None and cfg.b is None:
            cfg = replace(cfg, a=net.domain[0], b=net.domain[1])
        return net, None, cfg
    a, b = cfg.interval()
    _check_endpoints(f, a, b)
    net, trace = train(f, a, b, cfg.training())
    if getattr(args, "save_model", None):
        net.save(args.save_model)
    return net, trace, cfg


def _check_endpoints(f, a: float, b: float) -> None:
    # Training only samples interior points; a pole at a limit must still be refused.
    f(a)
    f(b)


def _warn_unconverged(trace) -> int:
    if trace is None or trace.converged:
        return 0
    print(
        f"warning: stopped after {trace.iterations_run} iterations with E={trace.final_error:.6g} "
        "above the tolerance",
        file=sys.stderr,
    )
    return 2


def _grid(a: float, b: float, steps: int) -> list[float]:
    if steps < 2:
        raise UsageError("--steps must be at least 2")
    grid = [a + (b - a) * i / steps for i in range(1, steps)]
    return grid + [b]


def cmd_integrate(args, cfg: RunConfig) -> int:
    f = _integrand(cfg) if cfg.function else None
    if f is None and not args.load_model:
        raise UsageError("an integrand is required: pass --f or --corpus")
    net, trace, cfg = _network(args, cfg, f)
    a, b = cfg.interval()
    a1 = a if args.a1 is None else args.a1
    b1 = b if args.b1 is None else args.b1
    row = {
        "value": net.integrate(a1, b1),
        "final_error": net.final_error,
        "iterations": trace.iterations_run if trace else 0,
        "converged": trace.converged if trace else None,
    }
    emit(render([row], cfg.format), cfg)
    return _warn_unconverged(trace)


def cmd_sweep(args, cfg: RunConfig) -> int:
    f = _integrand(cfg)
    net, trace, cfg = _network(args, cfg, f)
    a, b = cfg.interval()
    rows = []
    for b1 in _grid(a, b, cfg.steps):
        approx = net.integrate(a, b1)
        exact = reference(f, a, b1).value
        rows.append({"b1": b1, "flann_value": approx, "exact_value": exact, "abs_error": abs(approx - exact)})
    emit(render(rows, cfg.format), cfg)
    return _warn_unconverged(trace)


def cmd_trace(args, cfg: RunConfig) -> int:
    if getattr(args, "load_model", None):
        raise UsageError("trace needs a training run; --load-model is not accepted")
    f = _integrand(cfg)
    a, b = cfg.interval()
    _check_endpoints(f, a, b)
    net, trace = train(f, a, b, cfg.training())
    if getattr(args, "save_model", None):
        net.save(args.save_model)
    if cfg.every < 1:
        raise UsageError("--every must be at least 1")
    errors = np.concatenate([[trace.initial_error], trace.errors])
    last = len(errors) - 1
    rows = [
        {"iteration": i, "error": float(errors[i])}
        for i in range(len(errors))
        if i % cfg.every == 0 or i == last
    ]
    emit(render(rows, cfg.format), cfg)
    return _warn_unconverged(trace)


def comparison_subintervals(k: int) -> tuple[int, int]:
    """k training points -> k + 1 trapezoid panels, next even count for Simpson."""
    m_trap = k + 1
    m_simp = m_trap if m_trap % 2 == 0 else m_trap + 1
    return m_trap, m_simp


def cmd_compare(args, cfg: RunConfig) -> int:
    f = _integrand(cfg)
    net, trace, cfg = _network(args, cfg, f)
    a, b = cfg.interval()
    m_trap, m_simp = comparison_subintervals(cfg.k)
    rows = []
    for b1 in _grid(a, b, cfg.steps):
        exact = reference(f, a, b1).value
        flann = net.integrate(a, b1)
        trap = trapezoid(f, a, b1, m_trap).value
        simp = simpson(f, a, b1, m_simp).value
        row = {
            "b1": b1,
            "exact": exact,
            "flann": flann,
            "trapezoid": trap,
            "simpson": simp,
            "flann_err": flann - exact,
            "trap_err": trap - exact,
            "simpson_err": simp - exact,
        }
        if cfg.format == "json":
            row.update(trapezoid_m=m_trap, simpson_m=m_simp)
        rows.append(row)
    emit(render(rows, cfg.format, preamble=f"trapezoid_m={m_trap} simpson_m={m_simp}"), cfg)
    return _warn_unconverged(trace)


def cmd_corpus_list(args, cfg: RunConfig) -> int:
    rows = [
        {"name": e.name, "expression": e.expression, "a": e.a, "b": e.b, "analytic": e.analytic, "note": e.note}
        for e in corpus.CORPUS.values()
    ]
    emit(render(rows, cfg.format), cfg)
    return 0


# -- argument parsing --------------------------------------------------------


def _common(p: argparse.ArgumentParser, training: bool = True) -> None:
    p.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
    p.add_argument("--output", "-o", help="write to this path instead of standard output")
    if not training:
        return
    p.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    p.add_argument("--corpus", help="take f, a and b from a built-in corpus entry")
    p.add_argument("--f", help="integrand expression in x")
    p.add_argument("--a", type=_number, help="lower limit of the training interval")
    p.add_argument("--b", type=_number, help="upper limit of the training interval")
    p.add_argument("--degree", type=int, help="number of monomial links n (default 8)")
    p.add_argument("--k", type=int, help="number of training points (default 10)")
    p.add_argument("--eta", type=float, help="learning rate (default: 0.95 * 2 / lambda_max)")
    p.add_argument("--iters", type=int, help="iteration budget (default 500000)")
    p.add_argument("--tol", type=float, help="stop once E <= tol (default 1e-10)")
    p.add_argument("--init", choices=("uniform", "zeros"), help="weight initialisation (default uniform)")
    p.add_argument("--seed", type=int, help="seed for uniform initialisation (default 0)")
    p.add_argument(
        "--scale",
        choices=tuple(SCALE_FLAGS),
        help="basis scaling: on = map [a,b] to [-1,1] (default), unit = map to [0,1], off = raw x",
    )
    p.add_argument("--save-model", help="write the trained network as JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="flannquad",
        description="Definite integrals from a functional-link network trained so that N'(x) ~ f(x).",
        epilog=GRAMMAR_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("integrate", help="train and report N(b) - N(a)", epilog=GRAMMAR_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    _common(p)
    p.add_argument("--load-model", help="skip training and use a saved network")
    p.add_argument("--a1", type=_number, help="lower query limit (default a)")
    p.add_argument("--b1", type=_number, help="upper query limit (default b)")
    p.set_defaults(handler=cmd_integrate)

    p = sub.add_parser("sweep", help="train once, integrate over [a, b1] on a grid of b1")
    _common(p)
    p.add_argument("--load-model", help="skip training and use a saved network")
    p.add_argument("--steps", type=int, help="number of b1 grid points (default 20)")
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("trace", help="error E per gradient-descent iteration")
    _common(p)
    p.add_argument("--every", type=int, help="emit every N-th iteration (default 1)")
    p.set_defaults(handler=cmd_trace)

    p = sub.add_parser("compare", help="FLANN vs trapezoid vs Simpson vs reference")
    _common(p)
    p.add_argument("--load-model", help="skip training and use a saved network")
    p.add_argument("--steps", type=int, help="number of b1 grid points (default 20)")
    p.set_defaults(handler=cmd_compare)

    p = sub.add_parser("corpus", help="built-in integrands")
    corpus_sub = p.add_subparsers(dest="corpus_command", required=True, parser_class=_Parser)
    q = corpus_sub.add_parser("list", help="list corpus entries")
    _common(q, training=False)
    q.set_defaults(handler=cmd_corpus_list)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
        return args.handler(args, cfg)
    except DivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ExpressionError, OutOfDomainError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
