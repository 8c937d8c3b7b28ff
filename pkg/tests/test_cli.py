import csv
import io
import json
import math
import subprocess
import sys

import pytest

from flannquad.cli import build_config, build_parser, comparison_subintervals, main
from flannquad.integrator import TrainedNetwork

SQRT_EXACT = 0.5 * (2.0 * math.sqrt(5.0) + math.asinh(2.0))
FAST = ["--degree", "6", "--tol", "1e-7"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def test_integrate_sqrt_defaults(capsys):
    code, out, _ = run(capsys, "integrate", "--f", "sqrt(1+x^2)", "--a", "0", "--b", "2")
    assert code == 0
    (row,) = rows(out)
    assert list(row) == ["value", "final_error", "iterations", "converged"]
    assert abs(float(row["value"]) - SQRT_EXACT) < 1e-3
    assert row["converged"] == "true"


def test_integrate_representable(capsys):
    code, out, _ = run(capsys, "integrate", "--f", "3*x^2", "--a", "0", "--b", "2", "--degree", "3", "--tol", "1e-12")
    assert code == 0
    assert float(rows(out)[0]["value"]) == pytest.approx(8.0, abs=1e-6)


def test_integrate_representable_default_tolerance(capsys):
    # E <= 1e-10 over 10 points bounds the integral error near 1e-5
    code, out, _ = run(capsys, "integrate", "--f", "3*x^2", "--a", "0", "--b", "2", "--degree", "3")
    assert code == 0
    assert float(rows(out)[0]["value"]) == pytest.approx(8.0, abs=2e-5)


def test_integrate_pole_at_limit_is_a_domain_error(capsys):
    code, out, err = run(capsys, "integrate", "--f", "1/x", "--a", "0", "--b", "2")
    assert code == 1
    assert out == ""
    assert "division by zero" in err and "x=0" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["integrate", "--f", "2x", "--a", "0", "--b", "1"],
        ["integrate", "--f", "y", "--a", "0", "--b", "1"],
        ["integrate", "--f", "x", "--a", "1", "--b", "0"],
        ["integrate", "--f", "x"],
        ["integrate", "--a", "0", "--b", "1"],
        ["integrate", "--f", "x", "--a", "0", "--b", "1", "--k", "2", "--degree", "4"],
        ["integrate", "--corpus", "nope"],
        ["integrate", "--f", "x", "--a", "0", "--b", "2", "--degree", "1", "--b1", "3"],
        ["sweep", "--f", "x", "--a", "0", "--b", "1", "--steps", "1"],
        ["trace", "--f", "x", "--a", "0", "--b", "1", "--every", "0"],
        ["integrate", "--f", "x", "--a", "zero", "--b", "1"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    code = None
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 1
    assert capsys.readouterr().err


def test_integrate_sub_interval(capsys):
    code, out, _ = run(capsys, "integrate", "--f", "x", "--a", "0", "--b", "2", "--degree", "2", "--tol", "1e-24", "--a1", "0.5", "--b1", "1")
    assert code == 0
    assert float(rows(out)[0]["value"]) == pytest.approx(0.375, abs=1e-10)


def test_integrate_json(capsys):
    code, out, _ = run(capsys, "integrate", "--corpus", "quadratic", "--degree", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert isinstance(data, list) and set(data[0]) == {"value", "final_error", "iterations", "converged"}
    assert data[0]["converged"] is True


def test_non_convergence_exits_2_but_writes_output(capsys):
    code, out, err = run(capsys, "integrate", "--corpus", "sqrt1px2", "--iters", "10")
    assert code == 2
    assert rows(out)[0]["converged"] == "false"
    assert "warning" in err


def test_sweep_sqrt(capsys):
    code, out, _ = run(capsys, "sweep", "--corpus", "sqrt1px2", "--steps", "20")
    assert code == 0
    table = rows(out)
    assert len(table) == 20
    assert list(table[0]) == ["b1", "flann_value", "exact_value", "abs_error"]
    assert float(table[-1]["b1"]) == 2.0
    assert max(float(r["abs_error"]) for r in table) <= 1e-3


def test_sweep_pow2x_final_row(capsys):
    code, out, _ = run(capsys, "sweep", "--corpus", "pow2x", "--steps", "20")
    assert code == 0
    assert float(rows(out)[-1]["exact_value"]) == pytest.approx(3 / math.log(2), abs=1e-7)


def test_sweep_linear_two_steps(capsys):
    # x^2 / 2 needs two links; one link only gives N' = const
    code, out, _ = run(capsys, "sweep", "--f", "x", "--a", "0", "--b", "2", "--degree", "2", "--tol", "1e-24", "--steps", "2")
    assert code == 0
    for r in rows(out):
        assert abs(float(r["flann_value"]) - float(r["exact_value"])) <= 1e-10


def test_trace_sqrt_defaults(capsys):
    code, out, _ = run(capsys, "trace", "--corpus", "sqrt1px2", "--every", "1000")
    assert code == 0
    table = rows(out)
    errors = [float(r["error"]) for r in table]
    assert table[0]["iteration"] == "0"
    assert errors[0] > errors[-1]
    assert errors[-1] <= 1e-10
    assert all(e2 <= e1 for e1, e2 in zip(errors, errors[1:]))


def test_trace_representable(capsys):
    code, out, _ = run(capsys, "trace", "--corpus", "quadratic", "--degree", "3", "--tol", "1e-12")
    assert code == 0
    assert float(rows(out)[-1]["error"]) <= 1e-12


def test_trace_divergence_exits_2(capsys):
    code, out, err = run(capsys, "trace", "--corpus", "x6", "--scale", "off", "--eta", "10")
    assert code == 2
    assert out == ""
    assert "diverged" in err


def test_compare_x6(capsys):
    code, out, _ = run(capsys, "compare", "--corpus", "x6", "--k", "10", "--degree", "8", "--steps", "4")
    assert code == 0
    assert out.splitlines()[0] == "# trapezoid_m=11 simpson_m=12"
    table = rows(out)
    assert list(table[0]) == ["b1", "exact", "flann", "trapezoid", "simpson", "flann_err", "trap_err", "simpson_err"]
    last = table[-1]
    assert float(last["exact"]) == pytest.approx(6**7 / 7, rel=1e-11)
    assert abs(float(last["flann_err"])) < abs(float(last["trap_err"]))
    assert abs(float(last["flann_err"])) < abs(float(last["simpson_err"]))


def test_compare_linear_all_agree(capsys):
    code, out, _ = run(capsys, "compare", "--f", "x", "--a", "0", "--b", "2", "--degree", "2", "--tol", "1e-24", "--steps", "5")
    assert code == 0
    for r in rows(out):
        for col in ("flann", "trapezoid", "simpson"):
            assert abs(float(r[col]) - float(r["exact"])) <= 1e-9


def test_compare_elliptic_exact_column(capsys):
    code, out, _ = run(capsys, "compare", "--corpus", "elliptic_half", "--steps", "3", *FAST)
    assert code == 0
    assert float(rows(out)[-1]["exact"]) == pytest.approx(1.3506439, abs=1e-7)


def test_compare_json_carries_subinterval_counts(capsys):
    code, out, _ = run(capsys, "compare", "--f", "x", "--a", "0", "--b", "1", "--degree", "2", "--k", "5", "--steps", "2", "--format", "json")
    data = json.loads(out)
    assert data[0]["trapezoid_m"] == 6 and data[0]["simpson_m"] == 6


def test_comparison_subintervals():
    assert comparison_subintervals(10) == (11, 12)
    assert comparison_subintervals(5) == (6, 6)


def test_corpus_list(capsys):
    code, out, _ = run(capsys, "corpus", "list")
    assert code == 0
    names = [r["name"] for r in rows(out)]
    assert {"sqrt1px2", "pow2x", "x6", "elliptic_half"} <= set(names)


def test_save_and_load_model(tmp_path, capsys):
    model = tmp_path / "net.json"
    code, out1, _ = run(capsys, "integrate", "--corpus", "sqrt1px2", *FAST, "--save-model", str(model))
    assert code == 0
    net = TrainedNetwork.load(model)
    assert net.basis.degree == 6 and net.domain == (0.0, 2.0)
    code, out2, _ = run(capsys, "integrate", "--load-model", str(model))
    assert code == 0
    assert rows(out2)[0]["value"] == rows(out1)[0]["value"]
    code, out3, _ = run(capsys, "sweep", "--corpus", "sqrt1px2", "--load-model", str(model), "--steps", "3")
    assert code == 0 and len(rows(out3)) == 3


def test_config_file_with_flag_override(tmp_path):
    cfg_file = tmp_path / "run.json"
    cfg_file.write_text(json.dumps({"function": "2^x", "a": 0, "b": "pi/2", "degree": 5, "k": 12}))
    args = build_parser().parse_args(["integrate", "--config", str(cfg_file), "--degree", "6", "--scale", "unit"])
    cfg = build_config(args)
    assert cfg.function == "2^x"
    assert cfg.b == pytest.approx(math.pi / 2)
    assert (cfg.degree, cfg.k, cfg.scaling) == (6, 12, "unit")


def test_config_file_rejects_unknown_keys(tmp_path, capsys):
    cfg_file = tmp_path / "run.json"
    cfg_file.write_text(json.dumps({"function": "x", "learning_rate": 0.1}))
    code, _, err = run(capsys, "integrate", "--config", str(cfg_file))
    assert code == 1 and "learning_rate" in err


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.csv"
    code, out, _ = run(capsys, "corpus", "list", "--output", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("name,expression")


def test_every_flag_honoured(capsys):
    common = ["--corpus", "pow2x", "--seed", "3", "--eta", "0.01", "--degree", "3", "--k", "6",
              "--iters", "50", "--tol", "1e-3", "--scale", "unit", "--init", "zeros", "--format", "csv"]
    for cmd in (["integrate"], ["sweep", "--steps", "2"], ["trace"], ["compare", "--steps", "2"]):
        code = main(cmd + common)
        assert code in (0, 2)
    capsys.readouterr()


def test_help_documents_grammar(capsys):
    with pytest.raises(SystemExit):
        main(["integrate", "--help"])
    out = capsys.readouterr().out
    assert "right-associative" in out and "sqrt" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "flannquad", "integrate", "--corpus", "linear", "--degree", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert float(rows(proc.stdout)[0]["value"]) == pytest.approx(2.0, abs=1e-9)
