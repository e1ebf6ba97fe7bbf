from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from hfib import cli
from hfib.report import Failure, IdentityReport


def run_cli(*argv: str, capsys) -> tuple[int, str]:
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_fib_text(capsys) -> None:
    code, out = run_cli("fib", "--n", "5", capsys=capsys)
    assert code == 0
    assert out.strip() == "1 + 3*h*hp + h^2*hp + h^2*hp^2"


def test_fib_zero(capsys) -> None:
    code, out = run_cli("fib", "--n", "0", capsys=capsys)
    assert code == 0
    assert out.strip() == "0"


def test_fib_routes_agree(capsys) -> None:
    outputs = set()
    for route in ("diagonal", "recurrence", "hypergeom", "binet"):
        code, out = run_cli("fib", "--n", "7", "--route", route, capsys=capsys)
        assert code == 0
        outputs.add(out)
    assert len(outputs) == 1


def test_fib_json_round_trip(capsys) -> None:
    from hfib.algebra import HPoly
    from hfib.fibonacci import hfib_diagonal

    code, out = run_cli("fib", "--n", "8", "--format", "json", capsys=capsys)
    assert code == 0
    data = json.loads(out)
    assert data["n"] == 8
    assert HPoly.from_json_terms(data["terms"]) == hfib_diagonal(8)


def test_fib_negative_index_errors(capsys) -> None:
    code = cli.main(["fib", "--n", "-1"])
    captured = capsys.readouterr()
    assert code == 2
    assert "error:" in captured.err
    assert captured.out == ""


def test_pascal_markdown(capsys) -> None:
    code, out = run_cli("pascal", "--rows", "2", capsys=capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "| n | k | value |"
    assert lines[-1] == "| 2 | 2 | h^2*hp + h^2*hp^2 |"


def test_pascal_csv_parses(capsys) -> None:
    code, out = run_cli("pascal", "--rows", "3", "--format", "csv", capsys=capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "k", "value"]
    assert len(rows) == 1 + 4 + 3 + 2 + 1


def test_pascal_json(capsys) -> None:
    code, out = run_cli("pascal", "--rows", "1", "--format", "json", capsys=capsys)
    assert code == 0
    data = json.loads(out)
    assert [row["n"] for row in data["rows"]] == [0, 1]


def test_table_alias_and_footnote(capsys) -> None:
    code, out = run_cli("table", "--max", "9", capsys=capsys)
    assert code == 0
    code2, out2 = run_cli("table2", "--max", "9", capsys=capsys)
    assert code2 == 0
    assert out == out2
    assert "Note:" in out


def test_table_json_conventions(capsys) -> None:
    code, out = run_cli("table", "--max", "10", "--format", "json", capsys=capsys)
    assert code == 0
    data = json.loads(out)
    assert len(data["rows"]) == 11
    assert data["rows"][10]["classical"] == 55
    assert data["pinned_conventions"]


def test_op_with_eval(capsys) -> None:
    code, out = run_cli("op", "--n", "5", "--eval", capsys=capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "1 + 3*D + D^2"
    assert lines[1] == "1 + 3*h*hp + h^2*hp + h^2*hp^2"


def test_gf_json(capsys) -> None:
    code, out = run_cli("gf", "--which", "fib", "--order", "5", "--format", "json", capsys=capsys)
    assert code == 0
    data = json.loads(out)
    assert len(data["coefficients"]) == 5
    assert data["coefficients"][0] == []


def test_gf_shifted_requires_valid_m(capsys) -> None:
    code = cli.main(["gf", "--which", "shifted", "--m", "0"])
    captured = capsys.readouterr()
    assert code == 2
    assert "error:" in captured.err


def test_qh_subcommands(capsys) -> None:
    code, out = run_cli("qh", "binom", "--n", "2", "--k", "1", capsys=capsys)
    assert code == 0
    assert out.strip() == "h*hp + h*hp*q"
    code, out = run_cli("qh", "fib", "--n", "3", capsys=capsys)
    assert code == 0
    assert out.strip() == "1 + h*hp*q"


def test_eval_text_and_json(capsys) -> None:
    code, out = run_cli("eval", "--n", "5", "--h", "1", "--hp", "1", capsys=capsys)
    assert code == 0
    assert out.strip() == "6"
    code, out = run_cli(
        "eval", "--n", "5", "--h", "1/10", "--hp", "1/2", "--format", "json", capsys=capsys
    )
    assert code == 0
    data = json.loads(out)
    assert data["value"] == "463/400"


def test_eval_rejects_bad_rational(capsys) -> None:
    with pytest.raises(SystemExit):
        cli.main(["eval", "--n", "2", "--h", "x", "--hp", "1"])


def test_verify_single_suite_json(capsys) -> None:
    code, out = run_cli("verify", "operators", "--max", "6", capsys=capsys)
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "hfib-report/1"
    assert data["suite"] == "operators"
    assert data["failures"] == []


def test_verify_all_json_shape(capsys) -> None:
    code, out = run_cli("verify", "all", "--max", "6", capsys=capsys)
    assert code == 0
    data = json.loads(out)
    assert data["failures"] == 0
    assert [s["suite"] for s in data["suites"]] == [
        "pascal",
        "fib",
        "operators",
        "gf",
        "weighted",
        "qh",
    ]


def test_verify_qh_includes_experimental(capsys) -> None:
    code, out = run_cli("verify", "qh", "--max", "6", capsys=capsys)
    assert code == 0
    data = json.loads(out)
    assert data["experimental"][0]["suite"] == "qh-experimental"
    assert data["failures"] == 0


def test_verify_strict_adds_gate(capsys) -> None:
    code, out = run_cli("verify", "qh", "--max", "6", "--strict", capsys=capsys)
    assert code == 0
    data = json.loads(out)
    assert any(s["suite"] == "qh-strict" for s in data["suites"])


def test_verify_markdown(capsys) -> None:
    code, out = run_cli("verify", "fib", "--max", "8", "--format", "markdown", capsys=capsys)
    assert code == 0
    assert out.startswith("fib: PASS")
    assert "pinned:" in out


def test_verify_weighted_divergent_params_error(capsys) -> None:
    code = cli.main(["verify", "weighted", "--h", "1/10"])
    captured = capsys.readouterr()
    assert code == 2
    assert "decrease |h|" in captured.err


def test_verify_failure_exit_code(monkeypatch, capsys) -> None:
    failing = IdentityReport("pascal-recurrences")
    failing.cases = 1
    failing.failures.append(Failure({"n": 1}, "1", "2"))
    monkeypatch.setattr(cli.pascal, "verify_pascal", lambda n_max, seed=None: [failing])
    code, out = run_cli("verify", "pascal", capsys=capsys)
    assert code == 1
    data = json.loads(out)
    assert data["failures"]


def test_cli_determinism_subprocess() -> None:
    cmd = [sys.executable, "-m", "hfib.cli", "verify", "all", "--max", "6"]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_entry_point_installed() -> None:
    result = subprocess.run(["hfib", "fib", "--n", "3"], capture_output=True, text=True)
    if result.returncode != 0 and "No such file" in (result.stderr or ""):
        pytest.skip("console script not on PATH in this environment")
    assert result.returncode == 0
    assert result.stdout.strip() == "1 + h*hp"
