"""Command-line interface: output formats, exit codes, caching."""

import io
import json
import os

import pytest

from lincat.cli import (
    EXIT_CAPACITY,
    EXIT_CHECK,
    EXIT_OK,
    EXIT_USAGE,
    format_expression,
    main,
    parse_plan,
)
from lincat.coeffs import Coeff
from lincat.lincomb import LinComb
from lincat.partitions import Partition


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def gen_file(tmp_path, text, name="gen.txt"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_dims_bell_golden():
    code, text = run(["dims", "--class", "all", "--upto", "8"])
    assert code == EXIT_OK
    assert text.strip() == "1 1 2 5 15 52 203 877 4140"


def test_dims_unknown_class():
    code, _ = run(["dims", "--class", "nope", "--upto", "4"])
    assert code == EXIT_USAGE


def test_usage_error_exit_code():
    code, _ = run(["no-such-command"])
    assert code == EXIT_USAGE
    code, _ = run([])
    assert code == EXIT_USAGE


def test_apply_map_join_byte_exact(tmp_path):
    path = gen_file(tmp_path, "abab\n")
    code, text = run(["apply-map", "J", path])
    assert code == EXIT_OK
    assert text == "-1*abab + 2*aaaa\n"


def test_apply_map_needs_delta(tmp_path):
    path = gen_file(tmp_path, "aaa\n")
    code, _ = run(["apply-map", "V+", path])
    assert code == EXIT_USAGE
    code, text = run(["apply-map", "V+", path, "--delta", "9"])
    assert code == EXIT_OK
    assert "aaa" in text


def test_apply_map_pole_exit_code(tmp_path):
    path = gen_file(tmp_path, "abab\n")
    code, _ = run(["apply-map", "D", path, "--delta", "0"])
    assert code == EXIT_CAPACITY


def test_closure_report(tmp_path):
    path = gen_file(tmp_path, "abab\n")
    report = tmp_path / "report.txt"
    code, _ = run(
        ["closure", path, "--l0", "4", "--report", str(report)]
    )
    assert code == EXIT_OK
    text = report.read_text()
    assert "dim[4] = 3" in text
    assert "EASY (proven)" in text


def test_closure_delta_binding_from_file(tmp_path):
    path = gen_file(tmp_path, "delta: 7\nabab - 2*aaaa\n")
    code, text = run(["closure", path, "--l0", "4"])
    assert code == EXIT_OK
    assert "NON-EASY CANDIDATE" in text


def test_check_table1_single_row():
    code, text = run(
        ["check-table1", "--rows", "join-crossing", "--delta", "7", "--l0", "4"]
    )
    assert code == EXIT_OK
    assert "== join-crossing (delta = 7) ==" in text
    assert "all rows: NON-EASY CANDIDATE" in text


def test_check_table1_unknown_row():
    code, _ = run(["check-table1", "--rows", "bogus"])
    assert code == EXIT_USAGE


def test_check_table1_cache_roundtrip(tmp_path, monkeypatch):
    monkeypatch.setenv("PARTCAT_CACHE_DIR", str(tmp_path / "cache"))
    argv = ["check-table1", "--rows", "join-crossing", "--delta", "7", "--l0", "4"]
    code1, text1 = run(argv)
    cache_files = list((tmp_path / "cache").rglob("*.json"))
    assert code1 == EXIT_OK
    assert cache_files
    payload = json.loads(cache_files[0].read_text())
    assert "report" in payload and payload["easy"] is False
    # second run must be served from cache with identical bytes
    code2, text2 = run(argv)
    assert (code2, text2) == (code1, text1)


def test_deterministic_reports():
    argv = ["check-table1", "--rows", "join-crossing", "--delta", "7", "--l0", "4"]
    assert run(argv) == run(argv)


def test_jobs_flag_accepted():
    base = ["dims", "--class", "pairings", "--upto", "6"]
    code1, text1 = run(base)
    code2, text2 = run(["--jobs", "4"] + base)
    assert (code1, text1) == (code2, text2) == (EXIT_OK, "1 0 1 0 3 0 15\n")


def test_tensor_rep_output(tmp_path):
    path = gen_file(tmp_path, "abab\n")
    code, text = run(["tensor-rep", path, "--N", "2", "--sigma", "qdef"])
    assert code == EXIT_OK
    lines = text.splitlines()
    assert lines[0] == "matrix 16x1"
    assert lines[-1] == "functor-check: PASS"


def test_tensor_rep_capacity(tmp_path):
    path = gen_file(tmp_path, "aaaaaaaaa\n")
    code, _ = run(["tensor-rep", path, "--N", "3"])
    assert code == EXIT_CAPACITY


def test_plan_command(tmp_path):
    gen = gen_file(tmp_path, "aabb\n")
    plan = tmp_path / "plan.txt"
    plan.write_text("vertices 1; edge 1.1-1.2; free 1.3,1.4\n")
    code, text = run(["plan", gen, "--plan", str(plan), "--delta", "7"])
    assert code == EXIT_OK
    assert text == "7*aa\n"


def test_plan_parse_errors(tmp_path):
    gen = gen_file(tmp_path, "aabb\n")
    plan = tmp_path / "plan.txt"
    plan.write_text("edge 1.1-1.2\n")
    code, _ = run(["plan", gen, "--plan", str(plan)])
    assert code == EXIT_USAGE


def test_format_expression_goldens():
    d = Coeff.symbol("d")
    x = LinComb.of(Partition.from_word("aa"), d * d) - LinComb.of(
        Partition.from_word("ab"), d
    )
    s = format_expression(x)
    assert "aa" in s and "ab" in s
    assert format_expression(LinComb.of(Partition.from_word("ab"), Coeff.from_q(-1))) == "-1*ab"
