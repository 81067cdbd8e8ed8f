import csv
import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from crgstir.cli import EXIT_CAP, EXIT_FAIL, EXIT_OK, EXIT_USAGE, parse_range, run
from crgstir.qpoly import IntPoly
from crgstir.stirling import q_stirling2, stirling2


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_qtable_text(capsys):
    code, out, _ = call(capsys, "qtable", "--m", "2", "--n", "2")
    assert code == EXIT_OK
    assert "2+q+q^2" in out


def test_table_json_matches_library(capsys):
    code, out, _ = call(capsys, "table", "--m", "2", "--n", "0..4", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    for cell in data["cells"]:
        assert int(cell["value"]) == stirling2(cell["m"], cell["n"], cell["k"])


def test_table_csv(capsys):
    code, out, _ = call(capsys, "table", "--m", "3", "--n", "3", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["value"]) for r in rows] == [stirling2(3, 3, k) for k in range(4)]


def test_qtable_json_round_trips(capsys):
    code, out, _ = call(capsys, "qtable", "--m", "2", "--n", "3", "--format", "json")
    assert code == EXIT_OK
    cells = json.loads(out)["cells"]
    assert len(cells) == 4
    assert all(c["m"] == 2 and c["n"] == 3 for c in cells)
    assert [IntPoly.from_json(c["value"]) for c in cells] == [q_stirling2(2, 3, k) for k in range(4)]


def test_qtable_csv_is_usage_error(capsys):
    code, _, err = call(capsys, "qtable", "--m", "2", "--n", "2", "--format", "csv")
    assert code == EXIT_USAGE
    assert err


def test_enumerate_csv(capsys):
    code, out, _ = call(capsys, "enumerate", "--m", "2", "--n", "2", "--k", "1", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == stirling2(2, 2, 1)
    assert sorted(int(r["inv"]) for r in rows) == [0, 0, 1, 2]


def test_enumerate_full_kind(capsys):
    code, out, _ = call(capsys, "enumerate", "--m", "2", "--n", "2", "--k", "0", "--kind", "full")
    assert code == EXIT_OK
    assert len([line for line in out.splitlines() if line.strip()]) >= 3


def test_lattice_geometric(capsys):
    code, out, _ = call(capsys, "lattice", "--m", "2", "--n", "2", "--geometric", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)


def test_lattice_cap_exit(capsys, monkeypatch):
    monkeypatch.setenv("CRGSTIR_MAX_ELEMENTS", "10")
    code, _, err = call(capsys, "lattice", "--m", "3", "--n", "3")
    assert code == EXIT_CAP
    assert "cap" in err


def test_artin_super(capsys):
    code, out, _ = call(capsys, "artin", "--m", "3", "--n", "2", "--super", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)


def test_verify_passing_suite(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "alt-sums", "--m", "1..3", "--n", "0..3")
    assert code == EXIT_OK
    assert "verified" in out and "failed" not in out.replace("0 failed", "")


def test_verify_failing_suite_exits_one(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "worked-values")
    assert code == EXIT_FAIL
    assert "eta(example)" in out


def test_verify_json(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "matrix", "--m", "2", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    reports = data["reports"] if isinstance(data, dict) else data
    assert reports[0]["status"] == "verified"


def test_unknown_suite(capsys):
    code, _, _ = call(capsys, "verify", "--suite", "nope")
    assert code == EXIT_USAGE


def test_bad_argument_is_usage_error(capsys):
    code, _, _ = call(capsys, "table", "--m", "x", "--n", "2")
    assert code == EXIT_USAGE


def test_output_file(tmp_path, capsys):
    target = tmp_path / "t.json"
    code, out, _ = call(capsys, "table", "--m", "1", "--n", "3", "--format", "json", "--output", str(target))
    assert code == EXIT_OK
    assert out == ""
    assert json.loads(target.read_text())["cells"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "crgstir", "qtable", "--m", "2", "--n", "2"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "2+q+q^2" in proc.stdout


@pytest.mark.parametrize("text, expected", [("3", [3]), ("1..4", [1, 2, 3, 4]), ("0,2,5", [0, 2, 5])])
def test_parse_range(text, expected):
    assert list(parse_range(text)) == expected


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 6), st.integers(0, 6))
def test_parse_range_interval_property(a, b):
    got = list(parse_range(f"{a}..{b}")) if a <= b else None
    if got is not None:
        assert got == list(range(a, b + 1))
