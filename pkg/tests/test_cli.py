import io
import json
import subprocess
import sys

import pytest

from stringz.cli import bridge_dot, execute
from stringz.presentation import PRESETS, load_preset, parse_presentation


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = execute(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(autouse=True)
def no_colour(monkeypatch):
    monkeypatch.setenv("STRINGZ_COLOR", "never")


def test_kg_dim():
    assert run("kg-dim", "lam2.alg")[:2] == (0, "3\n")
    assert run("kg-dim", "a2")[:2] == (0, "0\n")
    assert run("kg-dim", "gp23.alg")[:2] == (0, "undefined\n")


def test_rank_with_trace():
    code, out, _ = run("rank", "lam3.alg", "prufer:[a3 b3-]@s")
    assert code == 0 and out.splitlines() == ["3", "trace: bandsprufer: s=2,t=0"]


def test_rank_non_domestic_is_domain_error():
    code, out, err = run("rank", "gp23", "string:[a]")
    assert code == 1 and out == "" and err.startswith("stringz: error:")


@pytest.mark.parametrize("argv", [
    ("rank", "lam2", "string:[a b- c]"),
    ("rank", "lam2", "nonsense"),
    ("kg-dim", "no-such-file.alg"),
    ("frobnicate", "lam2"),
    ("points", "lam2", "--bounds", "4,2"),
    ("nbhd", "lam2", "string:[(e d-)^inf]", "zero", "string:[e g]"),
    ("nbhd", "lam2", "string:[(e d-)^inf]", "0", "string:[e g]"),
    ("bridge-quiver", "lam2", "--dot", "--json"),
])
def test_usage_errors_exit_2(argv):
    code, out, err = run(*argv)
    assert code == 2 and out == "" and err


def test_invalid_algebra_file(tmp_path):
    f = tmp_path / "bad.alg"
    f.write_text("algebra bad\nvertices: 1\narrows: a: 1 -> 9\n")
    code, _, err = run("info", str(f))
    assert code == 2 and "3:" in err and "unknown vertex" in err


def test_validate_reports_violations(tmp_path):
    f = tmp_path / "three.alg"
    f.write_text("algebra three\nvertices: 1 2\narrows: a: 1 -> 2, b: 1 -> 2, c: 1 -> 2\n")
    code, out, _ = run("validate", str(f))
    assert code == 1 and "not a string algebra" in out


@pytest.mark.parametrize("name", PRESETS)
def test_validate_presets(name):
    assert run("validate", name)[0] == 0


def test_info():
    code, out, _ = run("info", "lam2")
    assert code == 0 and "2-domestic" in out
    code, out, _ = run("info", "gp23")
    assert code == 0 and "non-domestic" in out


def test_nbhd_both_forms():
    a = run("nbhd", "lam3", "generic:[b2 a2-]", "2", "band:[b2 a2-]@l#5")
    b = run("nbhd", "lam3", "generic:[b2 a2-]", "band:[b2 a2-]@l#5", "--nbhd-index", "2")
    assert a == b == (0, "true\n", "")
    assert run("nbhd", "lam3", "generic:[b2 a2-]", "2", "band:[b2 a2-]@l#1")[1] == "false\n"
    out = run("nbhd", "lam2", "string:[(e d-)^inf]", "1", "prufer:[a b-]@s")[1]
    assert out == "not-covered\n"


def test_dual():
    code, out, _ = run("dual", "lam2", "prufer:[e d-]@s")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "adic:[d e-]@s*"
    text = "\n".join(lines[2:]) + "\n"
    assert parse_presentation(text).name == "lam2^op"


def test_hom():
    code, out, _ = run("hom", "kron", "1_2", "a b-")
    assert code == 0
    assert "graph maps: 2" in out and "oracle dimension: 2" in out


def test_points_listing():
    code, out, _ = run("points", "lam2", "--bounds", "2,1,1")
    rows = [l.split("\t") for l in out.splitlines()]
    assert code == 0 and rows and all(len(r) == 4 for r in rows)
    assert max(int(r[0]) for r in rows) == 3


def test_json_report_schema():
    code, out, _ = run("points", "lam2", "--json", "--bounds", "2,1,1")
    data = json.loads(out)
    assert set(data) == {"algebra", "domestic", "n_domestic", "bands", "bridge_quiver",
                         "kg_dimension", "points"}
    assert data["n_domestic"] == 2 and data["kg_dimension"] == 3
    assert all(set(b) == {"repr", "inverse_of"} for b in data["bands"])
    assert set(data["bridge_quiver"]) == {"vertices", "edges"}
    for e in data["bridge_quiver"]["edges"]:
        assert set(e) == {"src", "dst", "word", "flag"}
    for pt in data["points"]:
        assert set(pt) == {"expr", "kind", "rank", "trace"}


def test_json_report_non_domestic():
    data = json.loads(run("info", "gp23", "--json")[1])
    assert data["domestic"] is False
    assert data["bridge_quiver"] is None and data["kg_dimension"] is None


@pytest.mark.parametrize("argv", [("info", "x5", "--json"), ("points", "lam3", "--json"),
                                  ("bridge-quiver", "x4", "--json")])
def test_json_is_byte_stable(argv):
    assert run(*argv) == run(*argv)


def test_dot_output():
    code, out, _ = run("bridge-quiver", "lam3", "--dot")
    assert code == 0 and out.startswith("digraph") and "dashed" in out
    assert out == bridge_dot(load_preset("lam3")) + "\n"


def test_colour_modes(monkeypatch):
    monkeypatch.setenv("STRINGZ_COLOR", "always")
    assert "\x1b[" in run("info", "lam2")[1]
    monkeypatch.setenv("STRINGZ_COLOR", "auto")
    assert "\x1b[" not in run("info", "lam2")[1]
    monkeypatch.setenv("STRINGZ_COLOR", "sometimes")
    assert run("info", "lam2")[0] == 2


def test_preset_file_round_trip(tmp_path):
    for name in PRESETS:
        f = tmp_path / f"copy_{name}.alg"
        f.write_text(load_preset(name).to_text())
        assert run("info", str(f), "--json")[1] == run("info", name, "--json")[1]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "stringz", "kg-dim", "lam3"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "4\n"
