import json
import subprocess
import sys

import pytest

from hesstop.cli import main, parse_range
from hesstop.diffgeo import arnold_P


def _poly_file(tmp_path, obj, name="f.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj, encoding="utf-8")
    return str(p)


def test_parse_range():
    assert parse_range("2..300") == (2, 300)
    assert parse_range("7") == (7, 7)
    assert parse_range("300..2") == (300, 2)  # rejected later, with exit 2


# -- identities -------------------------------------------------------------------------

def test_identities_eq1_full_range(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["identities", "--which", "eq1", "--m", "2..300", "--out", str(out)]) == 0
    reports = json.loads(out.read_text())
    assert [r["identity"] for r in reports] == ["EQ1"]
    assert reports[0]["status"] == "pass"
    assert "EQ1" in capsys.readouterr().out


def test_identities_degenerate_range(tmp_path):
    out = tmp_path / "r.json"
    assert main(["identities", "--which", "all", "--m", "2..2", "--out", str(out)]) == 0
    assert len(json.loads(out.read_text())) == 9


@pytest.mark.parametrize(
    "argv",
    [
        ["identities", "--m", "300..2"],
        ["identities", "--m", "2..1001"],
        ["identities", "--m", "a..b"],
        ["identities", "--which", "eq4"],
        ["identities", "--which", ","],
        ["identities", "--workers", "0"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err


def test_bad_env_workers(monkeypatch):
    monkeypatch.setenv("HESSTOP_WORKERS", "many")
    assert main(["identities", "--which", "eq3", "--m", "2..4"]) == 2
    monkeypatch.setenv("HESSTOP_WORKERS", "2")
    assert main(["identities", "--which", "eq3", "--m", "2..4"]) == 0


def test_identities_failure_exit_1(tmp_path, monkeypatch):
    from hesstop import identities

    monkeypatch.setitem(identities._CHECKS, identities.IdentityId.EQ7, lambda m, j: iter([(1, 2)]))
    out = tmp_path / "r.json"
    assert main(["identities", "--which", "eq7", "--m", "3..5", "--out", str(out)]) == 1
    rep = json.loads(out.read_text())[0]
    assert rep["first_failure"]["m"] == 3


# -- hyperbolic -----------------------------------------------------------------------------

def test_hyperbolic_saddle(tmp_path, capsys):
    f = _poly_file(tmp_path, {"degree": 2, "coeffs": ["1", "0", "-1"]})
    assert main(["hyperbolic", f]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "HYPERBOLIC"


def test_hyperbolic_elliptic(tmp_path, capsys):
    f = _poly_file(tmp_path, {"degree": 2, "coeffs": ["1", "0", "1"]})
    assert main(["hyperbolic", f]) == 1
    assert json.loads(capsys.readouterr().out)["verdict"] == "ELLIPTIC"


@pytest.mark.parametrize(
    "content",
    [
        {"degree": 2, "coeffs": ["1", "0"]},
        {"degree": 2, "coeffs": ["1", "0", "x"]},
        {"degree": 1, "coeffs": ["1", "1"]},
        "{not json",
    ],
)
def test_hyperbolic_malformed_exit_2(tmp_path, content):
    assert main(["hyperbolic", _poly_file(tmp_path, content)]) == 2


def test_non_utf8_file_exit_2(tmp_path):
    p = tmp_path / "bin.json"
    p.write_bytes(b"\xff\xfe\x00")
    assert main(["hyperbolic", str(p)]) == 2


def test_missing_file_exit_2(tmp_path):
    assert main(["hyperbolic", str(tmp_path / "nope.json")]) == 2


# -- arnold -----------------------------------------------------------------------------------

def test_arnold_writes_file(tmp_path):
    out = tmp_path / "f.json"
    assert main(["arnold", "--m", "4", "--n", "8", "-o", str(out)]) == 0
    obj = json.loads(out.read_text())
    assert obj["degree"] == 8
    assert main(["hyperbolic", str(out)]) == 0


def test_arnold_parity(capsys):
    assert main(["arnold", "--m", "4", "--n", "7"]) == 2
    assert "n - m even" in capsys.readouterr().err


def test_arnold_upper_bound(tmp_path, capsys):
    assert main(["arnold", "--m", "4", "--n", "16"]) == 2
    assert "n < m^2" in capsys.readouterr().err
    out = tmp_path / "f.json"
    assert main(["arnold", "--m", "4", "--n", "16", "--unchecked", "-o", str(out)]) == 0
    assert json.loads(out.read_text())["degree"] == 16


# -- index -------------------------------------------------------------------------------------

@pytest.mark.parametrize("m, value, twice", [(4, "-1", -2), (3, "-1/2", -1)])
def test_index_arnold_P(tmp_path, capsys, m, value, twice):
    f = _poly_file(tmp_path, arnold_P(m).to_json())
    assert main(["index", f]) == 0
    res = json.loads(capsys.readouterr().out)
    assert res["value"] == value
    assert res["value_times_two"] == twice


def test_index_elliptic_exit_1(tmp_path):
    f = _poly_file(tmp_path, {"degree": 2, "coeffs": ["1", "0", "1"]})
    assert main(["index", f]) == 1


def test_index_small_sample_count_uses_floor(tmp_path):
    f = _poly_file(tmp_path, arnold_P(3).to_json())
    assert main(["index", f, "--samples", "0"]) == 0  # the floor takes over


# -- isotopy ------------------------------------------------------------------------------------

def test_isotopy_sweep(tmp_path):
    out = tmp_path / "iso.json"
    argv = ["isotopy", "--m", "2..8", "--k", "1..3", "--t-samples", "5", "--theta-samples", "90", "--out", str(out)]
    assert main(argv) == 0
    reports = json.loads(out.read_text())
    assert len(reports) == 2 * 7 * 3
    for r in reports:
        if not r["hypothesis_violated"]:
            assert r["passed"]


def test_isotopy_boundary_flag(tmp_path):
    out = tmp_path / "iso.json"
    code = main(["isotopy", "--m", "2", "--k", "1", "--out", str(out)])
    phi = [r for r in json.loads(out.read_text()) if r["path"] == "PHI"][0]
    assert phi["hypothesis_violated"]
    assert code == 1  # nothing left in scope


def test_isotopy_odd_m():
    assert main(["isotopy", "--m", "3..3", "--k", "1..1"]) == 0


def test_isotopy_range_caps():
    assert main(["isotopy", "--m", "1..3"]) == 2
    assert main(["isotopy", "--m", "2..31"]) == 2
    assert main(["isotopy", "--k", "0..1"]) == 2
    assert main(["isotopy", "--t-samples", "0"]) == 2


# -- lemma --------------------------------------------------------------------------------------

def test_lemma(tmp_path):
    out = tmp_path / "lemma.json"
    assert main(["lemma", "--m", "2..8", "--k", "1..3", "--out", str(out)]) == 0
    obj = json.loads(out.read_text())
    assert {r["m"] for r in obj["bridge"]} == {2, 4, 6, 8}
    row = [r for r in obj["lemma"] if (r["m"], r["k"]) == (3, 1)][0]
    assert row["euler_constant"] == "-1"


# -- determinism and entry point ---------------------------------------------------------------------

@pytest.mark.parametrize(
    "argv",
    [
        ["identities", "--which", "eq2,eq10", "--m", "2..60"],
        ["isotopy", "--m", "3..5", "--k", "1..2", "--t-samples", "4", "--theta-samples", "60"],
        ["lemma", "--m", "2..6", "--k", "1..2"],
    ],
)
def test_reports_byte_identical_across_workers(tmp_path, argv):
    blobs = []
    for w in (1, 4):
        out = tmp_path / f"w{w}.json"
        assert main(argv + ["--workers", str(w), "--out", str(out)]) == 0
        blobs.append(out.read_bytes())
    assert blobs[0] == blobs[1]


def test_module_entry_point(tmp_path):
    out = tmp_path / "f.json"
    proc = subprocess.run(
        [sys.executable, "-m", "hesstop", "arnold", "--m", "3", "--n", "5", "-o", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    proc = subprocess.run([sys.executable, "-m", "hesstop", "identities", "--m", "9..1"], capture_output=True, text=True)
    assert proc.returncode == 2
    assert "usage" in proc.stderr
