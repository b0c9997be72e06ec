import csv
import hashlib
import json
import os
import subprocess
import sys

import pytest

from reslab import cli


def run(*argv):
    try:
        return cli.main([str(a) for a in argv])
    except SystemExit as exc:
        return exc.code


def counts_column(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [r["count"] for r in rows]


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


def snapshot(root):
    out = {}
    for dirpath, _, files in os.walk(root):
        for f in files:
            full = os.path.join(dirpath, f)
            out[os.path.relpath(full, root)] = open(full, "rb").read()
    return out


# --- usage ----------------------------------------------------------------------------

def test_no_command():
    assert run() == 64


@pytest.mark.parametrize("argv", [
    ["nosuch"],
    ["resonances", "--sheet", "0"],
    ["resonances", "--dim", "3"],
    ["resonances", "--bc", "dirichlet", "--h0", "1.0"],
    ["szero", "--eps", "1e-2,abc"],
    ["resonances", "--rmax", "-1"],
    ["detgrowth", "--axis", "sideways"],
])
def test_usage_errors(tmp_path, argv):
    assert run(*argv, "--out", tmp_path) == 64


def test_unknown_config_key(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"bogus": 1}))
    assert run("szero", "--config", cfg, "--out", tmp_path / "o") == 64


def test_config_precedence(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"dim": 4, "l_max": 2}))
    assert run("szero", "--config", cfg, "--l-max", 1, "--out", tmp_path / "o") == 0
    summary = read_json(tmp_path / "o" / "summary.json")
    assert summary["problem"]["d"] == 4
    assert summary["params"]["l_max"] == 1


# --- commands ---------------------------------------------------------------------------

def test_szero_pass(tmp_path):
    assert run("szero", "--out", tmp_path) == 0
    s = read_json(tmp_path / "summary.json")
    assert s["pass"] is True
    assert set(s["problem"]) >= {"d", "R", "bc", "h0"}
    assert (tmp_path / "szero.csv").exists()


def test_duality_pass(tmp_path):
    assert run("duality", "--ls", "0", "--zeros", 1, "--out", tmp_path) == 0
    assert run("duality", "--bc", "neumann", "--ls", "1", "--zeros", 1,
               "--out", tmp_path / "n") == 0


@pytest.mark.parametrize("axis", ["real", "negray", "imag"])
def test_detgrowth(tmp_path, axis):
    code = run("detgrowth", "--axis", axis, "--points", 6, "--min", 5, "--max", 30,
               "--out", tmp_path)
    assert code == 0
    with open(tmp_path / "detgrowth.csv", newline="") as fh:
        header = next(csv.reader(fh))
    if axis == "imag":
        assert "debye_rel_diff" in header
    if axis == "negray":
        assert "route_diff" in header


def test_resonances_small_rmax_all_zero(tmp_path):
    assert run("resonances", "--rmax", 0.5, "--out", tmp_path) == 0
    assert set(counts_column(tmp_path / "counting.csv")) == {"0"}


def test_sheet_symmetry_counts(tmp_path):
    a, b = tmp_path / "p", tmp_path / "n"
    assert run("resonances", "--sheet", 1, "--rmax", 6, "--out", a) == 0
    assert run("resonances", "--sheet", -1, "--rmax", 6, "--out", b) == 0
    assert counts_column(a / "counting.csv") == counts_column(b / "counting.csv")
    with open(b / "resonances.csv", newline="") as fh:
        assert {r["sheet_m"] for r in csv.DictReader(fh)} == {"-1"}


def test_resonance_csv_columns(tmp_path):
    assert run("resonances", "--rmax", 4, "--out", tmp_path) == 0
    with open(tmp_path / "resonances.csv", newline="") as fh:
        header = next(csv.reader(fh))
    assert header == ["sheet_m", "l", "re_lambda0", "im_lambda0", "modulus", "arg_on_sheet",
                      "zero_order", "mult", "residual_log10"]


def test_determinism_and_manifest_replay(tmp_path):
    a, b, c = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    argv = ["weyl", "--points", 6, "--min", 10, "--max", 25]
    assert run(*argv, "--out", a) == 0
    assert run(*argv, "--out", b) == 0
    assert (a / "weyl.csv").read_bytes() == (b / "weyl.csv").read_bytes()
    assert run("weyl", "--from-manifest", a / "manifest.json", "--out", c) == 0
    assert (a / "weyl.csv").read_bytes() == (c / "weyl.csv").read_bytes()
    man = read_json(a / "manifest.json")
    assert man["suites"] == {"weyl": True}
    assert man["outputs"]["weyl.csv"] == hashlib.sha256((a / "weyl.csv").read_bytes()).hexdigest()


def test_manifest_command_mismatch(tmp_path):
    assert run("szero", "--out", tmp_path / "a") == 0
    assert run("weyl", "--from-manifest", tmp_path / "a" / "manifest.json",
               "--out", tmp_path / "b") == 64


def test_no_writes_outside_out(tmp_path, monkeypatch):
    work = tmp_path / "cwd"
    work.mkdir()
    monkeypatch.chdir(work)
    before = snapshot(tmp_path)
    assert run("szero", "--out", tmp_path / "o") == 0
    after = snapshot(tmp_path)
    changed = {k for k in after if before.get(k) != after[k]}
    assert changed and all(k.startswith("o" + os.sep) for k in changed)


def test_csv_float_format(tmp_path):
    assert run("szero", "--out", tmp_path) == 0
    with open(tmp_path / "szero.csv", newline="") as fh:
        rows = list(csv.reader(fh))[1:]
    for row in rows:
        for cell in row:
            assert repr(float(cell)) == repr(float(repr(float(cell))))


# --- plot -------------------------------------------------------------------------------

def test_plot_counting(tmp_path):
    assert run("resonances", "--rmax", 4, "--out", tmp_path) == 0
    assert run("plot", "--input", tmp_path / "counting.csv", "--out", tmp_path) == 0
    text = (tmp_path / "counting.gp").read_text()
    assert "set logscale xy" in text
    assert "guide(x)" in text and "slope 2" in text


def test_plot_detgrowth(tmp_path):
    assert run("detgrowth", "--points", 6, "--out", tmp_path) == 0
    assert run("plot", "--input", tmp_path / "detgrowth.csv", "--out", tmp_path) == 0
    assert "set logscale xy" in (tmp_path / "detgrowth.gp").read_text()


@pytest.mark.parametrize("content", ["", "a,b\n1,2\n", "sigma,log_abs_f\nx,y\n"])
def test_plot_malformed(tmp_path, content):
    bad = tmp_path / "detgrowth.csv"
    bad.write_text(content)
    assert run("plot", "--input", bad, "--out", tmp_path) == 65


def test_plot_missing_file(tmp_path):
    # an unreadable --input is a usage problem, not bad data
    assert run("plot", "--input", tmp_path / "none.csv", "--out", tmp_path) == 64


# --- hidden self-test and console script ---------------------------------------------------

def test_bessel_selftest(tmp_path, capsys):
    assert run("bessel-selftest", "--out", tmp_path) == 0
    out = capsys.readouterr().out
    assert "transition" in out and "continuation" in out
    assert (tmp_path / "bessel_selftest.json").exists()


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "reslab.cli", "szero", "--out", str(tmp_path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "szero: pass" in proc.stdout
