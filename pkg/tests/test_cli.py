import math
import os
import subprocess
import sys

import pytest

from cantorkit.cli import run

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
TRI3 = os.path.join(ROOT, "inputs", "tri3.txt")
FULL2 = os.path.join(ROOT, "inputs", "full2.txt")
SCHOTTKY4 = os.path.join(ROOT, "inputs", "schottky4.txt")
SIGNAL3 = os.path.join(ROOT, "inputs", "signal_tri3.txt")
SIGNAL2 = os.path.join(ROOT, "inputs", "signal_full2.txt")
GRAPH3 = os.path.join(ROOT, "inputs", "graph3.txt")
LOOPS3 = os.path.join(ROOT, "inputs", "loops3.txt")


def keys(out):
    d = {}
    for line in out.splitlines():
        if " = " in line:
            k, v = line.split(" = ", 1)
            d[k.strip()] = v.strip()
    return d


def test_perron_output(capsys):
    assert run(["perron", "--matrix", TRI3]) == 0
    d = keys(capsys.readouterr().out)
    assert float(d["radius"]) == pytest.approx(1 + math.sqrt(2), abs=1e-10)
    assert float(d["delta"]) == pytest.approx(
        math.log(1 + math.sqrt(2)) / math.log(3), abs=1e-10)
    assert float(d["p_1"]) == pytest.approx(math.sqrt(2) - 1, abs=1e-9)
    assert int(d["iterations"]) > 0


def test_words_listing(capsys):
    assert run(["words", "--matrix", TRI3, "--level", "2"]) == 0
    out = capsys.readouterr().out.split()
    assert out == ["00", "01", "10", "11", "12", "21", "22"]


def test_measure_value(capsys):
    assert run(["measure", "--matrix", TRI3, "--word", "12"]) == 0
    d = keys(capsys.readouterr().out)
    assert float(d["measure"]) == pytest.approx(
        (3 * math.sqrt(2) - 4) / 2, abs=1e-9)


def test_op_and_signal_files(tmp_path, capsys):
    out = tmp_path / "g.txt"
    assert run(["op", "s", "--matrix", TRI3, "--i", "1",
                "--signal", SIGNAL3, "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("3 3\n")
    capsys.readouterr()
    # applying S then S* recovers the signal values on D_1 (here: everything)
    back = tmp_path / "h.txt"
    assert run(["op", "sstar", "--matrix", TRI3, "--i", "1",
                "--signal", str(out), "--out", str(back)]) == 0
    assert run(["op", "word", "--matrix", TRI3, "--word", "1", "--adjoint",
                "--signal", str(out)]) == 0
    assert capsys.readouterr().out == back.read_text()


def test_op_ck_residual_small(capsys):
    assert run(["op", "ck", "--matrix", SCHOTTKY4, "--level", "3"]) == 0
    d = keys(capsys.readouterr().out)
    assert float(d["residual"]) < 1e-11


def test_fixed_point_residual(capsys):
    assert run(["op", "fixed-point", "--matrix", TRI3]) == 0
    out = capsys.readouterr().out
    assert float(keys(out)["pf_residual"]) < 1e-10


def test_fourier_csv(capsys):
    assert run(["fourier", "--matrix", FULL2, "--signal", SIGNAL2,
                "--level", "5", "--tmin", "0", "--tmax", "10",
                "--tcount", "3"]) == 0
    rows = [ln.split(", ") for ln in capsys.readouterr().out.splitlines()]
    assert len(rows) == 3
    assert [r[0] for r in rows] == ["0", "5", "10"]
    # t = 0 gives the total mass ||f||^2 = 1/2 for this two-cylinder signal
    assert float(rows[0][1]) == pytest.approx(0.5, abs=1e-12)
    assert float(rows[0][2]) == 0.0


def test_kms_outputs(capsys):
    assert run(["kms", "--matrix", TRI3, "--a", "12", "--b", "12"]) == 0
    d = keys(capsys.readouterr().out)
    assert float(d["value_re"]) == pytest.approx(
        (3 * math.sqrt(2) - 4) / 2, abs=1e-9)
    assert run(["kms", "--matrix", TRI3, "--letter", "1"]) == 0
    d = keys(capsys.readouterr().out)
    assert float(d["ratio"]) == pytest.approx(float(d["radius"]), abs=1e-9)


def test_wavelet_pipeline(tmp_path, capsys):
    coeffs = tmp_path / "c.txt"
    resynth = tmp_path / "r.txt"
    assert run(["wavelets", "analyze", "--matrix", TRI3, "--signal", SIGNAL3,
                "--out", str(coeffs)]) == 0
    d = keys(capsys.readouterr().out)
    assert float(d["parseval_residual"]) < 1e-9
    assert run(["wavelets", "synthesize", "--matrix", TRI3,
                "--coeffs", str(coeffs), "--compare", SIGNAL3,
                "--out", str(resynth)]) == 0
    d = keys(capsys.readouterr().out)
    assert float(d["max_error"]) < 1e-9


def test_ruelle_roundtrip(tmp_path, capsys):
    pot = tmp_path / "w.txt"
    assert run(["ruelle", "trig", "--matrix", TRI3, "--level", "3",
                "--out", str(pot)]) == 0
    d = keys(capsys.readouterr().out)
    assert float(d["pointwise_keane_residual"]) < 1e-12
    assert float(d["cylinder_keane_residual"]) < 1e-12
    assert run(["ruelle", "keane", "--matrix", TRI3,
                "--potential", str(pot)]) == 0
    assert float(keys(capsys.readouterr().out)["residual"]) < 1e-12
    assert run(["ruelle", "apply", "--matrix", TRI3, "--potential", str(pot),
                "--signal", SIGNAL3]) == 0
    assert capsys.readouterr().out.startswith("3 2\n")


def test_walk_layer_mass_line(capsys):
    assert run(["walk", "--matrix", TRI3, "--x", "1", "--depth", "3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[-1].startswith("# layer_mass = ")
    assert float(lines[-1].split(" = ")[1]) == pytest.approx(1.0, abs=1e-12)
    data = [ln.split() for ln in lines if not ln.startswith("#")]
    assert sum(float(v) for _, v in data) == pytest.approx(1.0, abs=1e-12)


def test_walk_alias_matches(capsys):
    assert run(["ruelle", "walk", "--matrix", TRI3, "--x", "1",
                "--depth", "2"]) == 0
    a = capsys.readouterr().out
    assert run(["walk", "--matrix", TRI3, "--x", "1", "--depth", "2"]) == 0
    assert capsys.readouterr().out == a


def test_sierpinski_info_and_render(tmp_path, capsys):
    assert run(["sierpinski", "info", "--matrix", SCHOTTKY4]) == 0
    d = keys(capsys.readouterr().out)
    assert d["D"] == "12"
    assert float(d["pair_dimension"]) == pytest.approx(
        math.log(12) / (2 * math.log(4)), abs=1e-12)
    pgm = tmp_path / "s.pgm"
    assert run(["sierpinski", "render", "--matrix", SCHOTTKY4, "--depth", "1",
                "--res", "8", "--out", str(pgm)]) == 0
    d = keys(capsys.readouterr().out)
    assert float(d["dark_fraction"]) == pytest.approx(12 / 16, abs=1e-12)
    assert pgm.read_text().startswith("P2\n8 8\n255\n")


def test_graph_commands(capsys):
    assert run(["graph", "perron", "--graph", GRAPH3]) == 0
    d = keys(capsys.readouterr().out)
    assert float(d["radius"]) == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-10)
    assert run(["graph", "wavelets", "--graph", LOOPS3, "--v0", "0",
                "--e0", "0", "--depth", "2"]) == 0
    d = keys(capsys.readouterr().out)
    assert d["n_paths"] == "9" and d["n_tuples"] == "4"
    assert float(d["max_gram_residual"]) < 1e-11


# --- failure modes ----------------------------------------------------------


def test_exit_codes(tmp_path, capsys):
    assert run(["nonsense"]) == 64
    assert run(["perron"]) == 64
    assert run(["perron", "--matrix", str(tmp_path / "absent.txt")]) == 65
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n1 1\n1 0\n")
    assert run(["perron", "--matrix", str(bad)]) == 65
    assert run(["words", "--matrix", SCHOTTKY4, "--level", "12",
                "--cap", "100"]) == 66
    assert run(["perron", "--matrix", TRI3, "--max-iter", "2"]) == 70
    assert run(["measure", "--matrix", TRI3, "--word", "02"]) == 65
    capsys.readouterr()


def test_lax_flag_for_nonstrict_matrix(tmp_path, capsys):
    cyc = tmp_path / "cycle.txt"
    cyc.write_text("2\n0 1\n1 0\n")
    assert run(["perron", "--matrix", str(cyc)]) == 65
    assert run(["perron", "--matrix", str(cyc), "--lax"]) == 0
    d = keys(capsys.readouterr().out)
    assert float(d["radius"]) == pytest.approx(1.0, abs=1e-10)


def test_subprocess_determinism():
    cmd = [sys.executable, "-m", "cantorkit", "wavelets", "build",
           "--matrix", TRI3]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == 0
    assert a.stdout == b.stdout and a.stdout
