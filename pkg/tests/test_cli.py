"""Tests for the command-line interface and its exit-code contract."""

import numpy as np
import pytest

from tpds import cli, matio, specfile
from tpds.compound import add_compound

OSC = np.array([[2, 1, 0], [1, 2, 1], [0, 1, 2]])


@pytest.fixture()
def osc_file(tmp_path):
    path = tmp_path / "osc.mat"
    matio.dump(OSC, path)
    return str(path)


def spec_path(tmp_path, name):
    path = tmp_path / f"{name}.spec"
    specfile.save(specfile.shipped(name), path)
    return str(path)


def test_check_oscillatory(osc_file, capsys):
    assert cli.main(["check", osc_file]) == 0
    out = capsys.readouterr().out
    assert "TN yes" in out and "TP no" in out and "oscillatory yes" in out
    assert "M+ yes" in out


def test_check_reports_violating_minor(tmp_path, capsys):
    path = tmp_path / "ssr.mat"
    matio.dump(np.array([[1, 2], [3, 1]]), path)
    assert cli.main(["check", str(path)]) == 0
    out = capsys.readouterr().out
    assert "SSR yes" in out and "TN no" in out
    assert "first negative minor" in out


def test_check_malformed_file_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.mat"
    bad.write_text("2 2\n1 2 3\n")
    assert cli.main(["check", str(bad)]) == 2
    assert cli.main(["check", str(tmp_path / "missing.mat")]) == 2


def test_compound_additive(osc_file, capsys):
    assert cli.main(["compound", osc_file, "2", "--additive"]) == 0
    out = capsys.readouterr().out
    assert np.array_equal(matio.loads(out), add_compound(OSC.astype(float), 2).entries)


def test_compound_multiplicative_identity(tmp_path, capsys):
    path = tmp_path / "eye.mat"
    matio.dump(np.eye(3, dtype=int), path)
    assert cli.main(["compound", str(path), "2", "--multiplicative"]) == 0
    assert np.array_equal(matio.loads(capsys.readouterr().out), np.eye(3))


def test_simulate_deterministic(tmp_path, capsys):
    spec = spec_path(tmp_path, "switched")
    outs = []
    for k in range(2):
        out = tmp_path / f"run{k}.csv"
        assert cli.main(["simulate", spec, "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    header = outs[0].decode().splitlines()[0]
    assert header == "t,z1,z2,z3,z4,s_minus,s_plus,in_V"


def test_simulate_trivial_z0_exits_3(tmp_path, capsys):
    spec = spec_path(tmp_path, "switched")
    rc = cli.main(["simulate", spec, "--z0", "0,0,0,0", "--out", str(tmp_path / "x.csv")])
    assert rc == 3


def test_simulate_nonlinear_spec(tmp_path, capsys):
    spec = spec_path(tmp_path, "takac")
    out = tmp_path / "takac.csv"
    assert cli.main(["simulate", spec, "--grid", "200", "--out", str(out)]) == 0
    assert out.read_text().startswith("t,z1,z2,z3,z4")


def test_floquet_command(tmp_path, capsys):
    spec = spec_path(tmp_path, "sinusoidal2")
    assert cli.main(["floquet", spec]) == 0
    out = capsys.readouterr().out
    assert "multiplier 1: 535.4" in out
    assert "sign_changes 1" in out


def test_entrain_command(tmp_path, capsys):
    spec = spec_path(tmp_path, "entrain_demo")
    assert cli.main(["entrain", spec]) == 0
    out = capsys.readouterr().out
    assert "detected_period 1" in out


def test_reproduce_idempotent(tmp_path, capsys):
    outdir = tmp_path / "fig"
    for _ in range(2):
        assert cli.main(["reproduce", "spectrum-tp3", "--outdir", str(outdir)]) == 0
    data = (outdir / "spectrum_tp3.csv").read_text()
    assert "11.65685425" in data


def test_reproduce_unknown_figure(tmp_path, capsys):
    assert cli.main(["reproduce", "no-such-figure", "--outdir", str(tmp_path)]) == 3


def test_outdir_env_override(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("TPDS_OUTDIR", str(tmp_path / "envout"))
    assert cli.main(["reproduce", "spectrum-tp3"]) == 0
    assert (tmp_path / "envout" / "spectrum_tp3.csv").exists()
