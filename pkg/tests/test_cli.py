import json
import math
from pathlib import Path

import numpy as np
import pytest

from trapsweep import Grid, reduced_density
from trapsweep.cli import main
from trapsweep.config import build_sweep_config, load_config
from trapsweep.datafiles import read_columns
from trapsweep.errors import ConfigError

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"

CHEAP_SWEEP = """\
[potential]
u0 = 6.4
sigma = 0.5

[schedule]
velocity = 0.25

[grid]
n = 512

[propagation]
dt = 0.005

[analysis]
post_sweep_time = 0.0
compute_lz = false
"""


def _write(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_paper_configs_parse():
    for name in ("paper_linear.cfg", "paper_gpe.cfg", "paper_fig1.cfg", "paper_fig2.cfg"):
        cfg = load_config(CONFIG_DIR / name)
        assert cfg["grid"]["n"] == 1024
    linear = build_sweep_config(load_config(CONFIG_DIR / "paper_linear.cfg"))
    assert linear.u0 == 6.4 and linear.sigma == 0.5
    assert linear.propagation.schedule.velocity == 0.1
    assert linear.propagation.g == 0.0
    gpe = build_sweep_config(load_config(CONFIG_DIR / "paper_gpe.cfg"))
    assert gpe.propagation.g == -5.0
    assert gpe.u0 == 10.0 and gpe.sigma == 0.3


def test_unknown_key_is_named(tmp_path):
    path = _write(tmp_path, "[potential]\nu0 = 6.4\nsigma = 0.5\ndepth = 3\n")
    with pytest.raises(ConfigError, match=r"unknown key 'depth' in \[potential\]"):
        load_config(path)


def test_unknown_section_is_named(tmp_path):
    path = _write(tmp_path, "[laser]\npower = 1\n")
    with pytest.raises(ConfigError, match=r"unknown section \[laser\]"):
        load_config(path)


def test_bad_value_is_reported(tmp_path):
    path = _write(tmp_path, "[potential]\nu0 = strong\nsigma = 0.5\n")
    with pytest.raises(ConfigError, match="bad value for 'u0'"):
        load_config(path)


def test_missing_required_key(tmp_path):
    path = _write(tmp_path, "[potential]\nu0 = 6.4\nsigma = 0.5\n")
    with pytest.raises(ConfigError, match=r"\[schedule\] is missing"):
        build_sweep_config(load_config(path))


def test_missing_config_file_errors(tmp_path, capsys):
    code = main(["sweep", "--config", str(tmp_path / "nope.cfg"), "--out", str(tmp_path)])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_cli_density_matches_library(tmp_path):
    out = tmp_path / "rho.dat"
    code = main(["density", "--p", "0.97", "--t", str(math.pi / 2), "--out", str(out)])
    assert code == 0
    meta, data = read_columns(out)
    expected = reduced_density(0.97, math.pi / 2, Grid())
    assert np.allclose(data[:, 1], expected, atol=1e-15)


def test_cli_stats_prints_moments(tmp_path, capsys):
    code = main(["stats", "--p", "0.97", "--n", "1000"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["mean_energy"] == pytest.approx(1470.0)
    assert payload["variance_energy"] == pytest.approx(29.1)

    out = tmp_path / "stats"
    code = main(["stats", "--p", "0.5", "--n", "10", "--out", str(out)])
    assert code == 0
    meta, data = read_columns(out / "distribution.dat")
    assert data[:, 1].sum() == pytest.approx(1.0, abs=1e-12)
    assert (out / "manifest.txt").exists()


def test_cli_spectrum_scan(tmp_path):
    out = tmp_path / "scan"
    code = main([
        "spectrum", "--config", str(CONFIG_DIR / "paper_fig2.cfg"),
        "--out", str(out), "--levels", "2", "--scan", "-5:0:21",
    ])
    assert code == 0
    meta, data = read_columns(out / "levels.dat")
    assert data.shape == (21, 3)
    assert np.all(data[:, 2] >= data[:, 1])
    manifest = (out / "manifest.txt").read_text()
    assert "levels.dat" in manifest


def test_cli_crossing(tmp_path):
    out = tmp_path / "crossing"
    code = main([
        "crossing", "--config", str(CONFIG_DIR / "paper_fig2.cfg"), "--out", str(out),
    ])
    assert code == 0
    payload = json.loads((out / "crossing.json").read_text())
    assert payload["x0_star"] == pytest.approx(-3.65, abs=0.05)
    assert payload["narrow"] is True
    assert payload["config_echo"].startswith("#")


def test_cli_sweep_manifest_and_echo(tmp_path):
    cfg_path = _write(tmp_path, CHEAP_SWEEP)
    out = tmp_path / "run"
    code = main(["sweep", "--config", str(cfg_path), "--out", str(out)])
    assert code == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["config_echo"] == CHEAP_SWEEP  # byte-identical echo
    assert 0.0 <= summary["p"] <= 1.0
    manifest = (out / "manifest.txt").read_text().splitlines()
    listed = [line.split()[1] for line in manifest if not line.startswith("#")]
    assert "summary.json" in listed and "trajectory.dat" in listed


def test_cli_sweep_rerun_data_identical(tmp_path):
    cfg_path = _write(tmp_path, CHEAP_SWEEP)
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert main(["sweep", "--config", str(cfg_path), "--out", str(out_a)]) == 0
    assert main(["sweep", "--config", str(cfg_path), "--out", str(out_b)]) == 0
    from trapsweep.datafiles import file_sha256

    for name in ("trajectory.dat", "final_state.dat"):
        assert file_sha256(out_a / name) == file_sha256(out_b / name)


def test_cli_respects_output_lock(tmp_path, capsys):
    cfg_path = _write(tmp_path, CHEAP_SWEEP)
    out = tmp_path / "locked"
    out.mkdir()
    (out / ".trapsweep.lock").touch()
    code = main(["sweep", "--config", str(cfg_path), "--out", str(out)])
    assert code == 1
    assert "locked" in capsys.readouterr().err
