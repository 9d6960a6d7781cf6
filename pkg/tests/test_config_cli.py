import json
import math
import os

import numpy as np
import pytest

from becpolaron import ConfigError, default_config, load_config, write_config
from becpolaron.cli import main
from becpolaron.free_dynamics import SeriesOutput
from becpolaron.output import write_rows, write_series


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

def test_empty_file_gives_defaults(tmp_path):
    path = tmp_path / "empty.ini"
    path.write_text("")
    cfg = load_config(str(path))
    assert cfg == default_config()
    assert cfg.condensate.n01 == 7e6
    assert cfg.condensate.a3 == pytest.approx(100 * 5.29177210903e-11)
    assert cfg.impurity.m_I == 6.4924249e-26


def test_single_override(tmp_path):
    path = tmp_path / "eta.ini"
    path.write_text("[impurity]\neta = 2.5\n")
    cfg = load_config(str(path))
    base = default_config()
    assert cfg.impurity.eta == 2.5
    assert cfg.condensate == base.condensate
    assert cfg.run == base.run


def test_negative_mass_rejected(tmp_path):
    path = tmp_path / "bad.ini"
    path.write_text("[condensate]\nm_B_kg = -1.0e-25\n")
    with pytest.raises(ConfigError, match="m_B"):
        load_config(str(path))


def test_unknown_key_rejected(tmp_path):
    path = tmp_path / "bad.ini"
    path.write_text("[run]\nbogus = 1\n")
    with pytest.raises(ConfigError, match="bogus"):
        load_config(str(path))


def test_unknown_section_rejected(tmp_path):
    path = tmp_path / "bad.ini"
    path.write_text("[laser]\npower = 1\n")
    with pytest.raises(ConfigError, match="laser"):
        load_config(str(path))


def test_missing_file_raises(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config(str(tmp_path / "nope.ini"))


def test_round_trip(tmp_path):
    cfg = default_config()
    path = tmp_path / "cfg.ini"
    write_config(cfg, str(path))
    assert load_config(str(path)) == cfg


def test_dimensions_parsing(tmp_path):
    path = tmp_path / "dims.ini"
    path.write_text("[run]\ndimensions = 2,3\n")
    assert load_config(str(path)).run.dimensions == (2, 3)
    path.write_text("[run]\ndimensions = all\n")
    assert load_config(str(path)).run.dimensions == (1, 2, 3)
    path.write_text("[run]\ndimensions = 5\n")
    with pytest.raises(ConfigError):
        load_config(str(path))


# ---------------------------------------------------------------------------
# CSV writing
# ---------------------------------------------------------------------------

def test_write_series_roundtrip(tmp_path):
    series = SeriesOutput(t=np.array([0.0, 0.5, 1.0]),
                          values=np.array([1.0, 2.5, 3.25]), units="J")
    path = tmp_path / "s.csv"
    write_series(series, str(path), columns=("t_s", "E_J"))
    text = path.read_text()
    assert text.splitlines()[0] == "t_s,E_J"
    assert len(text.splitlines()) == 4
    write_series(series, str(tmp_path / "s2.csv"), columns=("t_s", "E_J"))
    assert (tmp_path / "s2.csv").read_bytes() == path.read_bytes()


def test_write_rows_refuses_nan(tmp_path):
    with pytest.raises(ValueError):
        write_rows(str(tmp_path / "bad.csv"), ("a",), [(float("nan"),)])
    with pytest.raises(ValueError):
        write_rows(str(tmp_path / "bad.csv"), ("a",), [(float("inf"),)])


def test_full_precision_cells(tmp_path):
    value = 1.0 / 3.0
    path = tmp_path / "p.csv"
    write_rows(str(path), ("x",), [(value,)])
    assert float(path.read_text().splitlines()[1]) == value


# ---------------------------------------------------------------------------
# CLI commands (small grids for speed)
# ---------------------------------------------------------------------------

SMALL_RUN = """
[run]
t_max_omega0 = 60
t_points = 12
eta_min = 0.2
eta_max = 6.0
eta_points = 24
"""

WIDE_ETA_RUN = """
[run]
t_max_omega0 = 60
t_points = 12
eta_min = 0.2
eta_max = 30.0
eta_points = 120
"""


def _write(tmp_path, body, name="cfg.ini"):
    path = tmp_path / name
    path.write_text(body)
    return str(path)


def test_validate_within_bound(tmp_path):
    cfg = _write(tmp_path, "[impurity]\neta = 3.0\n")
    out = str(tmp_path / "out")
    assert main(["validate", "--config", cfg, "--dim", "1", "--out", out]) == 0
    manifest = json.loads((tmp_path / "out" / "run_manifest.json").read_text())
    assert manifest["frohlich"]["1"]["ok"] is True
    assert manifest["frohlich"]["1"]["eta_c"] == pytest.approx(3.8019, abs=1e-3)
    assert (tmp_path / "out" / "validate_d1.csv").exists()


def test_validate_beyond_bound_exits_2(tmp_path):
    cfg = _write(tmp_path, "[impurity]\neta = 5.0\n")
    out = str(tmp_path / "out")
    assert main(["validate", "--config", cfg, "--dim", "1", "--out", out]) == 2
    manifest = json.loads((tmp_path / "out" / "run_manifest.json").read_text())
    assert manifest["frohlich"]["1"]["ok"] is False
    assert manifest["warnings"]


def test_manifest_always_records_frohlich(tmp_path):
    cfg = _write(tmp_path, SMALL_RUN)
    out = str(tmp_path / "out")
    assert main(["propagators", "--config", cfg, "--dim", "2", "--out", out]) == 0
    manifest = json.loads((tmp_path / "out" / "run_manifest.json").read_text())
    assert set(manifest["frohlich"].keys()) == {"1", "2", "3"}
    assert "high_temperature" in manifest
    assert manifest["command"] == "propagators"


def test_propagators_csv_schema(tmp_path):
    cfg = _write(tmp_path, SMALL_RUN)
    out = str(tmp_path / "out")
    assert main(["propagators", "--config", cfg, "--dim", "1", "--out", out]) == 0
    lines = (tmp_path / "out" / "propagators_d1.csv").read_text().splitlines()
    assert lines[0] == "t_s,t_omega0,G1,G2,method"
    methods = {line.split(",")[-1] for line in lines[1:]}
    assert methods == {"zakian", "asymptotic"}


def test_diffusion_sweep_unimodal(tmp_path):
    # eta window wide enough to contain the peak in every dimension
    # (for d >= 2 the maximum lies beyond the Froehlich bound, as the
    # sweep itself shows; the curve stays unimodal)
    cfg = _write(tmp_path, WIDE_ETA_RUN)
    out = str(tmp_path / "out")
    code = main(["diffusion-sweep", "--config", cfg, "--out", out])
    assert code == 0  # T = 0 default runs the low-temperature coefficient
    for d in (1, 2, 3):
        lines = (tmp_path / "out" / f"diffusion-sweep_d{d}.csv").read_text().splitlines()
        assert lines[0] == "eta,D_m2_per_s2,regime"
        vals = np.array([float(line.split(",")[1]) for line in lines[1:]])
        assert lines[1].split(",")[2] == "LT"
        signs = np.sign(np.diff(vals))
        assert np.count_nonzero(np.diff(signs)) == 1  # one peak


def test_diffusion_sweep_ht_below_threshold(tmp_path):
    body = SMALL_RUN + "temperature_K = 1.5e-7\n"
    cfg = _write(tmp_path, body)
    out = str(tmp_path / "out")
    # 0.15 uK sits below the all-dimension threshold: refused without force
    assert main(["diffusion-sweep", "--config", cfg, "--out", out]) == 2
    assert main(["diffusion-sweep", "--config", cfg, "--out", out,
                 "--force-out-of-regime"]) == 2
    lines = (tmp_path / "out" / "diffusion-sweep_d1.csv").read_text().splitlines()
    assert lines[1].split(",")[2] == "HT"
    # for the 1d bath alone the same temperature is above threshold
    assert main(["diffusion-sweep", "--config", cfg, "--dim", "1", "--out",
                 str(tmp_path / "out1")]) == 0


def test_energy_csv_schema(tmp_path):
    cfg = _write(tmp_path, SMALL_RUN)
    out = str(tmp_path / "out")
    assert main(["energy", "--config", cfg, "--dim", "3", "--out", out]) == 0
    lines = (tmp_path / "out" / "energy_d3.csv").read_text().splitlines()
    assert lines[0] == "t_s,E_J"


def test_msd_csv_schema(tmp_path):
    cfg = _write(tmp_path, SMALL_RUN)
    out = str(tmp_path / "out")
    assert main(["msd", "--config", cfg, "--dim", "1", "--out", out]) == 0
    lines = (tmp_path / "out" / "msd_d1.csv").read_text().splitlines()
    assert lines[0] == "t_s,msd_m2"
    assert len(lines) == 13


def test_trapped_commands_require_omega(tmp_path):
    cfg = _write(tmp_path, SMALL_RUN)
    out = str(tmp_path / "out")
    assert main(["squeezing", "--config", cfg, "--out", out]) == 1


TRAPPED_RUN = """
[impurity]
omega_rad_s = 6283.185307179586
eta = 1.0

[run]
T_scaled_min = 0.5
T_scaled_max = 3.0
T_points = 3
eta_min = 0.5
eta_max = 2.5
eta_points = 3
horizon_periods = 10
"""


def test_squeezing_csv_schema(tmp_path):
    cfg = _write(tmp_path, TRAPPED_RUN)
    out = str(tmp_path / "out")
    assert main(["squeezing", "--config", cfg, "--dim", "1", "--out", out]) == 0
    lines = (tmp_path / "out" / "squeezing_d1.csv").read_text().splitlines()
    assert lines[0] == "T_K,T_scaled,dx_scaled,dp_scaled,equipartition_ref"
    assert len(lines) == 4


def test_non_markov_csv_schema_and_dim_default(tmp_path):
    cfg = _write(tmp_path, TRAPPED_RUN)
    out = str(tmp_path / "out")
    assert main(["non-markov", "--config", cfg, "--out", out]) == 0
    assert (tmp_path / "out" / "non-markov_d1.csv").exists()
    assert (tmp_path / "out" / "non-markov_d2.csv").exists()
    assert not (tmp_path / "out" / "non-markov_d3.csv").exists()
    lines = (tmp_path / "out" / "non-markov_d1.csv").read_text().splitlines()
    assert lines[0] == "eta,N_scaled"


def test_j_distance_csv_schema(tmp_path):
    cfg = _write(tmp_path, TRAPPED_RUN)
    out = str(tmp_path / "out")
    assert main(["j-distance", "--config", cfg, "--dim", "1", "--out", out]) == 0
    lines = (tmp_path / "out" / "j-distance_d1.csv").read_text().splitlines()
    assert lines[0] == "T_scaled,JD"


def test_determinism_across_thread_counts(tmp_path, monkeypatch):
    cfg = _write(tmp_path, TRAPPED_RUN)
    digests = {}
    for threads in ("1", "8"):
        out = str(tmp_path / f"out{threads}")
        monkeypatch.setenv("POLARON_THREADS", threads)
        assert main(["squeezing", "--config", cfg, "--dim", "1", "--out", out]) == 0
        digests[threads] = (tmp_path / f"out{threads}" / "squeezing_d1.csv").read_bytes()
    assert digests["1"] == digests["8"]


def test_rerun_byte_identical(tmp_path, monkeypatch):
    cfg = _write(tmp_path, SMALL_RUN)
    monkeypatch.setenv("POLARON_THREADS", "4")
    blobs = []
    for name in ("a", "b"):
        out = str(tmp_path / name)
        assert main(["energy", "--config", cfg, "--dim", "2", "--out", out]) == 0
        blobs.append((tmp_path / name / "energy_d2.csv").read_bytes())
    assert blobs[0] == blobs[1]
