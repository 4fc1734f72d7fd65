"""End-to-end checks of the sweep harness on tiny grids."""

import json
import os

import numpy as np
import pytest

from swaptc import cli
from swaptc.harness import ExperimentConfig, default_n_disorder, load_config, run_experiment
from swaptc.harness import runner as runner_mod
from swaptc.harness.figures import emit_figure_data, write_csv
from swaptc.harness.runner import realization_seed
from swaptc.harness.validate import run_validation


def test_default_n_disorder_scaling():
    assert default_n_disorder("level-ratio", 6) == 5120
    assert default_n_disorder("level-ratio", 8) == 2560
    assert default_n_disorder("dynamics", 12) == 640
    assert default_n_disorder("correlations", 8) == 640
    assert default_n_disorder("correlations", 6) == 1280
    assert default_n_disorder("imbalance-dist", 8) == 0
    # never rounds to zero realizations
    assert default_n_disorder("level-ratio", 40) == 1


def test_config_rejects_bad_values():
    with pytest.raises(ValueError, match="even"):
        ExperimentConfig(experiment="level-ratio", L=(5,))
    with pytest.raises(ValueError, match="1/2 or 1"):
        ExperimentConfig(experiment="level-ratio", s=0.7)
    with pytest.raises(ValueError, match="experiment"):
        ExperimentConfig(experiment="figure-8")
    with pytest.raises(ValueError, match="n_disorder"):
        ExperimentConfig(experiment="pairing", n_disorder=0)


def test_load_config_unknown_key(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"L": [4], "wat": 1}))
    with pytest.raises(ValueError, match="wat"):
        load_config(str(path), experiment="pairing")


def test_load_config_override_precedence(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"L": [4], "J": [0.3], "master_seed": 9}))
    cfg = load_config(str(path), overrides={"J": [0.7]}, experiment="pairing")
    assert cfg.J == (0.7,)
    assert cfg.L == (4,)
    assert cfg.master_seed == 9
    assert cfg.experiment == "pairing"


def test_realization_seed_distinct():
    seeds = {
        realization_seed(0, 0, 0), realization_seed(0, 0, 1),
        realization_seed(0, 1, 0), realization_seed(1, 0, 0),
    }
    assert len(seeds) == 4


def _tiny_config(experiment, out, workers=1, **kw):
    base = dict(
        experiment=experiment, L=(4,), s=0.5, J=(0.1,), epsilon=(0.0,),
        alpha=(0.5,), n_disorder=4, master_seed=11, out=out, workers=workers,
    )
    base.update(kw)
    return ExperimentConfig(**base)


def _read(path):
    with open(path, "rb") as fh:
        return fh.read()


def test_worker_count_independence(tmp_path):
    res1 = run_experiment(_tiny_config("level-ratio", str(tmp_path / "a"), workers=1, J=(0.1, 0.5)))
    res2 = run_experiment(_tiny_config("level-ratio", str(tmp_path / "b"), workers=2, J=(0.1, 0.5)))
    for name in ("summary.csv", "L4_J0.1_eps0.0_alpha0.5.csv", "L4_J0.5_eps0.0_alpha0.5.csv"):
        assert _read(os.path.join(res1.out_dir, name)) == _read(os.path.join(res2.out_dir, name))
    assert res1.total_failures == res2.total_failures == 0


def test_summary_schema_and_manifest(tmp_path):
    res = run_experiment(_tiny_config("pairing-vs-l", str(tmp_path / "r"), L=(4, 6), n_disorder=2))
    with open(os.path.join(res.out_dir, "summary.csv")) as fh:
        header = fh.readline().strip()
    assert header == "J,L,ell_delta,stderr,epsilon,alpha,n"
    with open(os.path.join(res.out_dir, "manifest.json")) as fh:
        manifest = json.load(fh)
    assert manifest["config"]["experiment"] == "pairing-vs-l"
    assert manifest["config"]["master_seed"] == 11
    assert set(manifest["versions"]) == {"swaptc", "numpy", "scipy"}
    tags = set(manifest["gridpoints"])
    assert tags == {"L4_J0.1_eps0.0_alpha0.5", "L6_J0.1_eps0.0_alpha0.5"}
    for entry in manifest["gridpoints"].values():
        assert entry["n_done"] == 2 and entry["n_failed"] == 0


def test_resume_reuses_finished_gridpoints(tmp_path, monkeypatch):
    out = str(tmp_path / "r")
    cfg = _tiny_config("level-ratio", out, L=(4, 6), n_disorder=2)
    first = run_experiment(cfg)
    summary = _read(os.path.join(first.out_dir, "summary.csv"))

    # a resumed run must not recompute recorded grid points
    def boom(task):
        raise AssertionError("resume recomputed a finished grid point")

    monkeypatch.setitem(runner_mod._REALIZERS, "level-ratio", boom)
    second = run_experiment(cfg)
    assert _read(os.path.join(second.out_dir, "summary.csv")) == summary

    monkeypatch.undo()
    # deleting one gridpoint file forces only that point to rerun
    os.remove(os.path.join(out, "level-ratio", "L4_J0.1_eps0.0_alpha0.5.csv"))
    third = run_experiment(cfg)
    assert _read(os.path.join(third.out_dir, "summary.csv")) == summary


def test_resume_rejects_other_config(tmp_path):
    out = str(tmp_path / "r")
    run_experiment(_tiny_config("pairing", out, n_disorder=2))
    with pytest.raises(ValueError, match="different"):
        run_experiment(_tiny_config("pairing", out, n_disorder=3))
    # only worker count may differ
    run_experiment(_tiny_config("pairing", out, n_disorder=2, workers=2))


def test_dynamics_gridpoint_schema(tmp_path):
    cfg = _tiny_config("dynamics", str(tmp_path / "r"), J=(0.05,), epsilon=(0.01,), t_max=8, n_disorder=3)
    res = run_experiment(cfg)
    path = os.path.join(res.out_dir, "L4_J0.05_eps0.01_alpha0.5.csv")
    rows = [line.split(",") for line in _read(path).decode().splitlines()]
    assert rows[0] == ["t", "z_mean", "z_stderr", "n", "L", "J", "epsilon", "alpha"]
    assert len(rows) == 1 + 9
    assert float(rows[1][1]) == pytest.approx(2.0, abs=1e-12)
    assert rows[1][0] == "0" and rows[-1][0] == "8"


def test_decay_times_output(tmp_path):
    cfg = _tiny_config(
        "decay-times", str(tmp_path / "r"), J=(0.1,), epsilon=(0.01,),
        horizon=50_000, n_disorder=3, keep_raw=True,
    )
    res = run_experiment(cfg)
    with open(os.path.join(res.out_dir, "summary.csv")) as fh:
        header = fh.readline().strip()
        row = fh.readline().strip().split(",")
    assert header == "L,tau_mean,tau_stderr,J,alpha,epsilon,n,n_censored"
    assert float(row[1]) >= 1.0
    raw = _read(os.path.join(res.out_dir, "L4_J0.1_eps0.01_alpha0.5.raw.csv")).decode().splitlines()
    assert raw[0] == "realization,tau,stride,censored"
    assert len(raw) == 1 + 3


def test_emit_figure_data(tmp_path):
    cfg = _tiny_config(
        "decay-times", str(tmp_path / "r"), J=(0.1,), epsilon=(0.01,),
        horizon=20_000, n_disorder=2,
    )
    res = run_experiment(cfg)
    path = emit_figure_data(res, "fig3", out_dir=str(tmp_path / "figs"))
    with open(path) as fh:
        header = fh.readline().strip()
    assert header.startswith("L,tau_mean,tau_stderr,J,alpha")
    assert os.path.exists(os.path.join(tmp_path, "figs", "fig3.png"))
    with pytest.raises(ValueError, match="unknown figure id"):
        emit_figure_data(res, "fig99")
    with pytest.raises(ValueError, match="produced by"):
        emit_figure_data(res, "fig10a")


def test_imbalance_dist_files(tmp_path):
    cfg = ExperimentConfig(
        experiment="imbalance-dist", L=(6,), d_values=(2, 3), out=str(tmp_path / "r"),
    )
    res = run_experiment(cfg)
    assert res.total_failures == 0
    for d in (2, 3):
        lines = _read(os.path.join(res.out_dir, f"L6_d{d}.csv")).decode().splitlines()
        assert lines[0] == "I_LI,pmf_exact,pmf_normal,L,d"
        pmf = [float(line.split(",")[1]) for line in lines[1:]]
        assert np.isclose(sum(pmf), 1.0, atol=1e-12)
    emit_figure_data(res, "fig17")
    assert os.path.exists(os.path.join(res.out_dir, "fig17.csv"))


def test_failure_abort_threshold(tmp_path, monkeypatch):
    calls = {"n": 0}

    def flaky(task):
        calls["n"] += 1
        raise RuntimeError("synthetic failure")

    monkeypatch.setitem(runner_mod._REALIZERS, "pairing", flaky)
    with pytest.raises(RuntimeError, match="abort"):
        run_experiment(_tiny_config("pairing", str(tmp_path / "r"), n_disorder=4))
    assert calls["n"] == 4


def test_dim_cap_refusal(tmp_path):
    cfg = _tiny_config("level-ratio", str(tmp_path / "r"), L=(8,), dim_cap=10)
    with pytest.raises(ValueError, match="cap"):
        run_experiment(cfg)


def test_write_csv_float_repr(tmp_path):
    path = str(tmp_path / "x.csv")
    write_csv(path, ("a", "b"), [(0.1, 1), (np.float64(2.5), "txt")])
    assert _read(path).decode() == "a,b\n0.1,1\n2.5,txt\n"
    with pytest.raises(ValueError, match="columns"):
        write_csv(path, ("a",), [(1, 2)])


def test_cli_round_trip(tmp_path, capsys):
    out = str(tmp_path / "cli")
    code = cli.main([
        "level-ratio", "--L", "4", "--J", "0.2", "--n-disorder", "2",
        "--seed", "3", "--out", out, "--workers", "1",
    ])
    assert code == 0
    assert os.path.exists(os.path.join(out, "level-ratio", "summary.csv"))
    assert os.path.exists(os.path.join(out, "level-ratio", "summary.png"))

    code = cli.main(["level-ratio", "--L", "5", "--out", out])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_cli_workers_env(tmp_path, monkeypatch):
    monkeypatch.setenv("SWAPTC_WORKERS", "1")
    cfg = _tiny_config("pairing", str(tmp_path / "r"), n_disorder=2, workers=None)
    assert runner_mod._worker_count(cfg) == 1
    monkeypatch.setenv("SWAPTC_WORKERS", "3")
    assert runner_mod._worker_count(cfg) == 3
    monkeypatch.delenv("SWAPTC_WORKERS")
    assert runner_mod._worker_count(cfg) >= 1


def test_validation_suite_passes():
    assert run_validation() == 0
