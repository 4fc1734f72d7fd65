"""Deterministic sweep execution over (L, J, epsilon, alpha) grids.

Every realization is seeded from (master_seed, grid index, realization
index), computed under a single-threaded BLAS limit, and aggregated in
realization order, so reruns emit byte-identical CSV regardless of the
worker count.  A manifest records finished grid points so an interrupted
sweep resumes without recomputing them.
"""

import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np
from threadpoolctl import threadpool_limits

from .. import __version__
from ..basis import enumerate_sector, sector_dimension
from ..correlations import correlation_sum, mutual_information_sum
from ..dynamics import decay_time, evolve, initial_config, initial_sector
from ..imbalance import imbalance_pmf, normal_approximation
from ..model import ModelParams, build_floquet, draw_disorder
from ..spectral import diagonalize, level_spacing_ratio, pairing_gaps, pairing_parameter
from .figures import render_summary_figure, write_csv

SUMMARY_COLUMNS = {
    "level-ratio": ("L", "J", "r_mean", "r_stderr", "epsilon", "alpha", "n"),
    "pairing": ("J", "epsilon", "ell_delta", "stderr", "L", "alpha", "n"),
    "pairing-vs-l": ("J", "L", "ell_delta", "stderr", "epsilon", "alpha", "n"),
    "decay-times": ("L", "tau_mean", "tau_stderr", "J", "alpha", "epsilon", "n", "n_censored"),
    "correlations": ("L", "J", "sigma_mean", "sigma_stderr", "mi_mean", "mi_stderr", "epsilon", "alpha", "n"),
    "dynamics": ("t", "z_mean", "z_stderr", "n", "L", "J", "epsilon", "alpha"),
    "imbalance-dist": ("I_LI", "pmf_exact", "pmf_normal", "L", "d"),
}


def realization_seed(master_seed, grid_index, realization_index):
    """Stable per-task seed; the spawn tree keys on all three indices."""
    ss = np.random.SeedSequence([master_seed, grid_index, realization_index])
    return int(ss.generate_state(1, np.uint64)[0])


@lru_cache(maxsize=32)
def _cached_basis(L, s_twice, sz_twice):
    return enumerate_sector(L, s_twice / 2.0, sz_twice / 2.0)


def _sector_of(experiment, L, s, initial_state):
    if experiment in ("dynamics", "decay-times"):
        return initial_sector(initial_state, L, s)
    return 0.0


def _spectrum_for(task, compute_states):
    params = ModelParams(
        L=task["L"], s=task["s"], J=task["J"], V=task["V"], h=task["h"],
        alpha=task["alpha"], epsilon=task["epsilon"],
    )
    realization = draw_disorder(params, task["seed"])
    basis = _cached_basis(task["L"], int(round(2 * task["s"])), int(round(2 * task["sz"])))
    op = build_floquet(params, realization, basis)
    return diagonalize(op, compute_states=compute_states), basis


def _realize_level_ratio(task):
    spectrum, _ = _spectrum_for(task, compute_states=False)
    return (level_spacing_ratio(spectrum),)


def _realize_pairing(task):
    spectrum, _ = _spectrum_for(task, compute_states=False)
    return (pairing_parameter(pairing_gaps(spectrum)),)


def _realize_correlations(task):
    spectrum, basis = _spectrum_for(task, compute_states=True)
    sigma = float(np.mean(correlation_sum(spectrum.states, basis)))
    mi = float(np.mean(mutual_information_sum(spectrum.states, basis)))
    return (sigma, mi)


def _realize_dynamics(task):
    spectrum, _ = _spectrum_for(task, compute_states=True)
    config = initial_config(task["initial_state"], task["L"], task["s"])
    times = np.arange(0, task["t_max"] + 1, task["t_stride"], dtype=np.int64)
    trace = evolve(spectrum, config, times)
    return trace.z


def _pilot_bracket(spectrum, config, horizon):
    """Doubling-time scan; returns the first violating time or None."""
    times = [0]
    t = 1
    while t < horizon:
        times.append(t)
        t *= 2
    times.append(horizon)
    times = np.array(sorted(set(times)), dtype=np.int64)
    trace = evolve(spectrum, config, times)
    strides = np.diff(times)
    parity = np.where(strides % 2 == 0, 1.0, -1.0)
    test = parity * trace.z[:-1] * trace.z[1:]
    hits = np.nonzero(test < 0)[0]
    if hits.size == 0:
        return None
    return int(times[hits[0] + 1])


def _realize_decay(task):
    spectrum, _ = _spectrum_for(task, compute_states=True)
    config = initial_config(task["initial_state"], task["L"], task["s"])
    horizon = task["horizon"]
    bracket = _pilot_bracket(spectrum, config, horizon)
    # final pass is uniformly strided so the reported tau follows the
    # strided alternation rule exactly, with the stride on record
    end = horizon if bracket is None else min(bracket, horizon)
    stride = max(1, end // 512)
    times = np.arange(0, end + 1, stride, dtype=np.int64)
    if times.size < 2:
        times = np.array([0, 1], dtype=np.int64)
    trace = evolve(spectrum, config, times)
    result = decay_time(times, trace.z, horizon=horizon)
    return (float(result.tau), float(result.stride), float(result.censored))


_REALIZERS = {
    "level-ratio": _realize_level_ratio,
    "pairing": _realize_pairing,
    "pairing-vs-l": _realize_pairing,
    "correlations": _realize_correlations,
    "dynamics": _realize_dynamics,
    "decay-times": _realize_decay,
}


def _run_one(task):
    """Worker entry: single realization, single-threaded BLAS, failure captured."""
    with threadpool_limits(limits=1):
        try:
            return ("ok", _REALIZERS[task["experiment"]](task))
        except Exception as err:
            return ("fail", f"{type(err).__name__}: {err}")


@dataclass(frozen=True)
class GridpointResult:
    tag: str
    params: dict
    n_requested: int
    n_done: int
    n_failed: int
    rows: list


@dataclass(frozen=True)
class AggregateResult:
    experiment: str
    columns: tuple
    gridpoints: list
    out_dir: str

    @property
    def total_failures(self):
        return sum(g.n_failed for g in self.gridpoints)

    def summary_rows(self):
        rows = []
        for g in self.gridpoints:
            rows.extend(g.rows)
        return rows


def _grid(config):
    points = []
    for gi, (L, J, eps, alpha) in enumerate(product(config.L, config.J, config.epsilon, config.alpha)):
        tag = f"L{L}_J{J!r}_eps{eps!r}_alpha{alpha!r}"
        points.append((gi, tag, {"L": L, "J": J, "epsilon": eps, "alpha": alpha}))
    return points


def _check_dimensions(config):
    for L in config.L:
        sz = _sector_of(config.experiment, L, config.s, config.initial_state)
        dim = sector_dimension(L, config.s, sz)
        if dim > config.dim_cap:
            raise ValueError(
                f"sector (L={L}, s={config.s}, sz={sz}) has dimension {dim}, "
                f"above the cap {config.dim_cap}; dense diagonalization would "
                f"not fit this machine"
            )


def _stderr(values):
    values = np.asarray(values, dtype=np.float64)
    if values.size < 2:
        return 0.0
    return float(values.std(ddof=1) / np.sqrt(values.size))


def _aggregate_rows(experiment, point, values, n):
    """Summary rows for one finished grid point, in fixed column order."""
    L, J, eps, alpha = point["L"], point["J"], point["epsilon"], point["alpha"]
    if experiment == "dynamics":
        z = np.stack(values)  # (n, nt) in realization order
        mean = z.mean(axis=0)
        err = z.std(axis=0, ddof=1) / np.sqrt(n) if n > 1 else np.zeros(z.shape[1])
        times = point["times"]
        return [
            (int(t), float(m), float(e), n, L, J, eps, alpha)
            for t, m, e in zip(times, mean, err)
        ]
    cols = np.array(values, dtype=np.float64)
    if experiment == "level-ratio":
        return [(L, J, float(cols[:, 0].mean()), _stderr(cols[:, 0]), eps, alpha, n)]
    if experiment in ("pairing", "pairing-vs-l"):
        ell, err = float(cols[:, 0].mean()), _stderr(cols[:, 0])
        if experiment == "pairing":
            return [(J, eps, ell, err, L, alpha, n)]
        return [(J, L, ell, err, eps, alpha, n)]
    if experiment == "decay-times":
        taus = cols[:, 0]
        return [(L, float(taus.mean()), _stderr(taus), J, alpha, eps, n, int(cols[:, 2].sum()))]
    if experiment == "correlations":
        return [(
            L, J,
            float(cols[:, 0].mean()), _stderr(cols[:, 0]),
            float(cols[:, 1].mean()), _stderr(cols[:, 1]),
            eps, alpha, n,
        )]
    raise ValueError(f"no aggregation rule for experiment {experiment!r}")


def _manifest_path(out_dir):
    return os.path.join(out_dir, "manifest.json")


def _load_manifest(out_dir, config_dict):
    path = _manifest_path(out_dir)
    if not os.path.exists(path):
        return {"config": config_dict, "versions": _versions(), "gridpoints": {}}
    with open(path, "r", encoding="utf-8") as fh:
        manifest = json.load(fh)
    stored = {k: v for k, v in manifest.get("config", {}).items() if k != "workers"}
    current = {k: v for k, v in config_dict.items() if k != "workers"}
    if stored != current:
        raise ValueError(
            f"output directory {out_dir} holds results for a different "
            f"configuration; use a fresh directory or matching config"
        )
    manifest.setdefault("gridpoints", {})
    return manifest


def _versions():
    import scipy

    return {"swaptc": __version__, "numpy": np.__version__, "scipy": scipy.__version__}


def _save_manifest(out_dir, manifest):
    path = _manifest_path(out_dir)
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    os.replace(tmp, path)


def _config_json(config):
    # tuples become lists so the manifest comparison is repr-stable
    return json.loads(json.dumps(config.as_dict()))


def _worker_count(config):
    if config.workers is not None:
        return max(1, config.workers)
    env = os.environ.get("SWAPTC_WORKERS", "").strip()
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _run_imbalance(config, out_dir):
    columns = SUMMARY_COLUMNS["imbalance-dist"]
    gridpoints = []
    manifest = _load_manifest(out_dir, _config_json(config))
    for L in config.L:
        for d in config.d_values:
            tag = f"L{L}_d{d}"
            path = os.path.join(out_dir, f"{tag}.csv")
            dist = imbalance_pmf(L, d)
            mean, var = normal_approximation(L, d)
            norm = np.exp(-((dist.support - mean) ** 2) / (2 * var)) / np.sqrt(2 * np.pi * var)
            rows = [
                (float(i), float(p), float(g), L, d)
                for i, p, g in zip(dist.support, dist.pmf, norm)
            ]
            write_csv(path, columns, rows)
            manifest["gridpoints"][tag] = {
                "file": os.path.basename(path), "n_requested": 0, "n_done": 0, "n_failed": 0,
            }
            gridpoints.append(GridpointResult(tag, {"L": L, "d": d}, 0, 0, 0, rows))
    _save_manifest(out_dir, manifest)
    result = AggregateResult("imbalance-dist", columns, gridpoints, out_dir)
    write_csv(os.path.join(out_dir, "summary.csv"), columns, result.summary_rows())
    render_summary_figure(result, os.path.join(out_dir, "summary.png"))
    return result


def run_experiment(config):
    """Execute the configured sweep; emits per-gridpoint CSV, summary, figure.

    Returns the AggregateResult.  Raises if more than 1% of a grid
    point's realizations fail; individual failures are reported on stderr
    and excluded from the statistics.
    """
    out_dir = os.path.join(config.out, config.experiment)
    os.makedirs(out_dir, exist_ok=True)
    if config.experiment == "imbalance-dist":
        return _run_imbalance(config, out_dir)

    _check_dimensions(config)
    columns = SUMMARY_COLUMNS[config.experiment]
    config_dict = _config_json(config)
    manifest = _load_manifest(out_dir, config_dict)
    manifest["config"] = config_dict
    manifest["versions"] = _versions()

    times = np.arange(0, config.t_max + 1, config.t_stride, dtype=np.int64)
    workers = _worker_count(config)
    gridpoints = []
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for gi, tag, point in _grid(config):
            point = dict(point)
            point["times"] = times
            path = os.path.join(out_dir, f"{tag}.csv")
            recorded = manifest["gridpoints"].get(tag)
            n = config.ensemble_size(point["L"])
            if recorded is not None and os.path.exists(path):
                rows = _read_rows(path, columns)
                gridpoints.append(GridpointResult(
                    tag, point, recorded["n_requested"], recorded["n_done"],
                    recorded["n_failed"], rows,
                ))
                continue
            tasks = [
                {
                    "experiment": config.experiment,
                    "L": point["L"], "s": config.s, "J": point["J"],
                    "epsilon": point["epsilon"], "alpha": point["alpha"],
                    "V": config.V, "h": config.h,
                    "sz": _sector_of(config.experiment, point["L"], config.s, config.initial_state),
                    "initial_state": config.initial_state,
                    "t_max": config.t_max, "t_stride": config.t_stride,
                    "horizon": config.horizon,
                    "seed": realization_seed(config.master_seed, gi, ri),
                }
                for ri in range(n)
            ]
            if pool is None:
                outcomes = list(map(_run_one, tasks))
            else:
                chunk = max(1, len(tasks) // (4 * workers))
                outcomes = list(pool.map(_run_one, tasks, chunksize=chunk))
            values = [payload for status, payload in outcomes if status == "ok"]
            failures = [payload for status, payload in outcomes if status == "fail"]
            for message in failures:
                print(f"[{tag}] realization failed: {message}", file=sys.stderr)
            if len(failures) > 0.01 * n:
                raise RuntimeError(
                    f"grid point {tag}: {len(failures)}/{n} realizations failed "
                    f"(above the 1% abort threshold)"
                )
            rows = _aggregate_rows(config.experiment, point, values, len(values))
            write_csv(path, columns, rows)
            if config.keep_raw and config.experiment != "dynamics":
                raw_path = os.path.join(out_dir, f"{tag}.raw.csv")
                raw_cols = ("realization",) + _raw_columns(config.experiment)
                raw_rows = [
                    (ri,) + tuple(float(v) for v in payload)
                    for ri, (status, payload) in enumerate(outcomes)
                    if status == "ok"
                ]
                write_csv(raw_path, raw_cols, raw_rows)
            manifest["gridpoints"][tag] = {
                "file": os.path.basename(path),
                "n_requested": n, "n_done": len(values), "n_failed": len(failures),
            }
            _save_manifest(out_dir, manifest)
            gridpoints.append(GridpointResult(tag, point, n, len(values), len(failures), rows))
    finally:
        if pool is not None:
            pool.shutdown()

    result = AggregateResult(config.experiment, columns, gridpoints, out_dir)
    write_csv(os.path.join(out_dir, "summary.csv"), columns, result.summary_rows())
    render_summary_figure(result, os.path.join(out_dir, "summary.png"))
    return result


def _raw_columns(experiment):
    return {
        "level-ratio": ("r",),
        "pairing": ("ell_delta",),
        "pairing-vs-l": ("ell_delta",),
        "correlations": ("sigma", "mi"),
        "decay-times": ("tau", "stride", "censored"),
    }[experiment]


def _read_rows(path, columns):
    """Re-read a finished grid point; values stay strings to keep bytes stable."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or tuple(lines[0].split(",")) != tuple(columns):
        raise ValueError(f"unexpected header in {path}; refusing to resume")
    return [tuple(line.split(",")) for line in lines[1:]]
