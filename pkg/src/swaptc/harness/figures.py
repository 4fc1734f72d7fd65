"""Delimited output and figure rendering for finished sweeps.

CSV files are written with repr() floats so that equal numbers always
produce equal bytes.  Each experiment's summary is also rendered to a
PNG next to the data; `emit_figure_data` writes the same content under
a stable figure identifier.
"""

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

# figure id -> experiment whose summary carries that data layout
FIGURE_EXPERIMENTS = {
    "fig3": "decay-times",
    "fig10a": "pairing-vs-l",
    "fig17": "imbalance-dist",
}


def _format_value(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def write_csv(path, columns, rows):
    """Write rows under a header; floats via repr, newline-terminated."""
    lines = [",".join(columns)]
    for row in rows:
        if len(row) != len(columns):
            raise ValueError(f"row of width {len(row)} does not fit {len(columns)} columns")
        lines.append(",".join(_format_value(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _column_arrays(columns, rows):
    data = {name: [] for name in columns}
    for row in rows:
        for name, value in zip(columns, row):
            data[name].append(float(value))
    return {name: np.array(vals, dtype=np.float64) for name, vals in data.items()}


def _series_keys(data, names):
    keys = sorted(set(zip(*(data[n] for n in names)))) if data[names[0]].size else []
    return keys


def _select(data, names, key):
    mask = np.ones(data[names[0]].shape, dtype=bool)
    for n, v in zip(names, key):
        mask &= data[n] == v
    return mask


def _plot_level_ratio(data, ax):
    for key in _series_keys(data, ("L", "epsilon", "alpha")):
        m = _select(data, ("L", "epsilon", "alpha"), key)
        order = np.argsort(data["J"][m])
        ax.errorbar(
            data["J"][m][order], data["r_mean"][m][order],
            yerr=data["r_stderr"][m][order], marker="o",
            label=f"L={int(key[0])}",
        )
    ax.axhline(2 * np.log(2) - 1, color="gray", ls=":", lw=1, label="Poisson")
    ax.axhline(0.5269, color="gray", ls="--", lw=1, label="COE")
    if np.all(data["J"] > 0) and len(set(data["J"])) > 1:
        ax.set_xscale("log")
    ax.set_xlabel("J")
    ax.set_ylabel("mean level spacing ratio r")


def _plot_pairing(data, ax):
    for key in _series_keys(data, ("L", "epsilon", "alpha")):
        m = _select(data, ("L", "epsilon", "alpha"), key)
        order = np.argsort(data["J"][m])
        ax.errorbar(
            data["J"][m][order], data["ell_delta"][m][order],
            yerr=data["stderr"][m][order], marker="o",
            label=f"L={int(key[0])}, eps={key[1]:g}",
        )
    if np.all(data["J"] > 0) and len(set(data["J"])) > 1:
        ax.set_xscale("log")
    ax.set_xlabel("J")
    ax.set_ylabel("pairing parameter")


def _plot_pairing_vs_l(data, ax):
    for key in _series_keys(data, ("J", "epsilon", "alpha")):
        m = _select(data, ("J", "epsilon", "alpha"), key)
        order = np.argsort(data["L"][m])
        ax.errorbar(
            data["L"][m][order], data["ell_delta"][m][order],
            yerr=data["stderr"][m][order], marker="o", label=f"J={key[0]:g}",
        )
    ax.set_xlabel("L")
    ax.set_ylabel("pairing parameter")


def _plot_decay(data, ax):
    for key in _series_keys(data, ("J", "alpha", "epsilon")):
        m = _select(data, ("J", "alpha", "epsilon"), key)
        order = np.argsort(data["L"][m])
        ax.errorbar(
            data["L"][m][order], data["tau_mean"][m][order],
            yerr=data["tau_stderr"][m][order], marker="o",
            label=f"J={key[0]:g}, alpha={key[1]:g}",
        )
    ax.set_yscale("log")
    ax.set_xlabel("L")
    ax.set_ylabel("mean decay time")


def _plot_correlations(data, ax):
    for key in _series_keys(data, ("J", "epsilon", "alpha")):
        m = _select(data, ("J", "epsilon", "alpha"), key)
        order = np.argsort(data["L"][m])
        ax.errorbar(
            data["L"][m][order], data["sigma_mean"][m][order],
            yerr=data["sigma_stderr"][m][order], marker="o",
            label=f"correlation sum, J={key[0]:g}",
        )
        ax.errorbar(
            data["L"][m][order], data["mi_mean"][m][order],
            yerr=data["mi_stderr"][m][order], marker="s", ls="--",
            label=f"mutual information sum, J={key[0]:g}",
        )
    ax.set_xlabel("L")
    ax.set_ylabel("eigenstate pair correlations")


def _plot_dynamics(result, ax):
    for g in result.gridpoints:
        data = _column_arrays(result.columns, g.rows)
        ax.plot(data["t"], data["z_mean"], lw=0.8, label=g.tag)
        ax.fill_between(
            data["t"], data["z_mean"] - data["z_stderr"],
            data["z_mean"] + data["z_stderr"], alpha=0.3,
        )
    ax.set_xlabel("t (periods)")
    ax.set_ylabel("order parameter Z(t)")


def _plot_imbalance(result, ax):
    for g in result.gridpoints:
        data = _column_arrays(result.columns, g.rows)
        line, = ax.plot(data["I_LI"], data["pmf_exact"], "o", ms=3, label=f"{g.tag} exact")
        ax.plot(data["I_LI"], data["pmf_normal"], "-", lw=1,
                color=line.get_color(), label=f"{g.tag} normal")
    ax.set_xlabel("local imbalance")
    ax.set_ylabel("probability")


def render_summary_figure(result, path):
    """Render the aggregate of one experiment to a PNG file."""
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    try:
        if result.experiment == "dynamics":
            _plot_dynamics(result, ax)
        elif result.experiment == "imbalance-dist":
            _plot_imbalance(result, ax)
        else:
            data = _column_arrays(result.columns, result.summary_rows())
            {
                "level-ratio": _plot_level_ratio,
                "pairing": _plot_pairing,
                "pairing-vs-l": _plot_pairing_vs_l,
                "decay-times": _plot_decay,
                "correlations": _plot_correlations,
            }[result.experiment](data, ax)
        ax.set_title(result.experiment)
        if ax.get_legend_handles_labels()[0]:
            ax.legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(path, dpi=150)
    finally:
        plt.close(fig)
    return path


def emit_figure_data(result, figure_id, out_dir=None):
    """Write one figure's data file and rendering under its stable id.

    The id fixes the leading column layout; the columns after it carry
    context (couplings, ensemble sizes) and are allowed to grow.
    """
    if figure_id not in FIGURE_EXPERIMENTS:
        known = ", ".join(sorted(FIGURE_EXPERIMENTS))
        raise ValueError(f"unknown figure id {figure_id!r}; known ids: {known}")
    wanted = FIGURE_EXPERIMENTS[figure_id]
    if result.experiment != wanted:
        raise ValueError(
            f"figure {figure_id} is produced by the {wanted!r} experiment, "
            f"not {result.experiment!r}"
        )
    out_dir = result.out_dir if out_dir is None else out_dir
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, f"{figure_id}.csv")
    write_csv(csv_path, result.columns, result.summary_rows())
    render_summary_figure(result, os.path.join(out_dir, f"{figure_id}.png"))
    return csv_path
