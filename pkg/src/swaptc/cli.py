"""Command line front end for the sweep harness.

Each experiment is a subcommand.  Settings come from an optional JSON
config file plus per-key flags; flags win over the file.  The exit code
is zero only when every realization finished.
"""

import argparse
import sys

from . import __version__
from .harness import EXPERIMENTS, load_config, run_experiment
from .harness.figures import FIGURE_EXPERIMENTS, emit_figure_data
from .harness.validate import run_validation

_FIGURE_BY_EXPERIMENT = {exp: fid for fid, exp in FIGURE_EXPERIMENTS.items()}


def _add_common(parser):
    parser.add_argument("--config", help="JSON config file; flags below override its keys")
    parser.add_argument("--L", type=int, nargs="+", help="chain lengths to sweep (even)")
    parser.add_argument("--s", type=float, help="local spin, 0.5 or 1")
    parser.add_argument("--J", type=float, nargs="+", help="hopping strengths to sweep")
    parser.add_argument("--epsilon", type=float, nargs="+", help="kick detunings to sweep")
    parser.add_argument("--alpha", type=float, nargs="+", help="coupling range exponents to sweep")
    parser.add_argument("--V", type=float, help="interaction disorder scale")
    parser.add_argument("--h", type=float, help="field disorder scale")
    parser.add_argument("--n-disorder", type=int, help="realizations per grid point (default scales with L)")
    parser.add_argument("--seed", type=int, dest="master_seed", help="master seed for the whole sweep")
    parser.add_argument("--initial-state", help="initial product state: neel, half-neel, up-zero")
    parser.add_argument("--t-max", type=int, help="last stroboscopic time for dynamics traces")
    parser.add_argument("--t-stride", type=int, help="sampling stride for dynamics traces")
    parser.add_argument("--horizon", type=int, help="censoring horizon for decay times")
    parser.add_argument("--d-values", type=int, nargs="+", help="local dimensions for imbalance-dist")
    parser.add_argument("--out", help="output directory root")
    parser.add_argument("--workers", type=int, help="process count (default: SWAPTC_WORKERS or cpu count)")
    parser.add_argument("--dim-cap", type=int, help="refuse sectors above this dimension")
    parser.add_argument(
        "--keep-raw", action="store_const", const=True, default=None,
        help="also write per-realization values next to each grid point",
    )


_OVERRIDE_KEYS = (
    "L", "s", "J", "epsilon", "alpha", "V", "h", "n_disorder", "master_seed",
    "initial_state", "t_max", "t_stride", "horizon", "d_values", "out",
    "workers", "dim_cap", "keep_raw",
)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="swaptc",
        description="disordered swap-kicked spin chain sweeps (exact diagonalization)",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in EXPERIMENTS:
        p = sub.add_parser(name, help=f"run the {name} sweep")
        _add_common(p)
    sub.add_parser("validate", help="check the pipeline against closed forms at the solvable point")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "validate":
        failures = run_validation(stream=sys.stdout)
        print("validation:", "all checks passed" if failures == 0 else f"{failures} check(s) FAILED")
        return 1 if failures else 0

    overrides = {k: getattr(args, k) for k in _OVERRIDE_KEYS if getattr(args, k) is not None}
    try:
        config = load_config(args.config, overrides=overrides, experiment=args.command)
        result = run_experiment(config)
    except (ValueError, RuntimeError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1

    figure_id = _FIGURE_BY_EXPERIMENT.get(args.command)
    if figure_id is not None:
        emit_figure_data(result, figure_id)
    print(f"wrote {len(result.gridpoints)} grid point file(s) under {result.out_dir}")
    if result.total_failures:
        print(f"{result.total_failures} realization(s) failed; see stderr log", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
