"""Command-line entry point mapping each figure-level experiment to a batch job.

Subcommands: eigenstudy, quench, analytics, separate, fit.  Options can come
from a key = value config file (--config) with individual flags overriding it.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .runner import (
    RunConfig,
    parse_config_file,
    refit,
    run_analytics,
    run_eigenstudy,
    run_quench,
    run_separation,
)


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--L", type=int, nargs="+", help="chain lengths")
    parser.add_argument("--lambda-grid", type=str, help="comma list or start:stop:num")
    parser.add_argument("--theta-grid", type=str, help="comma list or start:stop:num")
    parser.add_argument("--dt", type=float)
    parser.add_argument("--tmax", type=float)
    parser.add_argument("--window", type=float, nargs=2, metavar=("T1", "T2"))
    parser.add_argument("--shell-tol", type=float)
    parser.add_argument("--max-thermal", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out", type=str)
    parser.add_argument("--workers", type=int)
    parser.add_argument("--L-numeric", type=int, help="size for numeric analytics columns")
    parser.add_argument("--config", type=str, help="key = value file mirroring the run config")


def _grid(text: str):
    if ":" in text:
        start, stop, num = text.split(":")
        return tuple(np.linspace(float(start), float(stop), int(num)))
    return tuple(float(t) for t in text.split(",") if t)


def _build_config(args, defaults: dict) -> RunConfig:
    values = dict(defaults)
    if args.config:
        values.update(parse_config_file(args.config))
    overrides = {
        "L_list": tuple(args.L) if args.L else None,
        "lambda_grid": _grid(args.lambda_grid) if args.lambda_grid else None,
        "theta_grid": _grid(args.theta_grid) if args.theta_grid else None,
        "dt": args.dt,
        "t_max": args.tmax,
        "window": tuple(args.window) if args.window else None,
        "shell_tol": args.shell_tol,
        "max_thermal": args.max_thermal,
        "seed": args.seed,
        "out_dir": args.out,
        "workers": args.workers,
        "L_numeric": args.L_numeric,
    }
    values.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig(experiment=args.command, **values)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="pxp-ergotropy",
        description="Batch experiments for PXP ergotropy and entanglement studies",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, descr in (
        ("eigenstudy", "zero-shell scar/thermal interpolation sweep"),
        ("quench", "rotated-quench trajectories and steady state summary"),
        ("analytics", "transfer-matrix closed forms with numeric comparison"),
        ("separate", "scar separation report"),
        ("fit", "refit scaling laws from existing eigenstudy CSVs"),
    ):
        p = sub.add_parser(name, help=descr)
        _add_common(p)
        if name == "fit":
            p.add_argument("csvs", nargs="+", help="eigenstudy CSV files")
    args = parser.parse_args(argv)

    if args.command == "eigenstudy":
        config = _build_config(args, {})
        paths = run_eigenstudy(config)
    elif args.command == "quench":
        config = _build_config(args, {"L_list": (12, 16)})
        paths = run_quench(config)
    elif args.command == "analytics":
        config = _build_config(args, {"theta_grid": tuple(np.linspace(0.0, np.pi / 2, 101))})
        paths = run_analytics(config)
    elif args.command == "separate":
        config = _build_config(args, {"L_list": (12, 14, 16)})
        paths = run_separation(config)
    elif args.command == "fit":
        config = _build_config(args, {})
        paths = refit(config, args.csvs)
    else:  # pragma: no cover
        parser.error(f"unknown command {args.command}")
    for p in paths:
        print(p)
    return 0


if __name__ == "__main__":
    sys.exit(main())
