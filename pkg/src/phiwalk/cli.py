"""Command-line front end: run sweeps to CSV files, or run the invariant suite.

Subcommands mirror the sweep kinds (`delta-sweep`, `noise-sweep`,
`relative-sweep`, `distribution`) plus `validate`. Every sweep subcommand
accepts a config file and a small set of overriding flags; given the same
configuration and seed the emitted CSV bytes are identical across runs.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from ._version import __version__
from .errors import ConfigError, ResourceLimitError, ValidationError
from .experiments import (
    ExperimentConfig,
    load_config,
    run_distribution,
    run_sweep,
    write_sweep_csv,
)
from .validation import run_suite
from .walk import WalkConfig

_KIND_BY_COMMAND = {
    "delta-sweep": "delta_sweep",
    "noise-sweep": "noise_sweep",
    "relative-sweep": "relative_sweep",
    "distribution": "distribution",
}


def _parse_mu_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(","))
    except ValueError:
        raise ConfigError(f"invalid noise list {text!r}")
    if not values:
        raise ConfigError("noise list is empty")
    return values


def _parse_delta_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ConfigError(f"invalid lag list {text!r}")
    if not values:
        raise ConfigError("lag list is empty")
    return values


def _add_common_flags(parser: argparse.ArgumentParser, kind: str) -> None:
    parser.add_argument("--config", help="key=value config file")
    parser.add_argument("--out", help="output CSV path (default: <command>.csv)")
    parser.add_argument("--steps", type=int, help="number of walk steps")
    parser.add_argument("--alpha", type=float, help="coin angle in radians")
    if kind == "distribution":
        parser.add_argument("--mu", type=float, help="damping strength")
    else:
        parser.add_argument(
            "--mu", help="comma-separated damping strengths, e.g. 0,0.05,0.1"
        )
    if kind == "delta_sweep":
        parser.add_argument("--delta", help="comma-separated lags, e.g. 0,1,2,3")
    else:
        parser.add_argument("--delta", type=int, help="lag between compared states")
    parser.add_argument("--seed", type=int, help="sampling seed recorded in metadata")
    parser.add_argument(
        "--format",
        choices=("csv",),
        default="csv",
        help="output format (only csv is supported)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phiwalk",
        description="Commutator-based quantumness sweeps for noisy quantum walks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command, kind in _KIND_BY_COMMAND.items():
        sub = subparsers.add_parser(command, help=f"run a {kind} and write a CSV")
        _add_common_flags(sub, kind)
    subparsers.add_parser("validate", help="run the built-in invariant suite")
    return parser


def _experiment_config(args: argparse.Namespace, kind: str) -> ExperimentConfig:
    if args.config:
        cfg = load_config(args.config)
        if cfg.sweep_kind != kind:
            cfg = replace(cfg, sweep_kind=kind)
    else:
        cfg = ExperimentConfig(walk=WalkConfig(steps=100), sweep_kind=kind)

    walk_updates = {}
    if args.steps is not None:
        walk_updates["steps"] = args.steps
    if args.alpha is not None:
        walk_updates["alpha"] = args.alpha
    if args.seed is not None:
        walk_updates["seed"] = args.seed

    updates = {}
    if kind == "distribution":
        if args.mu is not None:
            walk_updates["mu"] = args.mu
        if args.delta is not None:
            walk_updates["delta"] = args.delta
    else:
        if args.mu is not None:
            updates["mu_values"] = _parse_mu_list(args.mu)
        if kind == "delta_sweep":
            if args.delta is not None:
                updates["delta_values"] = _parse_delta_list(args.delta)
        elif args.delta is not None:
            walk_updates["delta"] = args.delta

    if walk_updates:
        old_steps = cfg.walk.steps
        # Derived fields resolve from steps at construction; keep them
        # tracking the new final step when --steps moves it.
        if "steps" in walk_updates:
            if cfg.walk.lattice_half_width == max(old_steps, 1):
                walk_updates["lattice_half_width"] = None
            if cfg.t_fixed == old_steps:
                updates["t_fixed"] = None
            if cfg.snapshot_times == (old_steps,):
                updates["snapshot_times"] = None
        updates["walk"] = replace(cfg.walk, **walk_updates)
    if updates:
        cfg = replace(cfg, **updates)
    return cfg


def _run_sweep_command(args: argparse.Namespace, command: str) -> int:
    kind = _KIND_BY_COMMAND[command]
    cfg = _experiment_config(args, kind)
    out = Path(args.out) if args.out else Path(f"{command}.csv")
    result = run_sweep(cfg)
    write_sweep_csv(result, out)
    print(f"wrote {result.n_rows} rows to {out}")
    if cfg.emit_distributions and kind != "distribution":
        dist_out = out.with_name(out.stem + "_distribution" + out.suffix)
        dist_result = run_distribution(replace(cfg, sweep_kind="distribution"))
        write_sweep_csv(dist_result, dist_out)
        print(f"wrote {dist_result.n_rows} rows to {dist_out}")
    return 0


def cli_main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "validate":
            failures = run_suite()
            return 1 if failures else 0
        return _run_sweep_command(args, args.command)
    except (ValidationError, ResourceLimitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
