"""Command-line front end.

    riscorr point        one scenario
    riscorr sweep-n      E[rho^2], E[rho] vs N
    riscorr sweep-m      ... vs M
    riscorr sweep-kappa  ... vs the Rician factor
    riscorr components   component powers vs N
    riscorr plot CSV     write a plot script for an existing CSV

Each run writes ``<name>.csv`` and ``<name>.manifest.txt`` to the output
directory; ``--plot`` adds ``<name>.plot``.  A manifest can be fed back with
``--config`` to reproduce the CSV byte for byte.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import replace
from pathlib import Path

from . import __version__
from .config import config_entries, read_entries, resolve
from .analytics import predict
from .experiments import SweepPoint, component_power_report, run_point, run_sweep
from .numerics import ConfigError
from .reporting import (
    FIGURE_KINDS,
    UsageError,
    emit_components_csv,
    emit_csv,
    emit_plot_script,
    sweep_rows,
    write_manifest,
)

log = logging.getLogger("riscorr")

SUBCOMMANDS = {
    # name: (sweep kind, default output name, figure kind)
    "point": ("none", "point", "vs_N"),
    "sweep-n": ("n", "sweep_n", "vs_N"),
    "sweep-m": ("m", "sweep_m", "vs_M"),
    "sweep-kappa": ("kappa", "sweep_kappa", "vs_kappa"),
    "components": ("n", "components", "components"),
}

# flag dest -> config key
_FLAG_KEYS = {
    "m": "m", "n1": "n1", "n2": "n2", "kappa": "kappa", "kappa_db": "kappa_db",
    "paths_k": "paths_k", "paths_l": "paths_l", "realizations": "realizations",
    "phase_mode": "phase_mode", "equal_phase_value": "equal_phase_value",
    "seed": "master_seed", "sweep_values": "sweep_values", "output_dir": "output_dir",
}


def _add_run_flags(p: argparse.ArgumentParser):
    p.add_argument("--config", type=Path, help="key = value configuration file")
    p.add_argument("--m", help="BS antennas")
    p.add_argument("--n1", help="RIS elements per row")
    p.add_argument("--n2", help="RIS elements per column")
    p.add_argument("--kappa", help="linear Rician factor")
    p.add_argument("--kappa-db", dest="kappa_db", help="Rician factor in dB")
    p.add_argument("--paths-k", dest="paths_k")
    p.add_argument("--paths-l", dest="paths_l")
    p.add_argument("--realizations")
    p.add_argument("--phase-mode", dest="phase_mode", choices=("equal", "random", "codebook"))
    p.add_argument("--equal-phase-value", dest="equal_phase_value", help="e.g. 0.5236 or pi/6")
    p.add_argument("--seed", default=None, help="master seed (default 42)")
    p.add_argument("--sweep-values", dest="sweep_values", help="comma-separated sweep list")
    p.add_argument("--output-dir", dest="output_dir")
    p.add_argument("--name", help="output file stem")
    p.add_argument("--workers", type=int, default=1, help="worker threads")
    p.add_argument("--plot", action="store_true", help="also write a plot script")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="riscorr", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"riscorr {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "point": "simulate one scenario",
        "sweep-n": "sweep the number of RIS elements",
        "sweep-m": "sweep the number of BS antennas",
        "sweep-kappa": "sweep the Rician factor",
        "components": "per-component powers vs N",
    }
    for name in SUBCOMMANDS:
        _add_run_flags(sub.add_parser(name, help=helps[name]))
    plot = sub.add_parser("plot", help="write a plot script for a CSV")
    plot.add_argument("csv", type=Path)
    plot.add_argument("--kind", required=True, choices=FIGURE_KINDS)
    plot.add_argument("--out", type=Path)
    return parser


def merged_entries(args) -> dict[str, str]:
    entries = read_entries(args.config.read_text()) if args.config else {}
    flags = {key: getattr(args, dest) for dest, key in _FLAG_KEYS.items()
             if getattr(args, dest) is not None}
    if "kappa" in flags and "kappa_db" in flags:
        raise ConfigError("kappa, kappa_db: mutually exclusive, give only one")
    if "kappa" in flags:
        entries.pop("kappa_db", None)
    if "kappa_db" in flags:
        entries.pop("kappa", None)
    entries.update(flags)
    sweep_kind = SUBCOMMANDS[args.command][0]
    if entries.get("sweep", "none") != sweep_kind and "sweep_values" not in flags:
        entries.pop("sweep_values", None)
    entries["sweep"] = sweep_kind
    if sweep_kind == "none":
        entries.pop("sweep_values", None)
    return entries


def run(args) -> list[Path]:
    entries = merged_entries(args)
    config, output_dir = resolve(entries)
    config = replace(config, workers=args.workers)
    sweep_kind, default_name, figure = SUBCOMMANDS[args.command]
    out_dir = Path(output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = args.name or default_name
    csv_path = out_dir / f"{stem}.csv"
    t0 = time.perf_counter()

    if args.command == "components":
        rows, _ = component_power_report(config)
        emit_components_csv(rows, csv_path)
    else:
        if sweep_kind == "none":
            p = config.params
            points = [SweepPoint(0, p, run_point(config), predict(p.m, p.n, p.kappa))]
        else:
            points = run_sweep(config)
        emit_csv(sweep_rows(points, sweep_kind, config.realizations, config.phase_mode.label()),
                 csv_path)
    log.info("simulation finished in %.1f s", time.perf_counter() - t0)

    written = [csv_path]
    plot_path = None
    if args.plot:
        plot_path = emit_plot_script(csv_path, figure)
        written.append(plot_path)
    manifest = write_manifest(
        out_dir / f"{stem}.manifest.txt", config_entries(config, output_dir),
        version=__version__, csv_path=csv_path, plot_path=plot_path,
        command=f"{args.command} --name {stem}",
    )
    written.append(manifest)
    return written


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        if args.command == "plot":
            written = [emit_plot_script(args.csv, args.kind, args.out)]
        else:
            written = run(args)
    except (ConfigError, UsageError) as exc:
        print(f"riscorr: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"riscorr: error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
