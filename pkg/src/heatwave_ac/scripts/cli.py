#!/usr/bin/env python3
"""
Command-line entry point for heatwave-ac.

Subcommands: validate, run, top, region. Logs go to standard error, results
to standard output. Exit codes: 0 success, 1 validation failure, 2 I/O
failure, 3 internal invariant violation.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Optional

from heatwave_ac.config import configure_logging, get_int_config, resolve_threads
from heatwave_ac.errors import InvariantViolation, ValidationError
from heatwave_ac.model.stats import region_summary, top_cells
from heatwave_ac.outputs import read_cells_csv, read_centroids
from heatwave_ac.runner import SimulationRunner

logger = logging.getLogger("heatwave_ac")

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_INVARIANT = 3


def _emit(payload: Any) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _bbox(value: str) -> tuple[float, float, float, float]:
    parts = value.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected MIN_LAT,MIN_LON,MAX_LAT,MAX_LON")
    try:
        min_lat, min_lon, max_lat, max_lon = (float(part) for part in parts)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None
    return min_lat, min_lon, max_lat, max_lon


def _add_input_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--census", required=True, help="Census grid CSV")
    parser.add_argument("--weather", required=True, help="Weather station CSV")
    parser.add_argument(
        "--config", help="TOML run config (default: built-in scenario defaults)"
    )


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser."""
    parser = argparse.ArgumentParser(
        prog="heatwave-ac",
        description="Simulate additional residential electricity demand from mobile AC",
    )
    parser.add_argument(
        "--verbose", "-v", help="Enable verbose logging", action="store_true"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", help="Check all inputs")
    _add_input_args(validate)

    run = commands.add_parser("run", help="Simulate and write result files")
    _add_input_args(run)
    run.add_argument("--out", required=True, help="Output directory")
    run.add_argument(
        "--threads",
        type=int,
        default=get_int_config("HEATWAVE_AC_THREADS"),
        help="Worker threads, 0 = one per CPU (default: HEATWAVE_AC_THREADS or 0)",
    )
    run.add_argument(
        "--baseline-gw",
        type=float,
        default=None,
        help="Baseline system load in GW (overrides the config value)",
    )

    top = commands.add_parser("top", help="Print the highest-demand cells of an hour")
    top.add_argument("--results", required=True, help="Directory written by run")
    top.add_argument("--hour", type=int, required=True, help="Hour 0-23")
    top.add_argument("--n", type=int, default=10, help="Number of cells (default 10)")

    region = commands.add_parser("region", help="Summarize cells in a bounding box")
    region.add_argument("--results", required=True, help="Directory written by run")
    region.add_argument(
        "--bbox", type=_bbox, required=True, help="MIN_LAT,MIN_LON,MAX_LAT,MAX_LON"
    )
    return parser


def parse_args(argv: Optional[list[str]] = None) -> argparse.Namespace:
    """Parse command-line arguments."""
    return build_parser().parse_args(argv)


def _check_inputs(*paths: Optional[str]) -> None:
    for path in paths:
        if path is not None and not Path(path).is_file():
            raise FileNotFoundError(f"input file not found: {path}")


def cmd_validate(args: argparse.Namespace) -> int:
    _check_inputs(args.census, args.weather, args.config)
    runner = SimulationRunner(args.census, args.weather, args.config)
    report = runner.validate()
    _emit(report)
    return EXIT_OK if report["ok"] else EXIT_VALIDATION


def cmd_run(args: argparse.Namespace) -> int:
    _check_inputs(args.census, args.weather, args.config)
    threads = resolve_threads(args.threads)
    runner = SimulationRunner(args.census, args.weather, args.config, threads=threads)
    result = runner.run(args.out, baseline_gw=args.baseline_gw)
    _emit(
        {
            "out": str(args.out),
            "cells": result.summary["cells"],
            "peak_hour": result.summary["peak_hour"],
            "peak_gw": result.summary["peak_gw"],
            "relative_increase_pct": result.summary["relative_increase_pct"],
        }
    )
    return EXIT_OK


def cmd_top(args: argparse.Namespace) -> int:
    table = read_cells_csv(args.results)
    print("rank,grid_id,kwh")
    for rank, (cell_id, value) in enumerate(
        top_cells(table, args.hour, args.n), start=1
    ):
        print(f"{rank},{cell_id},{value!r}")
    return EXIT_OK


def cmd_region(args: argparse.Namespace) -> int:
    table = read_cells_csv(args.results)
    summary = region_summary(table, read_centroids(args.results), args.bbox)
    _emit(
        {
            "bbox": list(args.bbox),
            "cells": summary.cell_count,
            "peak_hour": summary.peak_hour,
            "peak_kwh": summary.peak_kwh,
            "hourly_kwh": list(summary.hourly.values),
        }
    )
    return EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "validate": cmd_validate,
    "run": cmd_run,
    "top": cmd_top,
    "region": cmd_region,
}


def main(argv: Optional[list[str]] = None) -> int:
    """Main entry point."""
    args = parse_args(argv)
    configure_logging()
    if args.verbose:
        logger.setLevel(logging.DEBUG)

    try:
        return COMMANDS[args.command](args)
    except ValidationError as e:
        logger.error(str(e))
        if args.command != "validate":
            _emit({"ok": False, "errors": [e.to_dict()]})
        return EXIT_VALIDATION
    except ValueError as e:
        # argument values the parser cannot check (hour, n, bbox order)
        logger.error(str(e))
        return EXIT_VALIDATION
    except OSError as e:
        logger.error(f"I/O failure: {e}")
        return EXIT_IO
    except InvariantViolation as e:
        logger.critical(str(e))
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
