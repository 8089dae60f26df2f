"""
Superanalysis engine - command-line entry point

Usage:
    python app.py algebra so3
    python app.py brst --input oscillator.json
    python app.py geometry --chart sphere --param radius=2 --grid 20 --format csv
    python app.py rigid-body --inertia 1,2,3 --L0 1,0.5,0.3 --out trajectory.csv --format csv
    python app.py property-suite --seed 7 --samples 200
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from commands import initialize, run_command
from commands.run_config import RunConfig, parse_tolerance_overrides, parse_triple
from exceptions import ConfigurationError, InputSpecError
from output import ReportWriter
from settings import settings_manager

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

EXIT_OK = 0
EXIT_CHECKS_FAILED = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="Output file (default: standard output)")
    common.add_argument("--format", dest="output_format", choices=("json", "csv"), help="Output format")
    common.add_argument("--seed", type=int, help="Seed of the randomized suites")
    common.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE", help="Tolerance override (repeatable)")
    common.add_argument("--log-level", choices=("DEBUG", "INFO", "WARNING", "ERROR"), help="Logging level")
    common.add_argument("--config-dir", type=Path, help="Directory holding config.json / settings.json")

    parser = argparse.ArgumentParser(prog="superanalysis", description="Deformed superanalysis engine")
    sub = parser.add_subparsers(dest="command", required=True)

    algebra = sub.add_parser("algebra", parents=[common], help="Clifford product tables and bivector algebras")
    algebra.add_argument("name", help="clifford:d:euclid|minkowski|minkowski-std|symplectic, so3, lorentz:std|nonstd, un:n, gln:n")

    brst = sub.add_parser("brst", parents=[common], help="Extended Hamiltonian and BRST checks")
    brst.add_argument("--input", type=Path, required=True, help="Hamiltonian spec JSON")

    geometry = sub.add_parser("geometry", parents=[common], help="Per-point geometry tables")
    geometry.add_argument("--input", type=Path, help="Chart spec JSON")
    geometry.add_argument("--chart", choices=("plane", "sphere", "sphere3", "torus", "cylinder", "cotangent"), help="Chart family")
    geometry.add_argument("--param", action="append", default=[], metavar="NAME=VALUE", help="Chart parameter (repeatable)")
    geometry.add_argument("--grid", type=int, default=20, help="Points per axis")

    rigid = sub.add_parser("rigid-body", parents=[common], help="Free rigid-body trajectory")
    rigid.add_argument("--inertia", help="Principal moments I1,I2,I3")
    rigid.add_argument("--L0", dest="l0", help="Initial body angular momentum L1,L2,L3")
    rigid.add_argument("--dt", type=float, help="Time step")
    rigid.add_argument("--steps", type=int, help="Number of RK4 steps")

    suite = sub.add_parser("property-suite", parents=[common], help="Randomized identity checks")
    suite.add_argument("--samples", type=int, help="Random samples per kernel signature")
    suite.add_argument("--grid", type=int, default=20, help="Points per axis of geometry grids")
    suite.add_argument("--suites", help="Comma-separated subset: kernel,algebra,brst,geometry,symplectic,rigid_body")
    return parser


def parse_params(items: List[str]) -> Dict[str, float]:
    params: Dict[str, float] = {}
    for item in items:
        key, sep, raw = item.partition("=")
        if not sep:
            raise InputSpecError(f"Parameter {item!r} is not name=value", "--param")
        try:
            params[key.strip()] = float(raw)
        except ValueError as e:
            raise InputSpecError(f"Parameter {item!r} has a non-numeric value", "--param", e) from e
    return params


def command_parameters(args: argparse.Namespace) -> Dict[str, Any]:
    if args.command == "geometry" and args.input is None:
        if args.chart is None:
            raise InputSpecError("geometry needs --input or --chart", "geometry")
        return {"family": args.chart, "parameters": parse_params(args.param)}
    if args.command == "rigid-body":
        params: Dict[str, Any] = {}
        if args.inertia:
            params["inertia"] = parse_triple(args.inertia, "--inertia")
        if args.l0:
            params["L0"] = parse_triple(args.l0, "--L0")
        if args.dt is not None:
            params["dt"] = args.dt
        if args.steps is not None:
            params["steps"] = args.steps
        return params
    if args.command == "property-suite" and args.suites:
        return {"suites": [name.strip() for name in args.suites.split(",") if name.strip()]}
    return {}


def build_config(args: argparse.Namespace) -> RunConfig:
    """Merges CLI arguments with settings defaults.

    Raises:
        InputSpecError: If an argument is malformed or the configuration fails validation.
    """
    values: Dict[str, Any] = {
        "command": args.command,
        "name": getattr(args, "name", None),
        "input": getattr(args, "input", None),
        "parameters": command_parameters(args),
        "output_format": args.output_format or settings_manager.get("output.format", "json"),
        "out": args.out,
        "tolerances": parse_tolerance_overrides(args.tol),
        "seed": args.seed if args.seed is not None else settings_manager.get("property_suite.seed", 0),
        "samples": getattr(args, "samples", None) or settings_manager.get("property_suite.samples", 200),
        "grid": getattr(args, "grid", 20),
    }
    try:
        return RunConfig.model_validate(values)
    except ValidationError as e:
        raise InputSpecError("Invalid run configuration", "command line", e) from e


def configure(args: argparse.Namespace) -> None:
    if args.config_dir is not None:
        settings_manager.config_dir = args.config_dir
    settings_manager.reload_config()
    problems = settings_manager.validate_settings()
    if problems:
        raise ConfigurationError(f"Invalid settings: {'; '.join(problems)}")

    level = args.log_level or str(settings_manager.get("logging.level", "INFO")).upper()
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(level)


def emit_failures(failures: List[Dict[str, Any]]) -> None:
    sys.stderr.write(json.dumps({"passed": False, "failures": failures}, indent=2) + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    """Runs one subcommand; exit code 0 iff every in-run check passed."""
    load_dotenv()
    args = build_parser().parse_args(argv)
    try:
        configure(args)
        config = build_config(args)
        report = run_command(config, initialize())
    except (InputSpecError, ConfigurationError) as e:
        logger.error(f"Usage error: {e}")
        emit_failures([{"check": "usage", "message": str(e), "error": type(e).__name__}])
        return EXIT_USAGE

    writer = ReportWriter(settings_manager.get("output.directory") if config.out is not None else None)
    text = writer.write(report, config.output_format, config.out)
    if config.out is None:
        sys.stdout.write(text)
    if not report["passed"]:
        emit_failures(list(report["failures"]))
        return EXIT_CHECKS_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
