"""Main entry point for the photon gate simulator"""

import argparse
import logging
import sys

from src.exceptions import InvalidParameterError
from src.models.run_config import COMMANDS, FORMATS, RunConfig
from src.pipeline import EXIT_INVALID_INPUT, SimulationPipeline
from src.utils.config_loader import ConfigLoader


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Photonic conditional-phase gate simulator"
    )

    parser.add_argument("command", choices=COMMANDS, help="What to run")

    physical = parser.add_argument_group("gate parameters (units of the atomic decay rate)")
    physical.add_argument("--gamma", type=float, default=1.0, help="Photon bandwidth (default: 1)")
    physical.add_argument("--Gamma", dest="coupling", type=float, default=1.0,
                          help="Atomic decay rate for both transitions (default: 1)")
    physical.add_argument("--gamma-h", type=float, default=None, help="Explicit H-transition decay rate")
    physical.add_argument("--gamma-v", type=float, default=None, help="Explicit V-transition decay rate")
    physical.add_argument("--delta", type=float, default=5.0, help="Photon-atom detuning (default: 5)")

    sweep = parser.add_argument_group("sweep and cascade")
    sweep.add_argument("--delta-min", type=float, default=-4.0, help="First sweep detuning (default: -4)")
    sweep.add_argument("--delta-max", type=float, default=4.0, help="Last sweep detuning (default: 4)")
    sweep.add_argument("--points", type=int, default=81, help="Number of sweep points (default: 81)")
    sweep.add_argument("--no-purity", action="store_true", help="Skip the purity column")
    sweep.add_argument("--steps", type=int, default=None, help="Cascade length (default: from config)")
    sweep.add_argument("--fit-range", type=int, nargs=2, metavar=("LOW", "HIGH"), default=None,
                       help="Steps used for the cascade growth fit (default: from config, else automatic)")
    sweep.add_argument("--n", dest="n_values", type=float, nargs="+", default=None,
                       help="Cascade lengths for optimize (default: 1e3 1e5 1e7)")

    numerics = parser.add_argument_group("numerics and output")
    numerics.add_argument("--resolution", type=int, default=None, help="Grid resolution (default: from config)")
    numerics.add_argument("--cutoff", type=float, default=None, help="Grid window multiplier (default: from config)")
    numerics.add_argument("--output", type=str, default=None,
                          help="Output file (default: <PHOTON_GATE_OUTPUT_DIR>/<command>.<format>)")
    numerics.add_argument("--format", dest="fmt", choices=FORMATS, default="csv", help="Artifact format")
    numerics.add_argument("--seed", type=int, default=0, help="Seed for randomized searches (default: 0)")
    numerics.add_argument("--config-dir", type=str, default="config",
                          help="Directory containing configuration files (default: config)")
    numerics.add_argument("--log-dir", type=str, default="logs", help="Directory for log files (default: logs)")
    numerics.add_argument("--verbose", action="store_true", help="Enable verbose logging")
    return parser


def resolve_run_config(args: argparse.Namespace) -> RunConfig:
    """Merge command-line flags over the configured numerical defaults"""
    simulation = ConfigLoader(args.config_dir).load_simulation_config()
    options = {
        "command": args.command,
        "gamma": args.gamma,
        "coupling": args.coupling,
        "gamma_h": args.gamma_h,
        "gamma_v": args.gamma_v,
        "delta": args.delta,
        "delta_min": args.delta_min,
        "delta_max": args.delta_max,
        "points": args.points,
        "steps": args.steps if args.steps is not None else simulation["cascade"]["steps"],
        "fit_range": list(args.fit_range) if args.fit_range is not None else simulation["cascade"]["fit_range"],
        "resolution": args.resolution if args.resolution is not None else simulation["grid"]["resolution"],
        "cutoff": args.cutoff if args.cutoff is not None else simulation["grid"]["cutoff"],
        "include_purity": not args.no_purity,
        "output": args.output,
        "fmt": args.fmt,
        "seed": args.seed,
    }
    if args.n_values is not None:
        options["n_values"] = list(args.n_values)
    return RunConfig(**options)


def main():
    """Main function to run the simulator"""
    args = build_parser().parse_args()
    log_level = logging.DEBUG if args.verbose else logging.INFO

    try:
        run_config = resolve_run_config(args)
    except InvalidParameterError as e:
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(EXIT_INVALID_INPUT)

    pipeline = SimulationPipeline(config_dir=args.config_dir, log_level=log_level, log_dir=args.log_dir)
    results = pipeline.run(run_config)

    if results.get("output_path"):
        print(results["output_path"])
    if results.get("error"):
        print(f"Error: {results['error']}", file=sys.stderr)
    sys.exit(results["exit_code"])


if __name__ == "__main__":
    main()
