# navier_bie/main.py - Command-line entry point
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .config.settings import configure_logging, settings
from .controllers.experiment_controller import ExperimentController
from .models.experiment import load_config
from .utils.errors import ConfigurationError, NavierBIEError

logger = logging.getLogger(__name__)

COMMANDS = ("solve", "convergence", "gmres-study", "spectrum", "condition")


def _comma_list(cast):
    def parse(text: str):
        try:
            return [cast(item) for item in text.split(",") if item.strip()]
        except ValueError as e:
            raise argparse.ArgumentTypeError(str(e))

    return parse


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="navier-bie",
        description="Exterior elastic scattering by regularized boundary integral equations",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", type=Path, help="TOML experiment manifest")
    parser.add_argument("--geometry", type=_comma_list(str), help="comma list of built-in curves")
    parser.add_argument("--param-kind", choices=["arc", "natural"])
    parser.add_argument("--omega", type=_comma_list(float), help="comma list of frequencies")
    parser.add_argument("--N", dest="N", type=_comma_list(int), help="comma list of grid sizes")
    parser.add_argument("--solver", choices=["direct", "gmres"])
    parser.add_argument("--tol", type=float)
    parser.add_argument("--out", type=Path)
    parser.add_argument("--unregularized", action="store_true", default=None)
    parser.add_argument("--eps", type=float)
    parser.add_argument("--dump-systems", action="store_true", help="write binary system matrices (solve)")
    parser.add_argument("--export-fields", action="store_true", help="write probe fields as CSV (solve)")
    parser.add_argument("--log-level", default=settings.log_level)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    overrides = {
        "geometry": args.geometry,
        "param_kind": args.param_kind,
        "omega": args.omega,
        "N": args.N,
        "solver": args.solver,
        "tol": args.tol,
        "out": args.out,
        "unregularized": args.unregularized,
        "eps": args.eps,
    }
    try:
        config = load_config(args.config, overrides)
        print(
            f"🚀 navier-bie {args.command}: {config.geometry} {config.param_kind.value}, "
            f"omega={config.omega}, N={config.N}, solver={config.solver.value}",
            file=sys.stderr,
        )
        print(f"📁 writing results to {config.out}", file=sys.stderr)
        controller = ExperimentController(config)
        if args.command == "solve":
            rows = controller.cmd_solve(dump_systems=args.dump_systems, export_fields=args.export_fields)
        elif args.command == "convergence":
            rows = controller.cmd_convergence()
        elif args.command == "gmres-study":
            rows = controller.cmd_gmres_study()
        elif args.command == "spectrum":
            rows = controller.cmd_spectrum()
        else:
            rows = controller.cmd_condition()
    except ConfigurationError as e:
        logger.error(f"configuration error: {e}")
        return e.exit_code
    except NavierBIEError as e:
        logger.error(f"numerical failure: {e}")
        return e.exit_code

    for row in rows:
        print(", ".join(f"{key}={value}" for key, value in row.items()))
    print(f"✅ {args.command} finished, results in {config.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
