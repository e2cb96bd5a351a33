import argparse
import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from app import __version__
from app.config import get_settings
from app.routers import CommandError, add_commands, add_common_flags
from app.routers.commands import EXIT_ERROR, emit
from app.schemas import ErrorResponse
from app.modules import (
    BoundsError,
    ColouringError,
    ConstructionError,
    GraphError,
    SolverError,
    SweepError,
)

logger = logging.getLogger(__name__)

DOMAIN_ERRORS = (
    GraphError,
    ColouringError,
    SolverError,
    ConstructionError,
    BoundsError,
    SweepError,
    CommandError,
)


def configure_logging(level: Optional[str] = None) -> None:
    """Human diagnostics go to stderr; stdout is reserved for JSON, graph6 and CSV."""
    logging.basicConfig(
        level=getattr(logging, (level or get_settings().log_level).upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    add_common_flags(common)

    parser = argparse.ArgumentParser(
        prog="prclab",
        description="Exact proper rainbow connection laboratory",
    )
    parser.add_argument("--version", action="version", version=f"prclab {__version__}")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    add_commands(subparsers, common)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run one subcommand and return its exit code.

    0 success, 1 usage or domain error (or a rejected certificate),
    2 bracketed solve, 3 violated claims.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors; 2 is reserved for bracketed solves
        return 0 if e.code in (0, None) else EXIT_ERROR

    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except DOMAIN_ERRORS as e:
        logger.error(f"{args.command} failed: {e}")
        emit(ErrorResponse(error=type(e).__name__, detail=str(e)))
        return EXIT_ERROR
    except ValidationError as e:
        logger.error(f"{args.command}: invalid input: {e}")
        emit(ErrorResponse(error="ValidationError", detail=str(e)))
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
