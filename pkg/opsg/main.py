"""Command-line entry point: argument parsing, dispatch and error reporting."""
import argparse
import logging
import sys
from typing import Sequence

from pydantic import ValidationError

from opsg.commands import construct, gen, oracle, verify
from opsg.core.config import settings
from opsg.core.config_logging import configure_logging
from opsg.core.exceptions import DegenerateInput, OpsgError
from opsg.entities.schemas import ErrorReport

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opsg",
        description="Open plane straight-line graphs on planar point sets.",
    )
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help=f"Override the configured level ({settings.LOG_LEVEL})",
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    # Commands
    construct.register(subparsers)
    oracle.register(subparsers)
    gen.register(subparsers)
    verify.register(subparsers)
    return parser


def report_error(exc: OpsgError) -> int:
    """Log the failure and print it as one JSON line on stderr."""
    logger.error(f"{exc.__class__.__name__}: {exc.message}")
    print(ErrorReport.model_validate(exc.to_dict()).model_dump_json(), file=sys.stderr)
    return exc.exit_code


def run(argv: Sequence[str] | None = None) -> int:
    """Parse `argv`, run the subcommand and return the process exit code.

    Exit codes: 0 success, 1 validation failure, 2 bad input, 3 oracle cap exceeded.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    configure_logging()
    if args.log_level is not None:
        logging.getLogger("opsg").setLevel(args.log_level)
    logger.debug(f"Command {args.command} with {vars(args)}")

    try:
        return args.handler(args)
    except OpsgError as e:
        return report_error(e)
    except ValidationError as e:
        return report_error(DegenerateInput(str(e.errors()[0].get("msg", e))))


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
