"""Main module for the abduction command line."""

import argparse
import logging
import sys
from typing import List, Optional

from .. import __version__
from ..utils.config import BENCH_WORKERS, EXIT_USAGE, LOGGING_CONFIG
from .handlers import command_handlers

# Configure logging
logging.basicConfig(**LOGGING_CONFIG)
logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    """Argument parser that exits with 1 on usage errors."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", "-i", help="problem file (default: stdin)")
    parser.add_argument("--input-format", choices=["abd", "ofn"], default="abd",
                        help="problem file (abd) or functional-syntax ontology (ofn)")


def _add_limits(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--no-modules", action="store_true", help="use the whole background TBox")
    parser.add_argument("--no-presaturation", action="store_true", help="skip the atomic subsumption clauses")
    parser.add_argument("--depth-bound", type=int, help="override the computed skolem depth bound")
    parser.add_argument("--soft-timeout", type=float, help="seconds before saturation stops early")
    parser.add_argument("--hard-timeout", type=float, help="seconds before a phase is aborted")


def create_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser with one subparser per handler.

    Returns:
        The configured parser
    """
    parser = _Parser(
        prog="abduce",
        description="Connection-minimal TBox abduction for EL via prime implicates",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    abduce = sub.add_parser("abduce", help="compute hypotheses for one problem")
    _add_input(abduce)
    _add_limits(abduce)
    abduce.add_argument("--output", "-o", help="report file (default: stdout)")
    abduce.add_argument("--format", choices=["json", "text"], default="text")
    abduce.add_argument("--verify", action="store_true", help="re-check every hypothesis with the oracle")
    abduce.add_argument("--trace", metavar="PATH", help="write one line per kept inference")
    abduce.add_argument("--dump-clauses", metavar="PATH", help="write the translated clause set")
    abduce.add_argument("--observation", help="observation 'C SubClassOf D' (required for ofn input)")
    abduce.add_argument("--abducibles", help="'all' or a comma-separated list of names")

    classify = sub.add_parser("classify", help="print the subsumers of every concept name")
    _add_input(classify)
    classify.add_argument("--output", "-o", help="output file (default: stdout)")
    classify.add_argument("--format", choices=["json", "text"], default="text")

    gen = sub.add_parser("bench-gen", help="generate ORIGIN / JUSTIF / REPAIR problems from a TBox")
    _add_input(gen)
    gen.add_argument("--out-dir", required=True, help="directory for problem files and manifest")
    gen.add_argument("--families", default="ORIGIN,JUSTIF,REPAIR")
    gen.add_argument("--count", type=int, default=5, help="problems per family")
    gen.add_argument("--seed", type=int, default=0)

    run = sub.add_parser("bench-run", help="run every problem of a directory and summarize")
    run.add_argument("--problems", required=True, help="directory written by bench-gen")
    run.add_argument("--out-dir", help="directory for results and summary (default: --problems)")
    run.add_argument("--workers", type=int, help=f"parallel problems (default {BENCH_WORKERS})")
    _add_limits(run)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse the arguments and dispatch to the subcommand handler.

    Returns:
        The handler's exit code
    """
    args = create_parser().parse_args(argv)
    handler = command_handlers[args.command]
    logger.debug(f"Running {args.command}")
    return handler(args)


if __name__ == '__main__':
    raise SystemExit(main())
