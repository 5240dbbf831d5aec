"""Handler module for the abduce subcommand."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

from ...services.oracle import OracleConfig
from ...services.pipeline import AbduceOptions, run_abduce
from ...services.preprocess import AbductionProblem
from ...utils.config import (
    EXIT_ENTAILED,
    EXIT_NO_HYPOTHESES,
    EXIT_OK,
    EXIT_USAGE,
    HARD_TIMEOUT,
    SOFT_TIMEOUT,
)
from ...utils.exceptions import AbductionError, AlreadyEntailed, PhaseTimeout
from ..parser import parse_abducibles, parse_axiom, parse_ofn, parse_problem_file
from ..render import render_json, render_text

logger = logging.getLogger(__name__)

FileOptions = Dict[str, Union[int, float, bool]]


def read_input(path: Optional[str]) -> Tuple[str, str]:
    """Text of `path`, or of stdin when no path (or '-') is given."""
    if not path or path == "-":
        return sys.stdin.read(), "<stdin>"
    return Path(path).read_text(), path


def write_output(text: str, path: Optional[str]) -> None:
    if not path or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    Path(path).write_text(text)
    logger.info(f"Output written to {path}")


def load_problem(args: argparse.Namespace) -> Tuple[AbductionProblem, FileOptions]:
    """
    Build the abduction problem from the input file and the override flags.

    Raises:
        ProblemSyntaxError: On malformed input
        UnknownNameError: On abducibles outside the signature
        AlreadyEntailed: If the background entails the observation
    """
    text, source = read_input(args.input)
    if args.input_format == "ofn":
        if not args.observation:
            raise AbductionError("--observation is required with --input-format ofn")
        tbox = parse_ofn(text)
        observation = parse_axiom(args.observation, allow_equivalence=False)[0]
        signature = tbox.concept_names | observation.concept_names
        abducibles = parse_abducibles(args.abducibles or "all", signature)
        return AbductionProblem(tbox, abducibles, observation), {}

    observation = parse_axiom(args.observation, allow_equivalence=False)[0] if args.observation else None
    parsed = parse_problem_file(text, source, observation)
    problem = parsed.problem
    if args.abducibles:
        problem = AbductionProblem(
            problem.background, parse_abducibles(args.abducibles, problem.signature), problem.observation
        )
    return problem, parsed.options


def _pick(flag, file_value, default):
    if flag is not None:
        return flag
    if file_value is not None:
        return file_value
    return default


def build_options(args: argparse.Namespace, file_options: FileOptions) -> AbduceOptions:
    """Flags win over the file's options block, which wins over the environment."""
    return AbduceOptions(
        use_modules=False if args.no_modules else bool(file_options.get('modules', True)),
        presaturate=False if args.no_presaturation else bool(file_options.get('presaturation', True)),
        depth_bound=_pick(args.depth_bound, file_options.get('depth_bound'), None),
        soft_timeout=_pick(args.soft_timeout, file_options.get('soft_timeout'), SOFT_TIMEOUT),
        hard_timeout=_pick(args.hard_timeout, file_options.get('hard_timeout'), HARD_TIMEOUT),
        verify=args.verify,
        trace=bool(args.trace),
        dump_clauses=bool(args.dump_clauses),
        oracle=OracleConfig(),
    )


def handle_abduce(args: argparse.Namespace) -> int:
    """
    Run the pipeline on one problem and print the report.

    Returns:
        0 with hypotheses, 3 without, 2 if already entailed, 1 on input errors
    """
    try:
        problem, file_options = load_problem(args)
        options = build_options(args, file_options)
    except AlreadyEntailed as e:
        logger.error(f"Nothing to explain: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ENTAILED
    except (AbductionError, OSError, ValueError) as e:
        logger.error(f"Cannot read problem: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        report = run_abduce(problem, options)
    except PhaseTimeout as e:
        logger.error(f"Abduction aborted: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    if args.trace:
        Path(args.trace).write_text("\n".join(report.trace) + "\n")
        logger.info(f"Trace with {len(report.trace)} inferences written to {args.trace}")
    if args.dump_clauses:
        Path(args.dump_clauses).write_text(report.clause_dump + "\n")
        logger.info(f"Clauses written to {args.dump_clauses}")

    rendered = render_json(report) if args.format == "json" else render_text(report)
    write_output(rendered, args.output)
    return EXIT_OK if report.hypotheses else EXIT_NO_HYPOTHESES
