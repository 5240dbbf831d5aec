"""Handler module for the classify subcommand."""

import argparse
import logging
import sys

from ...el.normal_form import normalize
from ...el.reasoner import classify
from ...services.preprocess import is_reserved
from ...utils.config import EXIT_OK, EXIT_USAGE
from ...utils.exceptions import AbductionError
from ..parser import parse_ofn, parse_tbox
from ..render import classification_to_dict, render_classification
from .abduce import read_input, write_output

logger = logging.getLogger(__name__)


def handle_classify(args: argparse.Namespace) -> int:
    """Print the subsumers of every concept name of the input TBox."""
    try:
        text, source = read_input(args.input)
        tbox = parse_ofn(text) if args.input_format == "ofn" else parse_tbox(text, source)
    except (AbductionError, OSError) as e:
        logger.error(f"Cannot read TBox: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    table = classify(normalize(tbox)[0])
    names = [n for n in tbox.concept_names if not is_reserved(n)]
    logger.info(f"Classified {len(names)} concept names")
    write_output(render_classification(classification_to_dict(table, names), args.format), args.output)
    return EXIT_OK
