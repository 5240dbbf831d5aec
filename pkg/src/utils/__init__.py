"""Utility modules for the EL abduction toolkit."""

from .config import *
from .helpers import describe, process_memory_mb, Deadline
from .exceptions import (
    AbductionError,
    ProblemSyntaxError,
    UnknownNameError,
    AlreadyEntailed,
    NotNormalized,
    NotAHomomorphism,
    BoundsExhausted,
    NoCandidate,
    NotEntailed,
    TautologyError,
    PhaseTimeout
)

__all__ = ['SOFT_TIMEOUT', 'HARD_TIMEOUT', 'FRESH_PREFIX', 'TOP_NAME',
           'BENCH_WORKERS', 'ORACLE_MAX_TREE_DEPTH', 'ORACLE_MAX_NODES',
           'ORACLE_MAX_TERM_DEPTH', 'LOG_LEVEL', 'LOGGING_CONFIG',
           'EXIT_OK', 'EXIT_USAGE', 'EXIT_ENTAILED', 'EXIT_NO_HYPOTHESES',
           'describe', 'process_memory_mb', 'Deadline',
           'AbductionError', 'ProblemSyntaxError', 'UnknownNameError',
           'AlreadyEntailed', 'NotNormalized', 'NotAHomomorphism',
           'BoundsExhausted', 'NoCandidate', 'NotEntailed', 'TautologyError',
           'PhaseTimeout']
