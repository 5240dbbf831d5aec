"""Services package for the abduction pipeline."""

from .preprocess import (
    AbductionProblem,
    PreparedProblem,
    prepare,
    eliminate_top,
    wrap_observation,
    extract_bot_module,
    extract_top_module
)

from .translate import (
    translate,
    duplicate,
    presaturate,
    depth_bound
)

from .engine import PrimeImplicateSets, saturate
from .recombine import (
    Hypothesis,
    build_hypotheses,
    filter_axiom_entailed,
    subset_minimal_filter,
    verify_solution
)

from .oracle import (
    OracleConfig,
    naive_saturation,
    check_connection_minimal,
    enumerate_packed,
    hypotheses_equivalent
)

from .benchgen import (
    BenchProblem,
    RunStats,
    gen_origin,
    gen_justif,
    gen_repair,
    compute_justification,
    compute_repair,
    summarize
)

from .pipeline import AbduceOptions, Report, run_abduce

__all__ = [
    # Preprocessing exports
    'AbductionProblem',
    'PreparedProblem',
    'prepare',
    'eliminate_top',
    'wrap_observation',
    'extract_bot_module',
    'extract_top_module',

    # Translation exports
    'translate',
    'duplicate',
    'presaturate',
    'depth_bound',

    # Engine exports
    'PrimeImplicateSets',
    'saturate',

    # Recombination exports
    'Hypothesis',
    'build_hypotheses',
    'filter_axiom_entailed',
    'subset_minimal_filter',
    'verify_solution',

    # Oracle exports
    'OracleConfig',
    'naive_saturation',
    'check_connection_minimal',
    'enumerate_packed',
    'hypotheses_equivalent',

    # Benchmark exports
    'BenchProblem',
    'RunStats',
    'gen_origin',
    'gen_justif',
    'gen_repair',
    'compute_justification',
    'compute_repair',
    'summarize',

    # Pipeline exports
    'AbduceOptions',
    'Report',
    'run_abduce'
]
