"""Service module running the whole abduction pipeline on one problem."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from ..el.reasoner import classify
from ..fol.clauses import ClauseSet
from ..utils.config import HARD_TIMEOUT, SOFT_TIMEOUT
from ..utils.exceptions import BoundsExhausted
from ..utils.helpers import Deadline, process_memory_mb
from .engine import PrimeImplicateSets, saturate
from .oracle import OracleConfig, check_connection_minimal
from .preprocess import AbductionProblem, PreparedProblem, prepare
from .recombine import Hypothesis, build_hypotheses, subset_minimal_filter, verify_solution
from .translate import depth_bound, presaturate, translate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AbduceOptions:
    use_modules: bool = True
    presaturate: bool = True
    depth_bound: Optional[int] = None
    soft_timeout: Optional[float] = SOFT_TIMEOUT
    hard_timeout: Optional[float] = HARD_TIMEOUT
    verify: bool = False
    trace: bool = False
    dump_clauses: bool = False
    oracle: OracleConfig = field(default_factory=OracleConfig)


@dataclass
class Report:
    """Everything one abduction run produced."""
    complete: bool
    depth_bound: int
    hypotheses: List[Hypothesis]
    phase_ms: Dict[str, float] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)
    positive_implicates: int = 0
    negative_implicates: int = 0
    given_clauses: int = 0
    clauses: int = 0
    background_size: int = 0
    module_size: int = 0
    memory_mb: float = 0.0
    # one entry per hypothesis when verification ran
    verification: List[Dict[str, Optional[bool]]] = field(default_factory=list)
    trace: List[str] = field(default_factory=list)
    clause_dump: Optional[str] = None

    @property
    def max_term_depth(self) -> int:
        depths = [
            t.depth for h in self.hypotheses if h.provenance is not None for t in h.provenance.support
        ]
        return max(depths, default=0)

    def stats(self) -> Dict[str, object]:
        return {
            'phase_ms': dict(self.phase_ms),
            'num_hypotheses': len(self.hypotheses),
            'hypothesis_sizes': [len(h) for h in self.hypotheses],
            'axiom_sizes': [a.size() for h in self.hypotheses for a in h.sorted_axioms()],
            'positive_implicates': self.positive_implicates,
            'negative_implicates': self.negative_implicates,
            'given_clauses': self.given_clauses,
            'clauses': self.clauses,
            'background_size': self.background_size,
            'module_size': self.module_size,
            'max_term_depth': self.max_term_depth,
            'memory_mb': self.memory_mb,
        }


class _Phases:
    """Collects wall-clock milliseconds per phase."""

    def __init__(self, hard: Optional[float]):
        self.hard = hard
        self.ms: Dict[str, float] = {}

    def start(self, name: str) -> Deadline:
        return Deadline(name, None, self.hard)

    def stop(self, deadline: Deadline) -> None:
        self.ms[deadline.phase] = round(deadline.elapsed() * 1000, 3)
        logger.info(f"Phase {deadline.phase} took {self.ms[deadline.phase]:.1f} ms")


def _verify(p: AbductionProblem, hypotheses: List[Hypothesis], cfg: OracleConfig, warnings: List[str]):
    results = []
    for h in hypotheses:
        entry: Dict[str, Optional[bool]] = {'solution': verify_solution(p.background, h, p.observation)}
        try:
            entry['connection_minimal'] = check_connection_minimal(
                p.background, p.observation, h, cfg, abducibles=p.abducibles
            )
        except BoundsExhausted as e:
            entry['connection_minimal'] = None
            warnings.append(f"oracle undecided for {h}: {e}")
        if not entry['solution'] or entry['connection_minimal'] is False:
            warnings.append(f"verification failed for {h}: {entry}")
        results.append(entry)
    return results


def run_abduce(p: AbductionProblem, options: AbduceOptions = AbduceOptions()) -> Report:
    """
    Prepare, translate, saturate and recombine one abduction problem.

    Args:
        p: The abduction problem
        options: Phase switches, bounds and limits

    Returns:
        The report with subset-minimal hypotheses in a deterministic order

    Raises:
        PhaseTimeout: When a phase passes the hard limit
    """
    phases = _Phases(options.hard_timeout)
    warnings: List[str] = []

    deadline = phases.start("prepare")
    prepared: PreparedProblem = prepare(p, use_modules=options.use_modules)
    phases.stop(deadline)

    deadline = phases.start("translate")
    phi: ClauseSet = translate(prepared)
    if options.presaturate:
        phi = presaturate(phi, classify(prepared.tbox))
    bound = options.depth_bound if options.depth_bound is not None else depth_bound(phi)
    phases.stop(deadline)
    logger.info(f"Depth bound {bound} over {len(phi)} clauses")

    deadline = phases.start("saturate")
    trace: Optional[List[str]] = [] if options.trace else None
    pi: PrimeImplicateSets = saturate(
        phi, bound,
        soft_limit=options.soft_timeout,
        hard_limit=options.hard_timeout,
        trace=trace,
    )
    phases.stop(deadline)
    if not pi.complete:
        warnings.append(
            f"saturation stopped at the soft limit of {options.soft_timeout:g}s; hypotheses are not guaranteed constructible"
        )

    deadline = phases.start("recombine")
    hypotheses = build_hypotheses(pi, prepared.abducibles, tbox=p.background, deadline=deadline)
    hypotheses = subset_minimal_filter(hypotheses)
    phases.stop(deadline)

    report = Report(
        complete=pi.complete,
        depth_bound=bound,
        hypotheses=hypotheses,
        warnings=warnings,
        positive_implicates=pi.positive_count,
        negative_implicates=len(pi.negative),
        given_clauses=pi.given_clauses,
        clauses=len(phi),
        background_size=len(p.background),
        module_size=prepared.module_size,
        trace=trace or [],
        clause_dump=phi.dump() if options.dump_clauses else None,
    )
    if options.verify:
        deadline = phases.start("verify")
        report.verification = _verify(p, hypotheses, options.oracle, warnings)
        phases.stop(deadline)

    report.phase_ms = phases.ms
    report.memory_mb = process_memory_mb()
    logger.info(f"Found {len(hypotheses)} hypotheses ({'complete' if pi.complete else 'incomplete'})")
    return report
