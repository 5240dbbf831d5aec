"""Service module generating benchmark problems and summarizing batch runs."""

from __future__ import annotations

import csv
import json
import logging
import random
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..el.concepts import Atomic, ConceptInclusion, TBox
from ..el.normal_form import normalize
from ..el.reasoner import SubsumptionTable, classify, entails_ci
from ..utils.exceptions import NoCandidate, NotEntailed, TautologyError
from ..utils.helpers import describe
from .preprocess import AbductionProblem, concept_signature, extract_bot_module

logger = logging.getLogger(__name__)

ORIGIN, JUSTIF, REPAIR = "ORIGIN", "JUSTIF", "REPAIR"
FAMILIES = (ORIGIN, JUSTIF, REPAIR)


@dataclass(frozen=True)
class BenchProblem:
    family: str
    problem: AbductionProblem
    seed: int
    source_meta: Mapping[str, str] = field(default_factory=dict)


@dataclass
class RunStats:
    """Outcome of one abduction run inside a batch."""
    problem_id: str
    family: str
    success: bool = False
    complete: bool = False
    num_hypotheses: int = 0
    hypothesis_sizes: List[int] = field(default_factory=list)
    axiom_sizes: List[int] = field(default_factory=list)
    phase_ms: Dict[str, float] = field(default_factory=dict)
    max_term_depth: int = 0
    peak_memory_mb: float = 0.0
    error: Optional[str] = None

    @property
    def time_s(self) -> float:
        return round(sum(self.phase_ms.values()) / 1000, 3)

    def to_dict(self) -> Dict[str, object]:
        data = asdict(self)
        data['time_s'] = self.time_s
        return data


def _table(t: TBox) -> SubsumptionTable:
    return classify(normalize(t)[0])


def _atomic_pairs(t: TBox, entailed: bool) -> List[Tuple[str, str]]:
    table = _table(t)
    names = sorted(t.concept_names)
    return [
        (a, b) for a in names for b in names
        if a != b and table.subsumes(a, b) == entailed
    ]


def _observation(pair: Tuple[str, str]) -> ConceptInclusion:
    return ConceptInclusion(Atomic(pair[0]), Atomic(pair[1]))


def gen_origin(t: TBox, rng_seed: int, source: str = "tbox") -> BenchProblem:
    """
    Pick a random non-entailed A ⊑ B over the signature of `t`.

    Raises:
        NoCandidate: If every pair of distinct names is entailed
    """
    rng = random.Random(rng_seed)
    candidates = _atomic_pairs(t, entailed=False)
    if not candidates:
        raise NoCandidate(f"{source}: every atomic subsumption is entailed")
    alpha = _observation(rng.choice(candidates))
    problem = AbductionProblem.with_full_signature(t, alpha)
    return BenchProblem(ORIGIN, problem, rng_seed, {'source': source, 'alpha': str(alpha)})


def compute_justification(t: TBox, alpha: ConceptInclusion) -> TBox:
    """
    One ⊆-minimal subset of `t` entailing `alpha`.

    Expands over the ⊥-module of alpha's left-hand side in axiom order
    until alpha follows, then shrinks axiom by axiom.

    Args:
        t: The TBox
        alpha: An axiom entailed by `t`

    Returns:
        The justification, axioms in the order of `t`

    Raises:
        NotEntailed: If `t` does not entail `alpha`
    """
    if alpha in t:
        return TBox((alpha,))
    if not entails_ci(t, alpha):
        raise NotEntailed(f"'{alpha}' does not follow from the TBox")
    module = extract_bot_module(t, concept_signature(alpha.lhs))
    if not entails_ci(module, alpha):
        module = t

    chosen: List[ConceptInclusion] = []
    for ci in module:
        chosen.append(ci)
        if entails_ci(TBox(tuple(chosen)), alpha):
            break

    for ci in list(chosen):
        rest = TBox(tuple(x for x in chosen if x != ci))
        if entails_ci(rest, alpha):
            chosen.remove(ci)
    logger.debug(f"Justification of '{alpha}' has {len(chosen)} axioms")
    return TBox(tuple(ci for ci in t if ci in chosen))


def compute_repair(t: TBox, alpha: ConceptInclusion, rng: Optional[random.Random] = None) -> TBox:
    """
    One ⊆-maximal subset of `t` not entailing `alpha`.

    Removes one axiom of a justification of the remaining axioms until
    none is left, then adds back every removed axiom that keeps alpha
    out of reach.

    Args:
        t: The TBox
        alpha: An axiom entailed by `t`
        rng: Picks the axiom removed from each justification (first one if None)

    Returns:
        The repair, axioms in the order of `t`

    Raises:
        TautologyError: If every TBox entails `alpha`
        NotEntailed: If `t` does not entail `alpha`
    """
    if entails_ci(TBox(), alpha):
        raise TautologyError(f"'{alpha}' is a tautology and has no repair")
    if not entails_ci(t, alpha):
        raise NotEntailed(f"'{alpha}' does not follow from the TBox")

    remaining = t
    removed: List[ConceptInclusion] = []
    while entails_ci(remaining, alpha):
        justification = sorted(compute_justification(remaining, alpha), key=str)
        victim = rng.choice(justification) if rng is not None else justification[0]
        remaining = remaining.without(victim)
        removed.append(victim)

    for ci in removed:
        candidate = remaining.union((ci,))
        if not entails_ci(candidate, alpha):
            remaining = candidate
    kept = remaining.axiom_set
    logger.debug(f"Repair for '{alpha}' keeps {len(kept)} of {len(t)} axioms")
    return TBox(tuple(ci for ci in t if ci in kept))


def gen_justif(t: TBox, rng_seed: int, source: str = "tbox") -> BenchProblem:
    """
    Background: a justification of a random entailed, non-asserted A ⊑ B minus one random axiom.

    Raises:
        NoCandidate: If no such A ⊑ B exists
    """
    rng = random.Random(rng_seed)
    candidates = [p for p in _atomic_pairs(t, entailed=True) if _observation(p) not in t]
    if not candidates:
        raise NoCandidate(f"{source}: no entailed atomic subsumption outside the TBox")
    alpha = _observation(rng.choice(candidates))
    justification = compute_justification(t, alpha)
    dropped = rng.choice(sorted(justification, key=str))
    background = justification.without(dropped)
    problem = AbductionProblem.with_full_signature(background, alpha)
    meta = {'source': source, 'alpha': str(alpha), 'removed': str(dropped)}
    return BenchProblem(JUSTIF, problem, rng_seed, meta)


def gen_repair(t: TBox, rng_seed: int, source: str = "tbox") -> BenchProblem:
    """
    Background: a repair of `t` for a random entailed A ⊑ B.

    Raises:
        NoCandidate: If no atomic subsumption between distinct names is entailed
    """
    rng = random.Random(rng_seed)
    candidates = _atomic_pairs(t, entailed=True)
    if not candidates:
        raise NoCandidate(f"{source}: no entailed atomic subsumption")
    alpha = _observation(rng.choice(candidates))
    background = compute_repair(t, alpha, rng)
    problem = AbductionProblem.with_full_signature(background, alpha)
    return BenchProblem(REPAIR, problem, rng_seed, {'source': source, 'alpha': str(alpha)})


GENERATORS = {
    ORIGIN: gen_origin,
    JUSTIF: gen_justif,
    REPAIR: gen_repair,
}


def generate(
    t: TBox,
    families: Sequence[str] = FAMILIES,
    count: int = 5,
    seed: int = 0,
    source: str = "tbox",
) -> List[BenchProblem]:
    """
    Generate up to `count` problems per family; seeds are seed, seed+1, ...

    Families without candidates are logged and skipped.
    """
    problems: List[BenchProblem] = []
    for family in families:
        generator = GENERATORS[family]
        made = 0
        for offset in range(count):
            try:
                problems.append(generator(t, seed + offset, source))
                made += 1
            except NoCandidate as e:
                logger.warning(f"{family}: {e}")
                break
        logger.info(f"Generated {made} {family} problems from {source}")
    return problems


# --- statistics ------------------------------------------------------------------

SUMMARY_COLUMNS = [
    'family', 'problems', 'success_rate', 'completion_rate',
    'num_h_median', 'num_h_avg', 'num_h_max',
    'h_size_median', 'h_size_avg', 'h_size_max',
    'axiom_size_median', 'axiom_size_avg', 'axiom_size_max',
    'time_median', 'time_avg', 'time_max',
]


def _percent(part: int, whole: int) -> float:
    return round(100 * part / whole, 1) if whole else 0.0


def summarize(runs: Iterable[RunStats]) -> List[Dict[str, object]]:
    """
    One summary row per family, in family order.

    Hypothesis counts are taken over successful runs; hypothesis and
    axiom sizes over every hypothesis found; times over every run.
    """
    by_family: Dict[str, List[RunStats]] = {}
    for run in runs:
        by_family.setdefault(run.family, []).append(run)

    rows = []
    for family in sorted(by_family, key=lambda f: (FAMILIES.index(f) if f in FAMILIES else len(FAMILIES), f)):
        group = by_family[family]
        successful = [r for r in group if r.success]
        row: Dict[str, object] = {
            'family': family,
            'problems': len(group),
            'success_rate': _percent(len(successful), len(group)),
            'completion_rate': _percent(sum(1 for r in group if r.complete), len(group)),
        }
        columns = {
            'num_h': [r.num_hypotheses for r in successful],
            'h_size': [s for r in group for s in r.hypothesis_sizes],
            'axiom_size': [s for r in group for s in r.axiom_sizes],
            'time': [r.time_s for r in group],
        }
        for prefix, values in columns.items():
            for stat, value in describe(values).items():
                row[f"{prefix}_{stat}"] = value
        rows.append(row)
    return rows


def write_summary(rows: List[Dict[str, object]], csv_path: Path, json_path: Path) -> None:
    with open(csv_path, 'w', newline='') as f:
        writer = csv.DictWriter(f, fieldnames=SUMMARY_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    with open(json_path, 'w') as f:
        json.dump(rows, f, indent=2)
    logger.info(f"Summary written to {csv_path} and {json_path}")
