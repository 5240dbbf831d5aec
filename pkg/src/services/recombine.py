"""Service module assembling hypotheses from prime implicates."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from ..el.concepts import ConceptInclusion, TBox, atoms, flat_names
from ..el.reasoner import entails_ci
from ..fol.clauses import Term
from ..utils.helpers import Deadline
from .engine import NegativeClause, PrimeImplicateSets, format_negative

logger = logging.getLogger(__name__)


def flat_axiom(lhs: Iterable[str], rhs: Iterable[str]) -> ConceptInclusion:
    """The CI ⊓lhs ⊑ ⊓rhs; an empty lhs stands for Top."""
    return ConceptInclusion(atoms(*lhs), atoms(*rhs))


@dataclass(frozen=True)
class Provenance:
    negative: NegativeClause
    # support term -> (lhs names, rhs names)
    support: Mapping[Term, Tuple[FrozenSet[str], FrozenSet[str]]] = field(default_factory=dict)

    def describe(self) -> Dict[str, object]:
        return {
            'negative': format_negative(self.negative),
            'support': {
                str(t): {'lhs': sorted(lhs), 'rhs': sorted(rhs)}
                for t, (lhs, rhs) in sorted(self.support.items(), key=lambda kv: kv[0].key())
            },
        }


@dataclass(frozen=True)
class Hypothesis:
    """A set of flat CIs over the abducibles, with the implicates it came from."""
    axioms: FrozenSet[ConceptInclusion]
    provenance: Optional[Provenance] = field(default=None, compare=False, hash=False)
    constructible: bool = field(default=True, compare=False, hash=False)

    @classmethod
    def of(cls, *axioms: ConceptInclusion, constructible: bool = True) -> "Hypothesis":
        return cls(frozenset(a.canonical() for a in axioms), constructible=constructible)

    def sorted_axioms(self) -> List[ConceptInclusion]:
        return sorted(self.axioms, key=str)

    def sort_key(self) -> Tuple[int, Tuple[str, ...]]:
        return (len(self.axioms), tuple(str(a) for a in self.sorted_axioms()))

    @property
    def concept_names(self) -> FrozenSet[str]:
        return frozenset(n for a in self.axioms for n in a.concept_names)

    def as_tbox(self) -> TBox:
        return TBox(tuple(self.sorted_axioms()))

    def __len__(self) -> int:
        return len(self.axioms)

    def __str__(self) -> str:
        return "{" + ", ".join(str(a) for a in self.sorted_axioms()) + "}"


def _support(negative: NegativeClause) -> Dict[Term, FrozenSet[str]]:
    by_term: Dict[Term, set] = {}
    for name, term in negative:
        by_term.setdefault(term, set()).add(name)
    return {t: frozenset(names) for t, names in by_term.items()}


def build_hypotheses(
    pi: PrimeImplicateSets,
    abducibles: Iterable[str],
    tbox: Optional[TBox] = None,
    deadline: Optional[Deadline] = None,
) -> List[Hypothesis]:
    """
    Build one hypothesis per negative prime implicate whose terms all have positive support.

    Args:
        pi: Prime implicates from saturation
        abducibles: Names allowed in hypotheses
        tbox: Background TBox; when given, hypotheses with an entailed axiom are dropped
        deadline: Hard limit checked once per negative implicate

    Returns:
        The distinct hypotheses in a deterministic order
    """
    abducibles = frozenset(abducibles)
    found: Dict[Hypothesis, None] = {}
    for negative in sorted(pi.negative, key=format_negative):
        if deadline is not None:
            deadline.check_hard()
        rhs_by_term = _support(negative)
        lhs_by_term = {t: pi.positive.get(t, frozenset()) & abducibles for t in rhs_by_term}
        if not all(lhs_by_term.values()):
            continue
        if not all(rhs <= abducibles for rhs in rhs_by_term.values()):
            continue
        axioms = []
        support = {}
        for t, rhs in rhs_by_term.items():
            lhs = lhs_by_term[t]
            support[t] = (lhs, rhs)
            missing = rhs - lhs
            if missing:
                axioms.append(flat_axiom(lhs, missing))
        if not axioms:
            continue
        h = Hypothesis(frozenset(axioms), Provenance(negative, support), pi.complete)
        if tbox is not None:
            h = filter_axiom_entailed(h, tbox)
            if h is None:
                continue
        found.setdefault(h, None)

    hypotheses = sorted(found, key=Hypothesis.sort_key)
    if not pi.complete and hypotheses:
        logger.warning(
            f"{len(hypotheses)} hypotheses come from incomplete saturation and are marked non-constructible"
        )
    logger.info(f"Recombination built {len(hypotheses)} hypotheses from {len(pi.negative)} negative prime implicates")
    return hypotheses


def filter_axiom_entailed(h: Hypothesis, tbox: TBox) -> Optional[Hypothesis]:
    """
    Reject a hypothesis with an axiom the background already entails.

    Axioms are canonicalized first, so names shared by both sides are
    dropped from the right-hand side.
    """
    axioms = []
    for a in h.axioms:
        lhs, rhs = flat_names(a.lhs), flat_names(a.rhs)
        rhs = rhs - lhs
        if not rhs:
            continue
        a = flat_axiom(lhs, rhs)
        if entails_ci(tbox, a):
            logger.debug(f"Dropping hypothesis {h}: background entails {a}")
            return None
        axioms.append(a)
    if not axioms:
        return None
    return Hypothesis(frozenset(axioms), h.provenance, h.constructible)


def subset_minimal_filter(hs: Iterable[Hypothesis]) -> List[Hypothesis]:
    """Keep the hypotheses no other hypothesis is a proper subset of."""
    hs = list(dict.fromkeys(hs))
    canonical = {h: frozenset(a.canonical() for a in h.axioms) for h in hs}
    kept = [
        h for h in hs
        if not any(canonical[o] < canonical[h] for o in hs)
    ]
    return sorted(kept, key=Hypothesis.sort_key)


def verify_solution(tbox: TBox, h: Hypothesis, obs: ConceptInclusion) -> bool:
    """True iff T ∪ H entails the observation and T entails no axiom of H."""
    if any(entails_ci(tbox, a) for a in h.axioms):
        return False
    return entails_ci(tbox.union(h.sorted_axioms()), obs)
