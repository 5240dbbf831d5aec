"""EL subsumption by completion-rule saturation."""

from __future__ import annotations

import logging
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Mapping, Set, Tuple

from .concepts import (
    Atomic,
    Concept,
    ConceptInclusion,
    Conjunction,
    Existential,
    TBox,
    Top,
    atoms,
)
from .normal_form import is_normal, normalize
from ..utils.config import FRESH_PREFIX
from ..utils.exceptions import NotNormalized

logger = logging.getLogger(__name__)

# Internal element standing for Top; not a legal concept name.
TOP_KEY = "⊤"


def _key(c: Concept) -> str:
    return TOP_KEY if isinstance(c, Top) else c.name


@dataclass(frozen=True)
class SubsumptionTable:
    """Subsumers of every concept name of a normalized TBox."""
    entries: Mapping[str, FrozenSet[str]]

    def subsumers(self, name: str) -> FrozenSet[str]:
        return self.entries.get(name, frozenset((name,)))

    def subsumes(self, sub: str, sup: str) -> bool:
        """True iff sub ⊑ sup is entailed."""
        return sup in self.subsumers(sub)

    def derived_pairs(self) -> Iterable[Tuple[str, str]]:
        """Every entailed A ⊑ B with A ≠ B, in a stable order."""
        for name in sorted(self.entries):
            for sup in sorted(self.entries[name]):
                if sup != name:
                    yield name, sup


def classify(t: TBox) -> SubsumptionTable:
    """
    Compute all atomic subsumptions of a normalized TBox.

    Args:
        t: TBox in normal form (Top allowed)

    Returns:
        Table mapping each concept name to the names subsuming it

    Raises:
        NotNormalized: If an axiom is outside the normal-form shapes
    """
    for ci in t:
        if not is_normal(ci):
            raise NotNormalized(f"axiom '{ci}' is not in normal form")
    return _classify(t)


@lru_cache(maxsize=512)
def _classify(t: TBox) -> SubsumptionTable:
    told: Dict[str, list] = defaultdict(list)
    pair: Dict[str, list] = defaultdict(list)
    exists_rhs: Dict[str, list] = defaultdict(list)
    exists_lhs: Dict[Tuple[str, str], list] = defaultdict(list)
    for ci in t:
        lhs, rhs = ci.lhs, ci.rhs
        if isinstance(rhs, Existential):
            exists_rhs[_key(lhs)].append((rhs.role, _key(rhs.filler)))
        elif isinstance(lhs, Existential):
            exists_lhs[(lhs.role, _key(lhs.filler))].append(_key(rhs))
        elif isinstance(lhs, Conjunction):
            a, b = (c.name for c in lhs.conjuncts)
            pair[a].append((b, _key(rhs)))
            pair[b].append((a, _key(rhs)))
        else:
            told[_key(lhs)].append(_key(rhs))

    subsumers: Dict[str, Set[str]] = {}
    # element Y -> {(X, r)} with X --r--> Y
    predecessors: Dict[str, Set[Tuple[str, str]]] = defaultdict(set)
    queue = deque()

    def add(x: str, a: str) -> None:
        if a not in subsumers[x]:
            subsumers[x].add(a)
            queue.append((x, a))

    def element(x: str) -> None:
        if x not in subsumers:
            subsumers[x] = set()
            add(x, x)
            add(x, TOP_KEY)

    def link(x: str, role: str, y: str) -> None:
        element(y)
        if (x, role) in predecessors[y]:
            return
        predecessors[y].add((x, role))
        for a in list(subsumers[y]):
            for b in exists_lhs.get((role, a), ()):
                add(x, b)

    for name in sorted(t.concept_names):
        element(name)
    element(TOP_KEY)

    while queue:
        x, a = queue.popleft()
        for b in told.get(a, ()):
            add(x, b)
        for other, b in pair.get(a, ()):
            if other in subsumers[x]:
                add(x, b)
        for role, y in exists_rhs.get(a, ()):
            link(x, role, y)
        for z, role in list(predecessors[x]):
            for b in exists_lhs.get((role, a), ()):
                add(z, b)

    entries = {
        x: frozenset(s - {TOP_KEY})
        for x, s in subsumers.items() if x != TOP_KEY
    }
    logger.debug(f"Classified {len(entries)} names over {len(t)} axioms")
    return SubsumptionTable(entries)


@lru_cache(maxsize=256)
def _normalized(t: TBox) -> TBox:
    return normalize(t)[0]


_QUERY_LHS = f"{FRESH_PREFIX}query_lhs"
_QUERY_RHS = f"{FRESH_PREFIX}query_rhs"


def entails_ci(t: TBox, ci: ConceptInclusion) -> bool:
    """
    Decide T |= C ⊑ D.

    Complex sides are replaced by fresh names P ⊑ C and D ⊑ Q so the
    question becomes an atomic subsumption of a normalized TBox.
    """
    if isinstance(ci.rhs, Top):
        return True
    if isinstance(ci.lhs, Atomic) and isinstance(ci.rhs, Atomic):
        if ci.lhs == ci.rhs:
            return True
        names = t.concept_names
        if ci.lhs.name in names and ci.rhs.name in names:
            return classify(_normalized(t)).subsumes(ci.lhs.name, ci.rhs.name)
    query = TBox((
        ConceptInclusion(Atomic(_QUERY_LHS), ci.lhs),
        ConceptInclusion(ci.rhs, Atomic(_QUERY_RHS)),
    ))
    extra, _ = normalize(query, prefix=f"{FRESH_PREFIX}q")
    table = classify(_normalized(t).union(extra))
    return table.subsumes(_QUERY_LHS, _QUERY_RHS)


def entails_flat(t: TBox, lhs: Iterable[str], rhs: Iterable[str]) -> bool:
    """T |= ⊓lhs ⊑ ⊓rhs for two sets of names."""
    return entails_ci(t, ConceptInclusion(atoms(*lhs), atoms(*rhs)))


def entails_tbox(t: TBox, other: Iterable[ConceptInclusion]) -> bool:
    """True iff T entails every axiom of `other`."""
    return all(entails_ci(t, ci) for ci in other)
