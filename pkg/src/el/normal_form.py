"""Normal form for EL TBoxes.

Every axiom of a normalized TBox has one of the shapes
A ⊑ B, A1 ⊓ A2 ⊑ B, ∃r.A ⊑ B and A ⊑ ∃r.B, where the A's and B's are
concept names or Top.
"""

from __future__ import annotations

import logging
from typing import Dict, List, Tuple

from .concepts import (
    Atomic,
    Concept,
    ConceptInclusion,
    Conjunction,
    Existential,
    TBox,
    Top,
    canonical,
    conjunction,
)
from ..utils.config import FRESH_PREFIX

logger = logging.getLogger(__name__)


def _is_basic(c: Concept) -> bool:
    return isinstance(c, (Atomic, Top))


def is_normal(ci: ConceptInclusion) -> bool:
    lhs, rhs = ci.lhs, ci.rhs
    if _is_basic(lhs):
        return _is_basic(rhs) or (isinstance(rhs, Existential) and _is_basic(rhs.filler))
    if not _is_basic(rhs):
        return False
    if isinstance(lhs, Existential):
        return _is_basic(lhs.filler)
    return isinstance(lhs, Conjunction) and len(lhs.conjuncts) == 2 \
        and all(isinstance(c, Atomic) for c in lhs.conjuncts)


class _Normalizer:
    """Structural normalization with one fresh name per distinct sub-concept and polarity."""

    def __init__(self, prefix: str, taken: frozenset):
        self.prefix = prefix
        self.taken = taken
        self.counter = 0
        self.output: List[ConceptInclusion] = []
        self.name_map: Dict[str, Concept] = {}
        self.below: Dict[Concept, Atomic] = {}   # C ⊑ X
        self.above: Dict[Concept, Atomic] = {}   # X ⊑ C

    def fresh(self, abbreviates: Concept) -> Atomic:
        while True:
            self.counter += 1
            name = f"{self.prefix}{self.counter}"
            if name not in self.taken:
                break
        self.name_map[name] = abbreviates
        return Atomic(name)

    def emit(self, lhs: Concept, rhs: Concept) -> None:
        ci = ConceptInclusion(lhs, rhs)
        if ci not in self.output:
            self.output.append(ci)

    def name_subsumer(self, c: Concept) -> Concept:
        """A basic concept X with c ⊑ X in the output."""
        if _is_basic(c):
            return c
        if c not in self.below:
            self.below[c] = self.fresh(c)
            self.add(c, self.below[c])
        return self.below[c]

    def name_subsumee(self, c: Concept) -> Concept:
        """A basic concept X with X ⊑ c in the output."""
        if _is_basic(c):
            return c
        if c not in self.above:
            self.above[c] = self.fresh(c)
            self.add(self.above[c], c)
        return self.above[c]

    def add(self, lhs: Concept, rhs: Concept) -> None:
        if isinstance(rhs, Conjunction):
            lhs = self.name_subsumer(lhs)
            for part in rhs.conjuncts:
                self.add(lhs, part)
            return
        if isinstance(rhs, Existential):
            lhs = self.name_subsumer(lhs)
            self.emit(lhs, Existential(rhs.role, self.name_subsumee(rhs.filler)))
            return
        if _is_basic(lhs):
            self.emit(lhs, rhs)
        elif isinstance(lhs, Existential):
            self.emit(Existential(lhs.role, self.name_subsumer(lhs.filler)), rhs)
        else:
            names = [self.name_subsumer(part) for part in lhs.conjuncts]
            names = [n for n in dict.fromkeys(names) if not isinstance(n, Top)]
            if not names:
                self.emit(Top(), rhs)
            elif len(names) == 1:
                self.emit(names[0], rhs)
            elif len(names) == 2:
                self.emit(conjunction(names), rhs)
            else:
                head = self.name_subsumer(conjunction(names[:2]))
                self.add(conjunction([head] + names[2:]), rhs)


def normalize(t: TBox, prefix: str = FRESH_PREFIX) -> Tuple[TBox, Dict[str, Concept]]:
    """
    Normalize a TBox into a conservative extension in normal form.

    Args:
        t: The TBox to normalize
        prefix: Prefix for the fresh names

    Returns:
        The normalized TBox and a map from each fresh name to the concept it abbreviates
    """
    normalizer = _Normalizer(prefix, t.concept_names)
    for ci in t:
        ci = ci.canonical()
        if is_normal(ci):
            normalizer.emit(ci.lhs, ci.rhs)
        else:
            normalizer.add(ci.lhs, ci.rhs)
    if normalizer.name_map:
        logger.debug(f"Normalization introduced {len(normalizer.name_map)} fresh names")
    return TBox(tuple(normalizer.output)), normalizer.name_map
