"""Service module that puts abduction problems into the engine's shape."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from ..el.concepts import (
    Atomic,
    Concept,
    ConceptInclusion,
    Conjunction,
    Existential,
    TBox,
    Top,
    concept_names,
    contains_top,
    existential_count,
    role_names,
)
from ..el.normal_form import normalize
from ..el.reasoner import entails_ci
from ..utils.config import FRESH_PREFIX, TOP_NAME
from ..utils.exceptions import AlreadyEntailed, UnknownNameError

logger = logging.getLogger(__name__)


def is_reserved(name: str) -> bool:
    return name.startswith(FRESH_PREFIX) or name == TOP_NAME


@dataclass(frozen=True)
class AbductionProblem:
    """
    A TBox abduction problem ⟨T, Σ, C1 ⊑ C2⟩.

    Abducibles are intersected with the input signature on construction.

    Raises:
        AlreadyEntailed: If the background already entails the observation
        UnknownNameError: If an abducible uses a reserved name
    """
    background: TBox
    abducibles: FrozenSet[str]
    observation: ConceptInclusion

    def __post_init__(self):
        reserved = sorted(n for n in self.abducibles if is_reserved(n))
        if reserved:
            raise UnknownNameError(f"reserved names cannot be abducible: {', '.join(reserved)}")
        object.__setattr__(self, 'abducibles', frozenset(self.abducibles) & self.signature)
        if entails_ci(self.background, self.observation):
            raise AlreadyEntailed(f"the background already entails '{self.observation}'")

    @property
    def signature(self) -> FrozenSet[str]:
        """Concept names of the original input (background and observation)."""
        return self.background.concept_names | self.observation.concept_names

    @classmethod
    def with_full_signature(cls, background: TBox, observation: ConceptInclusion) -> "AbductionProblem":
        names = background.concept_names | observation.concept_names
        return cls(background, frozenset(names), observation)


@dataclass(frozen=True)
class PreparedProblem:
    tbox: TBox
    lhs_name: str
    rhs_name: str
    abducibles: FrozenSet[str]
    name_map: Mapping[str, Concept] = field(default_factory=dict, hash=False, compare=False)
    source: Optional[AbductionProblem] = field(default=None, hash=False, compare=False)
    module_size: int = 0
    # existential restrictions of the background as written, equivalences once
    existential_occurrences: int = 0
    # concept names of the background and the observation
    signature_size: int = 0


def eliminate_top(t: TBox) -> TBox:
    """
    Replace Top by the reserved name and add the axioms that make it behave as Top.

    Args:
        t: TBox in normal form

    Returns:
        The TBox unchanged when Top does not occur, otherwise the rewritten TBox
    """
    if not any(contains_top(ci.lhs) or contains_top(ci.rhs) for ci in t):
        return t
    top = Atomic(TOP_NAME)

    def replace(c: Concept) -> Concept:
        if isinstance(c, Top):
            return top
        if isinstance(c, Existential):
            return Existential(c.role, replace(c.filler))
        if isinstance(c, Conjunction):
            return Conjunction(tuple(replace(x) for x in c.conjuncts))
        return c

    axioms: List[ConceptInclusion] = [ConceptInclusion(replace(ci.lhs), replace(ci.rhs)) for ci in t]
    for role in sorted(t.role_names):
        axioms.append(ConceptInclusion(Existential(role, top), top))
    for name in sorted(t.concept_names - {TOP_NAME}):
        axioms.append(ConceptInclusion(Atomic(name), top))
    logger.debug(f"Top eliminated with {len(axioms) - len(t)} extra axioms")
    return TBox(tuple(axioms))


def wrap_observation(
    obs: ConceptInclusion, prefix: str = FRESH_PREFIX
) -> Tuple[str, str, Tuple[ConceptInclusion, ...]]:
    """
    Give each complex side of the observation a fresh name.

    Args:
        obs: The observation C1 ⊑ C2
        prefix: Prefix for the fresh names

    Returns:
        The atomic left and right side names and the bridging axioms
    """
    extra = []
    if isinstance(obs.lhs, Atomic):
        lhs = obs.lhs.name
    else:
        lhs = f"{prefix}F1"
        extra.append(ConceptInclusion(Atomic(lhs), obs.lhs))
    if isinstance(obs.rhs, Atomic):
        rhs = obs.rhs.name
    else:
        rhs = f"{prefix}F2"
        extra.append(ConceptInclusion(obs.rhs, Atomic(rhs)))
    return lhs, rhs, tuple(extra)


def _bot_local(c: Concept, sig: FrozenSet[str]) -> bool:
    if isinstance(c, Top):
        return False
    if isinstance(c, Atomic):
        return c.name not in sig
    if isinstance(c, Existential):
        return c.role not in sig or _bot_local(c.filler, sig)
    return any(_bot_local(x, sig) for x in c.conjuncts)


def _top_local(c: Concept, sig: FrozenSet[str]) -> bool:
    if isinstance(c, Top):
        return True
    if isinstance(c, Atomic):
        return c.name not in sig
    if isinstance(c, Existential):
        return c.role not in sig and _top_local(c.filler, sig)
    return all(_top_local(x, sig) for x in c.conjuncts)


def _extract_module(t: TBox, sig: Iterable[str], is_local) -> TBox:
    signature = frozenset(sig)
    module: Dict[ConceptInclusion, None] = {}
    changed = True
    while changed:
        changed = False
        for ci in t:
            if ci in module or is_local(ci, signature):
                continue
            module[ci] = None
            signature = signature | ci.concept_names | ci.role_names
            changed = True
    return TBox(tuple(ci for ci in t if ci in module))


def extract_bot_module(t: TBox, sig: Iterable[str]) -> TBox:
    """Syntactic ⊥-module of `t` for `sig` (concept and role names together)."""
    return _extract_module(t, sig, lambda ci, s: _bot_local(ci.lhs, s))


def extract_top_module(t: TBox, sig: Iterable[str]) -> TBox:
    """Syntactic ⊤-module of `t` for `sig` (concept and role names together)."""
    return _extract_module(t, sig, lambda ci, s: _top_local(ci.rhs, s))


def count_existentials(t: TBox) -> int:
    """
    Existential restrictions occurring in `t` before normalization.

    The two inclusions of an equivalence are counted once.
    """
    seen = set()
    total = 0
    for ci in t:
        if ConceptInclusion(ci.rhs, ci.lhs) in seen:
            continue
        seen.add(ci)
        total += existential_count(ci.lhs) + existential_count(ci.rhs)
    return total


def concept_signature(c: Concept) -> FrozenSet[str]:
    return concept_names(c) | role_names(c)


def prepare(p: AbductionProblem, use_modules: bool = True) -> PreparedProblem:
    """
    Normalize an abduction problem for translation.

    Args:
        p: The abduction problem
        use_modules: Replace the background by the ⊥-module of C1 joined with the ⊤-module of C2

    Returns:
        The prepared problem
    """
    background = p.background
    if use_modules:
        bot = extract_bot_module(background, concept_signature(p.observation.lhs))
        top = extract_top_module(background, concept_signature(p.observation.rhs))
        keep = bot.axiom_set | top.axiom_set
        background = TBox(tuple(ci for ci in p.background if ci in keep))
        logger.info(f"Module extraction kept {len(background)} of {len(p.background)} axioms")

    lhs, rhs, bridges = wrap_observation(p.observation)
    normalized, name_map = normalize(background.union(bridges))
    name_map = dict(name_map)
    if lhs != getattr(p.observation.lhs, "name", None):
        name_map[lhs] = p.observation.lhs
    if rhs != getattr(p.observation.rhs, "name", None):
        name_map[rhs] = p.observation.rhs
    tbox = eliminate_top(normalized)
    if tbox is not normalized:
        name_map[TOP_NAME] = Top()

    abducibles = frozenset(n for n in p.abducibles if not is_reserved(n))
    occurrences = count_existentials(background)
    signature = background.concept_names | p.observation.concept_names
    return PreparedProblem(
        tbox=tbox,
        lhs_name=lhs,
        rhs_name=rhs,
        abducibles=abducibles,
        name_map=name_map,
        source=p,
        module_size=len(background),
        existential_occurrences=occurrences,
        signature_size=len(signature),
    )
