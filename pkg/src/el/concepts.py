"""EL concepts, concept inclusions and TBoxes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, Tuple, Union


@dataclass(frozen=True)
class Top:
    def __str__(self) -> str:
        return "Top"


@dataclass(frozen=True)
class Atomic:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Conjunction:
    """
    Canonical conjunction of at least two conjuncts.

    Build it with `conjunction` or `canonical`; the constructor itself
    does not flatten or sort.
    """
    conjuncts: Tuple["Concept", ...]

    def __str__(self) -> str:
        return " and ".join(str(c) for c in self.conjuncts)


@dataclass(frozen=True)
class Existential:
    role: str
    filler: "Concept"

    def __str__(self) -> str:
        filler = str(self.filler)
        if isinstance(self.filler, Conjunction):
            filler = f"({filler})"
        return f"{self.role} some {filler}"


Concept = Union[Top, Atomic, Conjunction, Existential]

TOP = Top()


def sort_key(c: Concept) -> tuple:
    """Structural encoding that fixes the total order on concepts."""
    if isinstance(c, Top):
        return (0,)
    if isinstance(c, Atomic):
        return (1, c.name)
    if isinstance(c, Existential):
        return (2, c.role, sort_key(c.filler))
    return (3, tuple(sort_key(x) for x in c.conjuncts))


def conjuncts(c: Concept) -> Tuple[Concept, ...]:
    """Top-level conjuncts of `c`; Top has none."""
    if isinstance(c, Top):
        return ()
    if isinstance(c, Conjunction):
        return c.conjuncts
    return (c,)


def conjunction(parts: Iterable[Concept]) -> Concept:
    """
    Canonical conjunction of `parts`.

    Nested conjunctions are flattened, duplicates merged and the conjuncts
    sorted by `sort_key`.

    Args:
        parts: Concepts to conjoin, in any order

    Returns:
        Top when `parts` is empty, the single conjunct when only one remains,
        otherwise a `Conjunction`
    """
    flat = {}
    for part in parts:
        part = canonical(part)
        for item in conjuncts(part):
            flat[sort_key(item)] = item
    if not flat:
        return TOP
    if len(flat) == 1:
        return next(iter(flat.values()))
    return Conjunction(tuple(flat[k] for k in sorted(flat)))


def canonical(c: Concept) -> Concept:
    """Equal concepts up to conjunct order and duplicates map to the same value."""
    if isinstance(c, (Top, Atomic)):
        return c
    if isinstance(c, Existential):
        return Existential(c.role, canonical(c.filler))
    return conjunction(c.conjuncts)


def atoms(*names: str) -> Concept:
    """Conjunction of the named atomic concepts."""
    return conjunction(Atomic(n) for n in names)


def concept_names(c: Concept) -> FrozenSet[str]:
    """
    Atomic concept names occurring in `c`.

    Args:
        c: Any EL concept

    Returns:
        The names at every depth; Top contributes none
    """
    if isinstance(c, Top):
        return frozenset()
    if isinstance(c, Atomic):
        return frozenset((c.name,))
    if isinstance(c, Existential):
        return concept_names(c.filler)
    return frozenset().union(*(concept_names(x) for x in c.conjuncts))


def role_names(c: Concept) -> FrozenSet[str]:
    """Role names of the existential restrictions in `c`."""
    if isinstance(c, (Top, Atomic)):
        return frozenset()
    if isinstance(c, Existential):
        return frozenset((c.role,)) | role_names(c.filler)
    return frozenset().union(*(role_names(x) for x in c.conjuncts))


def contains_top(c: Concept) -> bool:
    """
    Whether Top occurs in `c`.

    Args:
        c: Any EL concept

    Returns:
        True if `c` is Top or has Top as a conjunct or filler at some depth
    """
    if isinstance(c, Top):
        return True
    if isinstance(c, Atomic):
        return False
    if isinstance(c, Existential):
        return contains_top(c.filler)
    return any(contains_top(x) for x in c.conjuncts)


def existential_count(c: Concept) -> int:
    """Number of existential restrictions occurring in `c`."""
    if isinstance(c, (Top, Atomic)):
        return 0
    if isinstance(c, Existential):
        return 1 + existential_count(c.filler)
    return sum(existential_count(x) for x in c.conjuncts)


def role_depth(c: Concept) -> int:
    """Longest chain of nested existential restrictions in `c`."""
    if isinstance(c, (Top, Atomic)):
        return 0
    if isinstance(c, Existential):
        return 1 + role_depth(c.filler)
    return max(role_depth(x) for x in c.conjuncts)


def flat_names(c: Concept) -> FrozenSet[str]:
    """
    Names of a flat concept (a conjunction of atomic concepts).

    Raises:
        ValueError: If `c` contains an existential restriction
    """
    if existential_count(c):
        raise ValueError(f"concept '{c}' is not flat")
    return concept_names(c)


@dataclass(frozen=True)
class ConceptInclusion:
    lhs: Concept
    rhs: Concept

    def __str__(self) -> str:
        return f"{self.lhs} SubClassOf {self.rhs}"

    @property
    def concept_names(self) -> FrozenSet[str]:
        return concept_names(self.lhs) | concept_names(self.rhs)

    @property
    def role_names(self) -> FrozenSet[str]:
        return role_names(self.lhs) | role_names(self.rhs)

    def canonical(self) -> "ConceptInclusion":
        return ConceptInclusion(canonical(self.lhs), canonical(self.rhs))

    def size(self) -> int:
        """Number of atomic concept occurrences on both sides."""
        return _atom_occurrences(self.lhs) + _atom_occurrences(self.rhs)


def _atom_occurrences(c: Concept) -> int:
    if isinstance(c, Top):
        return 0
    if isinstance(c, Atomic):
        return 1
    if isinstance(c, Existential):
        return _atom_occurrences(c.filler)
    return sum(_atom_occurrences(x) for x in c.conjuncts)


def equivalence(c: Concept, d: Concept) -> Tuple[ConceptInclusion, ConceptInclusion]:
    """The two inclusions an equivalence C ≡ D stands for."""
    return ConceptInclusion(c, d), ConceptInclusion(d, c)


@dataclass(frozen=True)
class TBox:
    """
    Finite set of concept inclusions.

    Axioms keep their first-seen order (skolem naming and module
    extraction iterate in that order); duplicates are dropped.
    """
    axioms: Tuple[ConceptInclusion, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'axioms', tuple(dict.fromkeys(self.axioms)))

    def __iter__(self) -> Iterator[ConceptInclusion]:
        return iter(self.axioms)

    def __len__(self) -> int:
        return len(self.axioms)

    def __contains__(self, axiom: object) -> bool:
        return axiom in self.axiom_set

    @property
    def axiom_set(self) -> FrozenSet[ConceptInclusion]:
        return frozenset(self.axioms)

    @property
    def concept_names(self) -> FrozenSet[str]:
        return frozenset().union(*(ax.concept_names for ax in self.axioms))

    @property
    def role_names(self) -> FrozenSet[str]:
        return frozenset().union(*(ax.role_names for ax in self.axioms))

    @property
    def signature(self) -> Tuple[FrozenSet[str], FrozenSet[str]]:
        return self.concept_names, self.role_names

    def union(self, other: Iterable[ConceptInclusion]) -> "TBox":
        return TBox(self.axioms + tuple(other))

    def without(self, axiom: ConceptInclusion) -> "TBox":
        return TBox(tuple(ax for ax in self.axioms if ax != axiom))

    def __str__(self) -> str:
        return "\n".join(str(ax) for ax in self.axioms)
