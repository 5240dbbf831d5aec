"""First-order Horn clauses over unary skolem terms.

Every term is a chain of unary skolem functions applied either to the
constant sk0 or to a variable, so a term is stored as the tuple of its
function symbols (outermost first) plus an optional variable index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, NamedTuple, Optional, Tuple

from ..el.concepts import ConceptInclusion

VAR_NAMES = "xyzuvw"

# shape tags
I1, I2, I3, I4, I5, I6, I7 = "I1", "I2", "I3", "I4", "I5", "I6", "I7"
DERIVED = "derived"


class Term(NamedTuple):
    fns: Tuple[str, ...] = ()
    var: Optional[int] = None

    @property
    def depth(self) -> int:
        return len(self.fns)

    @property
    def is_ground(self) -> bool:
        return self.var is None

    def key(self) -> tuple:
        return (len(self.fns), self.fns, -1 if self.var is None else self.var)

    def __str__(self) -> str:
        text = "sk0" if self.var is None else VAR_NAMES[self.var % len(VAR_NAMES)]
        for fn in reversed(self.fns):
            text = f"{fn}({text})"
        return text


SK0 = Term()


def app(fn: str, t: Term) -> Term:
    return Term((fn,) + t.fns, t.var)


def var(index: int = 0) -> Term:
    return Term((), index)


def ground(*fns: str) -> Term:
    """Ground term fns[0](fns[1](...(sk0)))."""
    return Term(tuple(fns), None)


class Literal(NamedTuple):
    positive: bool
    pred: str
    dup: bool
    args: Tuple[Term, ...]

    @property
    def is_role(self) -> bool:
        return len(self.args) == 2

    @property
    def is_ground(self) -> bool:
        return all(a.var is None for a in self.args)

    @property
    def depth(self) -> int:
        return max(a.depth for a in self.args)

    def negate(self) -> "Literal":
        return Literal(not self.positive, self.pred, self.dup, self.args)

    def complementary(self, other: "Literal") -> bool:
        return (self.positive != other.positive and self.pred == other.pred
                and self.dup == other.dup and len(self.args) == len(other.args))

    def key(self) -> tuple:
        return (self.pred, self.dup, self.positive, tuple(a.key() for a in self.args))

    def __str__(self) -> str:
        sign = "" if self.positive else "~"
        bar = "'" if self.dup else ""
        return f"{sign}{self.pred}{bar}({','.join(str(a) for a in self.args)})"


def concept_lit(positive: bool, name: str, term: Term, dup: bool = False) -> Literal:
    return Literal(positive, name, dup, (term,))


def role_lit(positive: bool, role: str, left: Term, right: Term) -> Literal:
    return Literal(positive, role, False, (left, right))


@dataclass(frozen=True)
class Clause:
    literals: FrozenSet[Literal]
    shape: str = field(default=DERIVED, compare=False)

    @cached_property
    def sorted_literals(self) -> Tuple[Literal, ...]:
        return tuple(sorted(self.literals, key=Literal.key))

    @cached_property
    def variables(self) -> FrozenSet[int]:
        return frozenset(a.var for lit in self.literals for a in lit.args if a.var is not None)

    @property
    def is_ground(self) -> bool:
        return not self.variables

    @cached_property
    def positives(self) -> Tuple[Literal, ...]:
        return tuple(l for l in self.sorted_literals if l.positive)

    @cached_property
    def negatives(self) -> Tuple[Literal, ...]:
        return tuple(l for l in self.sorted_literals if not l.positive)

    @cached_property
    def depth(self) -> int:
        return max((l.depth for l in self.literals), default=0)

    @property
    def has_ground_term(self) -> bool:
        return any(a.var is None for lit in self.literals for a in lit.args)

    @property
    def is_unit(self) -> bool:
        return len(self.literals) == 1

    @property
    def is_horn(self) -> bool:
        return len(self.positives) <= 1

    def key(self) -> tuple:
        return tuple(l.key() for l in self.sorted_literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __str__(self) -> str:
        if not self.literals:
            return "[]"
        return " | ".join(str(l) for l in self.sorted_literals)


def clause(*literals: Literal, shape: str = DERIVED) -> Clause:
    return Clause(frozenset(literals), shape)


# --- substitutions -----------------------------------------------------------

Subst = Dict[int, Term]


def walk(t: Term, s: Mapping[int, Term]) -> Term:
    while t.var is not None and t.var in s:
        bound = s[t.var]
        t = Term(t.fns + bound.fns, bound.var)
    return t


def unify_terms(a: Term, b: Term, s: Subst) -> Optional[Subst]:
    a, b = walk(a, s), walk(b, s)
    if a == b:
        return s
    k = min(len(a.fns), len(b.fns))
    if a.fns[:k] != b.fns[:k]:
        return None
    rest_a, rest_b = Term(a.fns[k:], a.var), Term(b.fns[k:], b.var)
    if not rest_a.fns and rest_a.var is not None:
        if rest_b.var == rest_a.var:
            return None
        return {**s, rest_a.var: rest_b}
    if not rest_b.fns and rest_b.var is not None:
        if rest_a.var == rest_b.var:
            return None
        return {**s, rest_b.var: rest_a}
    return None


def unify_literals(a: Literal, b: Literal, s: Optional[Subst] = None) -> Optional[Subst]:
    """Most general unifier of the atoms of `a` and `b` (signs are ignored)."""
    if a.pred != b.pred or a.dup != b.dup or len(a.args) != len(b.args):
        return None
    s = {} if s is None else s
    for x, y in zip(a.args, b.args):
        s = unify_terms(x, y, s)
        if s is None:
            return None
    return s


def substitute(lit: Literal, s: Mapping[int, Term]) -> Literal:
    if not s:
        return lit
    return Literal(lit.positive, lit.pred, lit.dup, tuple(walk(a, s) for a in lit.args))


def shift_literal(lit: Literal, offset: int) -> Literal:
    if offset == 0 or lit.is_ground:
        return lit
    return Literal(lit.positive, lit.pred, lit.dup,
                   tuple(Term(a.fns, None if a.var is None else a.var + offset) for a in lit.args))


def shift(c: Clause, offset: int) -> Clause:
    """Rename the variables of `c` apart by adding `offset`."""
    if not c.variables or offset == 0:
        return c
    return Clause(frozenset(shift_literal(l, offset) for l in c.literals), c.shape)


def normalize_variables(literals: Iterable[Literal], shape: str = DERIVED) -> Clause:
    """Renumber variables 0, 1, ... in order of first occurrence."""
    literals = frozenset(literals)
    ordered = sorted(literals, key=lambda l: (l.pred, l.dup, l.positive, tuple(a.fns for a in l.args)))
    mapping: Dict[int, int] = {}
    for lit in ordered:
        for a in lit.args:
            if a.var is not None and a.var not in mapping:
                mapping[a.var] = len(mapping)
    if all(k == v for k, v in mapping.items()):
        return Clause(literals, shape)
    return Clause(frozenset(
        Literal(l.positive, l.pred, l.dup,
                tuple(Term(a.fns, None if a.var is None else mapping[a.var]) for a in l.args))
        for l in literals
    ), shape)


def resolvent(left: Clause, lit: Literal, right: Clause, other: Literal) -> Optional[Clause]:
    """
    Binary resolvent of `left` on `lit` with `right` on `other`.

    `right` must already be renamed apart from `left`.
    """
    if not lit.complementary(other):
        return None
    s = unify_literals(lit, other)
    if s is None:
        return None
    literals = [substitute(l, s) for l in left.literals if l != lit]
    literals += [substitute(l, s) for l in right.literals if l != other]
    return normalize_variables(literals)


def resolve(left: Clause, right: Clause) -> List[Clause]:
    """All binary resolvents of two clauses, in a deterministic order."""
    offset = max(left.variables, default=-1) + 1
    renamed = shift(right, offset)
    found: Dict[Clause, None] = {}
    for lit in left.sorted_literals:
        for other in renamed.sorted_literals:
            res = resolvent(left, lit, renamed, other)
            if res is not None:
                found.setdefault(res, None)
    return list(found)


def factors(c: Clause) -> List[Clause]:
    """Every factor obtained by unifying two same-sign literals of `c`."""
    found: Dict[Clause, None] = {}
    lits = c.sorted_literals
    for i, a in enumerate(lits):
        for b in lits[i + 1:]:
            if a.positive != b.positive:
                continue
            s = unify_literals(a, b)
            if s is None:
                continue
            found.setdefault(normalize_variables(substitute(l, s) for l in c.literals), None)
    return list(found)


def factorize(c: Clause) -> Clause:
    """Merge unifiable same-sign literals until none remain; identity on ground clauses."""
    if c.is_ground:
        return c
    while True:
        merged = factors(c)
        if not merged:
            return c
        c = Clause(merged[0].literals, c.shape)


# --- subsumption -------------------------------------------------------------

def _match_term(pattern: Term, target: Term, s: Dict[int, Term]) -> Optional[Dict[int, Term]]:
    if pattern.var is None:
        return s if pattern == target else None
    n = len(pattern.fns)
    if target.fns[:n] != pattern.fns:
        return None
    value = Term(target.fns[n:], target.var)
    bound = s.get(pattern.var)
    if bound is None:
        return {**s, pattern.var: value}
    return s if bound == value else None


def _match_literal(pattern: Literal, target: Literal, s: Dict[int, Term]) -> Optional[Dict[int, Term]]:
    if (pattern.positive != target.positive or pattern.pred != target.pred
            or pattern.dup != target.dup or len(pattern.args) != len(target.args)):
        return None
    for p, t in zip(pattern.args, target.args):
        s = _match_term(p, t, s)
        if s is None:
            return None
    return s


def subsumes(c: Clause, d: Clause) -> bool:
    """True iff some substitution maps every literal of `c` into `d`."""
    if len(c.literals) > len(d.literals):
        return False
    if c.is_ground:
        return c.literals <= d.literals
    lits = sorted(c.literals, key=lambda l: (not l.is_ground, -l.depth))

    def search(i: int, s: Dict[int, Term]) -> bool:
        if i == len(lits):
            return True
        for target in d.literals:
            extended = _match_literal(lits[i], target, s)
            if extended is not None and search(i + 1, extended):
                return True
        return False

    return search(0, {})


# --- clause sets -------------------------------------------------------------

@dataclass(frozen=True)
class SkolemInfo:
    """Provenance of one skolem function: the axiom A ⊑ ∃r.B that introduced it."""
    axiom: ConceptInclusion
    role: str
    concept: str
    dup: bool


@dataclass(frozen=True)
class ClauseSet:
    clauses: Tuple[Clause, ...]
    skolem_registry: Mapping[str, SkolemInfo] = field(default_factory=dict, hash=False, compare=False)
    n_atomic_concepts: int = 0
    m_existential_occurrences: int = 0
    abducibles: Optional[FrozenSet[str]] = None
    presaturated: bool = False

    def __iter__(self):
        return iter(self.clauses)

    def __len__(self) -> int:
        return len(self.clauses)

    @property
    def seeds(self) -> Tuple[Clause, ...]:
        return tuple(c for c in self.clauses if c.is_ground)

    @property
    def predicates(self) -> FrozenSet[Tuple[str, bool]]:
        """Concept predicates (name, dup) occurring in the clauses."""
        return frozenset((l.pred, l.dup) for c in self.clauses for l in c.literals if not l.is_role)

    def original_skolem(self, fn: str) -> bool:
        info = self.skolem_registry.get(fn)
        return info is None or not info.dup

    def dump(self) -> str:
        """One clause per line, in input order."""
        return "\n".join(str(c) for c in self.clauses)
