"""Service module computing ground prime implicates by set-of-support resolution."""

from __future__ import annotations

import heapq
import itertools
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Set, Tuple

from ..fol.clauses import (
    Clause,
    ClauseSet,
    Literal,
    Term,
    resolvent,
    shift,
    shift_literal,
    subsumes,
)
from ..utils.config import HARD_TIMEOUT, SOFT_TIMEOUT
from ..utils.helpers import Deadline

logger = logging.getLogger(__name__)

# ground negative clause over barred names: {(name, term)}
NegativeClause = FrozenSet[Tuple[str, Term]]

PredKey = Tuple[str, bool, int]


def _pred_key(lit: Literal) -> PredKey:
    return (lit.pred, lit.dup, len(lit.args))


def _atom(lit: Literal) -> Tuple[str, bool, Tuple[Term, ...]]:
    return (lit.pred, lit.dup, lit.args)


def _barred(c: Clause) -> bool:
    return any(l.dup for l in c.literals)


def _is_mixed(c: Clause) -> bool:
    return len({l.dup for l in c.literals if not l.is_role}) > 1


def _is_tautology(c: Clause) -> bool:
    return any(l.negate() in c.literals for l in c.positives)


def _is_fact(c: Clause) -> bool:
    return len(c.literals) == 1 and bool(c.positives) and c.is_ground


def eligible_literals(c: Clause) -> Tuple[Literal, ...]:
    """Literals of a derived clause that may be resolved upon."""
    if c.variables:
        roles = tuple(l for l in c.negatives if l.is_role and not l.is_ground)
        if roles:
            return roles
    if c.positives and c.negatives:
        return c.negatives
    return c.sorted_literals


@dataclass(frozen=True)
class PrimeImplicateSets:
    """Positive and negative ground prime implicates of one clause set."""
    positive: Mapping[Term, FrozenSet[str]]
    roles: FrozenSet[Literal]
    negative: FrozenSet[NegativeClause]
    complete: bool
    given_clauses: int = field(default=0, compare=False)
    derived_clauses: int = field(default=0, compare=False)

    @property
    def positive_count(self) -> int:
        return sum(len(names) for names in self.positive.values())

    def positive_atoms(self) -> FrozenSet[Tuple[str, Term]]:
        return frozenset((name, t) for t, names in self.positive.items() for name in names)

    def terms(self) -> List[Term]:
        return sorted(self.positive, key=Term.key)


def format_negative(clause: NegativeClause) -> str:
    parts = sorted(clause, key=lambda p: (p[0], p[1].key()))
    return " | ".join(f"~{name}'({term})" for name, term in parts)


def minimal_negatives(clauses: Iterable[NegativeClause]) -> FrozenSet[NegativeClause]:
    """The ⊆-minimal elements of a family of negative clauses."""
    ordered = sorted(set(clauses), key=len)
    kept: List[NegativeClause] = []
    for c in ordered:
        if not any(k <= c for k in kept):
            kept.append(c)
    return frozenset(kept)


class SaturationState:
    """
    Given-clause saturation of a translated problem.

    Input clauses are never selected; they act as rules for the derived
    clauses. Derived clauses are positive ground units (facts), ground
    clauses with one positive literal waiting for facts (conditionals) and
    clauses without positive literal over the barred copy (goals).
    """

    def __init__(self, phi: ClauseSet, bound: int, trace: bool = False):
        self.phi = phi
        self.bound = bound
        self.complete = True
        self.trace: Optional[List[str]] = [] if trace else None

        self.ids: Dict[Clause, str] = {}
        self.rules_by_neg: Dict[PredKey, List[Tuple[Clause, Literal]]] = defaultdict(list)
        self.rules_by_pos: Dict[PredKey, List[Tuple[Clause, Literal]]] = defaultdict(list)
        self.seeds: List[Clause] = []
        for i, c in enumerate(phi.clauses):
            self.ids[c] = f"c{i}"
            if c.is_ground:
                self.seeds.append(c)
            elif _barred(c):
                # goals consume the barred copy through its positive literals
                for lit in c.positives:
                    self.rules_by_pos[_pred_key(lit)].append((c, lit))
            elif not (phi.presaturated and any(l.is_role for l in c.negatives)):
                # with presaturation, facts never need rules that read role atoms
                for lit in c.negatives:
                    self.rules_by_neg[_pred_key(lit)].append((c, lit))

        self.sos: List[tuple] = []
        self.counter = itertools.count()
        self.kept: Set[Clause] = set()
        self.dead: Set[Clause] = set()
        self.lit_index: Dict[Literal, Set[Clause]] = defaultdict(set)
        self.role_index: Dict[PredKey, Set[Clause]] = defaultdict(set)

        self.facts: Dict[Tuple, Clause] = {}
        self.facts_by_pred: Dict[PredKey, List[Clause]] = defaultdict(list)
        self.waiting_ground: Dict[Tuple, List[Tuple[Clause, Literal]]] = defaultdict(list)
        self.waiting_open: Dict[PredKey, List[Tuple[Clause, Literal]]] = defaultdict(list)

        self.derived_pos: Set[Literal] = set()
        self.derived_neg: Set[Clause] = set()
        self.given = 0
        self.derived = 0
        self.pruned_depth = 0

    # --- stores --------------------------------------------------------------

    def _index(self, c: Clause) -> None:
        self.kept.add(c)
        for lit in c.literals:
            if lit.is_ground:
                self.lit_index[lit].add(c)
            if lit.is_role and not lit.positive:
                self.role_index[_pred_key(lit)].add(c)

    def _remove(self, c: Clause) -> None:
        self.kept.discard(c)
        self.dead.add(c)
        for lit in c.literals:
            if lit.is_ground:
                self.lit_index[lit].discard(c)
            if lit.is_role and not lit.positive:
                self.role_index[_pred_key(lit)].discard(c)
        self.derived_neg.discard(c)

    def _forward_subsumed(self, c: Clause) -> bool:
        if c in self.kept:
            return True
        counts: Counter = Counter()
        for lit in c.literals:
            if not lit.is_ground:
                continue
            for d in self.lit_index.get(lit, ()):
                if d.is_ground:
                    counts[d] += 1
                    if counts[d] == len(d):
                        return True
        for lit in c.negatives:
            if lit.is_role:
                for d in self.role_index.get(_pred_key(lit), ()):
                    if d.variables and subsumes(d, c):
                        return True
        return False

    def _backward_subsume(self, c: Clause) -> None:
        if c.is_ground:
            candidates: Optional[Set[Clause]] = None
            for lit in c.literals:
                found = self.lit_index.get(lit, set())
                candidates = set(found) if candidates is None else candidates & found
                if not candidates:
                    return
        else:
            candidates = set()
            for lit in c.negatives:
                if lit.is_role:
                    candidates |= {d for d in self.role_index.get(_pred_key(lit), ()) if subsumes(c, d)}
        for d in candidates or ():
            if d != c:
                self._remove(d)

    def _push(self, c: Clause) -> None:
        key = (c.depth, len(c), c.key(), next(self.counter))
        heapq.heappush(self.sos, (key, c))

    # --- inferences ----------------------------------------------------------

    def _keep(self, c: Clause, premises: Tuple[str, str]) -> None:
        if len(c.variables) > 1 or not c.literals:
            return
        if c.depth > self.bound:
            self.pruned_depth += 1
            return
        if not c.has_ground_term or _is_mixed(c) or _is_tautology(c):
            return
        if self._forward_subsumed(c):
            return
        self._backward_subsume(c)
        self._index(c)
        self.derived += 1
        cid = f"d{self.derived}"
        self.ids[c] = cid
        if self.trace is not None:
            self.trace.append(f"{cid}: resolve({premises[0]}, {premises[1]}) {c}")
        if _is_fact(c):
            self.derived_pos.add(next(iter(c.literals)))
        elif not c.positives and c.is_ground:
            self.derived_neg.add(c)
        self._push(c)

    def _resolve_with(self, given: Clause, lit: Literal, partner: Clause, other: Literal) -> None:
        premises = (self.ids.get(given, "?"), self.ids.get(partner, "?"))
        offset = max(given.variables, default=-1) + 1 if partner.variables else 0
        if offset:
            partner, other = shift(partner, offset), shift_literal(other, offset)
        c = resolvent(given, lit, partner, other)
        if c is not None:
            self._keep(c, premises)

    def _fact_partners(self, lit: Literal) -> Iterable[Clause]:
        if lit.is_ground:
            fact = self.facts.get(_atom(lit))
            return [fact] if fact is not None else []
        return list(self.facts_by_pred.get(_pred_key(lit), ()))

    def _process(self, given: Clause) -> None:
        if _is_fact(given):
            fact = next(iter(given.literals))
            for rule, lit in self.rules_by_neg.get(_pred_key(fact), ()):
                self._resolve_with(given, fact, rule, lit)
            waiting = self.waiting_ground.get(_atom(fact), []) + self.waiting_open.get(_pred_key(fact), [])
            for other, lit in waiting:
                if other not in self.dead:
                    self._resolve_with(given, fact, other, lit)
            self.facts[_atom(fact)] = given
            self.facts_by_pred[_pred_key(fact)].append(given)
            return

        goal = not given.positives
        for lit in eligible_literals(given):
            for fact in self._fact_partners(lit):
                self._resolve_with(given, lit, fact, next(iter(fact.literals)))
            if goal:
                for rule, other in self.rules_by_pos.get(_pred_key(lit), ()):
                    self._resolve_with(given, lit, rule, other)
            if lit.is_ground:
                self.waiting_ground[_atom(lit.negate())].append((given, lit))
            else:
                self.waiting_open[_pred_key(lit)].append((given, lit))

    def run(self, deadline: Deadline) -> None:
        for seed in self.seeds:
            self._keep(seed, ("input", "input"))
        while self.sos:
            deadline.check_hard()
            if deadline.soft_expired():
                self.complete = False
                logger.warning(
                    f"Soft limit of {deadline.soft:g}s reached after {self.given} given clauses; "
                    f"prime implicates may be incomplete"
                )
                break
            _, given = heapq.heappop(self.sos)
            if given in self.dead:
                continue
            self.given += 1
            logger.debug(f"Given clause {self.ids.get(given)}: {given}")
            self._process(given)

    # --- results -------------------------------------------------------------

    def results(self) -> PrimeImplicateSets:
        abducibles = self.phi.abducibles
        positive: Dict[Term, Set[str]] = defaultdict(set)
        roles = set()
        for lit in self.derived_pos:
            if lit.is_role:
                roles.add(lit)
            elif not lit.dup and (abducibles is None or lit.pred in abducibles):
                positive[lit.args[0]].add(lit.pred)

        negatives = []
        for c in self.derived_neg:
            if c in self.dead:
                continue
            if not all(l.dup and not l.is_role for l in c.literals):
                continue
            if abducibles is not None and any(l.pred not in abducibles for l in c.literals):
                continue
            if not all(self.phi.original_skolem(fn) for l in c.literals for fn in l.args[0].fns):
                continue
            negatives.append(frozenset((l.pred, l.args[0]) for l in c.literals))

        return PrimeImplicateSets(
            positive={t: frozenset(names) for t, names in positive.items()},
            roles=frozenset(roles),
            negative=minimal_negatives(negatives),
            complete=self.complete,
            given_clauses=self.given,
            derived_clauses=self.derived,
        )


def saturate(
    phi_p: ClauseSet,
    bound: int,
    soft_limit: Optional[float] = SOFT_TIMEOUT,
    hard_limit: Optional[float] = HARD_TIMEOUT,
    trace: Optional[List[str]] = None,
) -> PrimeImplicateSets:
    """
    Compute the positive and negative ground prime implicates of a clause set.

    Args:
        phi_p: Translated (usually presaturated) clause set
        bound: Maximal skolem nesting depth of any derived literal
        soft_limit: Seconds after which saturation stops with complete=False
        hard_limit: Seconds after which PhaseTimeout is raised
        trace: List receiving one line per kept inference, if given

    Returns:
        The prime implicate sets

    Raises:
        PhaseTimeout: When the hard limit passes
    """
    if bound < 0:
        raise ValueError(f"depth bound must be non-negative, got {bound}")
    state = SaturationState(phi_p, bound, trace=trace is not None)
    deadline = Deadline("saturation", soft_limit, hard_limit)
    state.run(deadline)
    pis = state.results()
    if trace is not None:
        trace.extend(state.trace)
    logger.info(
        f"Saturation {'finished' if pis.complete else 'stopped'} after {deadline.elapsed():.2f}s: "
        f"{pis.positive_count} positive, {len(pis.negative)} negative prime implicates "
        f"({state.given} given, {state.derived} kept, {state.pruned_depth} over depth {bound})"
    )
    return pis
