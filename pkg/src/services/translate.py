"""Service module that turns a prepared problem into Horn clauses."""

from __future__ import annotations

import logging
from dataclasses import replace
from typing import Dict, List, Optional

from ..el.concepts import Atomic, ConceptInclusion, Conjunction, Existential, TBox
from ..el.reasoner import SubsumptionTable, classify
from ..fol.clauses import (
    I1,
    I2,
    I3,
    I4,
    I5,
    I6,
    I7,
    SK0,
    Clause,
    ClauseSet,
    SkolemInfo,
    app,
    clause,
    concept_lit,
    role_lit,
    var,
)
from .preprocess import PreparedProblem

logger = logging.getLogger(__name__)

BAR = "'"


def bar(name: str) -> str:
    return name + BAR


def is_barred(name: str) -> bool:
    return name.endswith(BAR)


def unbar(name: str) -> str:
    return name[:-len(BAR)] if is_barred(name) else name


def _rename(c, rename):
    if isinstance(c, Atomic):
        return Atomic(rename(c.name))
    if isinstance(c, Existential):
        return Existential(c.role, _rename(c.filler, rename))
    if isinstance(c, Conjunction):
        return Conjunction(tuple(_rename(x, rename) for x in c.conjuncts))
    return c


def duplicate(t: TBox) -> TBox:
    """Barred copy of a normalized TBox; role names are kept."""
    return TBox(tuple(
        ConceptInclusion(_rename(ci.lhs, bar), _rename(ci.rhs, bar)) for ci in t
    ))


def _name(c) -> str:
    return c.name


def _axiom_clauses(ci: ConceptInclusion, dup: bool, skolem: Optional[str]) -> List[Clause]:
    x, y = var(0), var(1)
    lhs, rhs = ci.lhs, ci.rhs

    def lit(positive: bool, c, term):
        return concept_lit(positive, unbar(_name(c)), term, dup)

    if isinstance(rhs, Existential):
        fx = app(skolem, x)
        return [
            clause(lit(False, lhs, x), role_lit(True, rhs.role, x, fx), shape=I6),
            clause(lit(False, lhs, x), lit(True, rhs.filler, fx), shape=I7),
        ]
    if isinstance(lhs, Existential):
        return [clause(
            role_lit(False, lhs.role, x, y), lit(False, lhs.filler, y), lit(True, rhs, x), shape=I5,
        )]
    if isinstance(lhs, Conjunction):
        a, b = lhs.conjuncts
        return [clause(lit(False, a, x), lit(False, b, x), lit(True, rhs, x), shape=I4)]
    return [clause(lit(False, lhs, x), lit(True, rhs, x), shape=I3)]


def translate(p: PreparedProblem) -> ClauseSet:
    """
    Skolemized clauses of T, its barred copy and the negated observation.

    Args:
        p: Prepared problem (normalized, Top eliminated)

    Returns:
        The clause set with its skolem registry and the counts for the depth bound
    """
    clauses: List[Clause] = [
        clause(concept_lit(True, p.lhs_name, SK0), shape=I1),
        clause(concept_lit(False, p.rhs_name, SK0, dup=True), shape=I2),
    ]
    registry: Dict[str, SkolemInfo] = {}
    seen = set(clauses)
    for dup, tbox in ((False, p.tbox), (True, duplicate(p.tbox))):
        index = 0
        for ci in tbox:
            skolem = None
            if isinstance(ci.rhs, Existential):
                index += 1
                skolem = f"skd{index}" if dup else f"sk{index}"
                registry[skolem] = SkolemInfo(ci, ci.rhs.role, unbar(ci.rhs.filler.name), dup)
            for c in _axiom_clauses(ci, dup, skolem):
                if c not in seen:
                    seen.add(c)
                    clauses.append(c)

    phi = ClauseSet(
        clauses=tuple(clauses),
        skolem_registry=registry,
        m_existential_occurrences=p.existential_occurrences,
        abducibles=p.abducibles,
    )
    # input names and a top predicate, in both copies
    phi = replace(phi, n_atomic_concepts=2 * (p.signature_size + 1))
    logger.info(
        f"Translated {len(p.tbox)} axioms into {len(phi)} clauses "
        f"({len(registry)} skolem functions)"
    )
    return phi


def presaturate(phi: ClauseSet, table: SubsumptionTable) -> ClauseSet:
    """
    Add ¬A(x) ∨ B(x) for every entailed A ⊑ B, in both copies.

    Args:
        phi: Clause set from `translate`
        table: Classification of the prepared TBox

    Returns:
        The presaturated clause set
    """
    x = var(0)
    known = set(phi.clauses)
    extra: List[Clause] = []
    for sub, sup in table.derived_pairs():
        for dup in (False, True):
            c = clause(concept_lit(False, sub, x, dup), concept_lit(True, sup, x, dup), shape=I3)
            if c not in known:
                known.add(c)
                extra.append(c)
    logger.debug(f"Presaturation added {len(extra)} clauses")
    return replace(phi, clauses=phi.clauses + tuple(extra), presaturated=True)


def presaturate_tbox(phi: ClauseSet, tbox: TBox) -> ClauseSet:
    return presaturate(phi, classify(tbox))


def depth_bound(phi: ClauseSet) -> int:
    """Skolem nesting bound n × m."""
    return phi.n_atomic_concepts * phi.m_existential_occurrences
