"""Ground and one-variable Horn clauses over skolem terms."""

from .clauses import (
    Term,
    Literal,
    Clause,
    ClauseSet,
    SkolemInfo,
    SK0,
    app,
    var,
    ground,
    clause,
    concept_lit,
    role_lit,
    resolve,
    factorize,
    subsumes,
)

__all__ = [
    'Term',
    'Literal',
    'Clause',
    'ClauseSet',
    'SkolemInfo',
    'SK0',
    'app',
    'var',
    'ground',
    'clause',
    'concept_lit',
    'role_lit',
    'resolve',
    'factorize',
    'subsumes'
]
