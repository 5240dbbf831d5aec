"""Shared fixtures and problem builders for the test suite."""

import os
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.el.concepts import (  # noqa: E402
    Atomic,
    ConceptInclusion,
    Existential,
    TBox,
    atoms,
    conjunction,
    equivalence,
)
from src.services.preprocess import AbductionProblem  # noqa: E402

EXAMPLES = Path(__file__).resolve().parent.parent / "docs" / "examples"


def A(name):
    return Atomic(name)


def some(role, filler):
    return Existential(role, filler if not isinstance(filler, str) else Atomic(filler))


def ci(lhs, rhs):
    lhs = Atomic(lhs) if isinstance(lhs, str) else lhs
    rhs = Atomic(rhs) if isinstance(rhs, str) else rhs
    return ConceptInclusion(lhs, rhs)


def academia_tbox():
    return TBox((
        ci(conjunction([some("employment", "ResearchPosition"), some("qualification", "Diploma")]), "Researcher"),
        ci(some("writes", "ResearchPaper"), "Researcher"),
        ci("Doctor", some("qualification", "PhD")),
        *equivalence(A("Professor"), conjunction([A("Doctor"), some("employment", "Chair")])),
        ci("FundsProvider", some("writes", "GrantApplication")),
    ))


def nested_tbox():
    return TBox((
        ci("C1", "H"),
        ci("C1", "L"),
        ci("C1", some("r1", "A")),
        ci("A", some("r2", "M")),
        ci("A", some("r2", "B")),
        ci(conjunction([some("r1", "X"), A("E")]), "C2"),
        ci(atoms("F", "Y"), "X"),
        ci(conjunction([some("r2", "M"), some("r2", "Z")]), "Y"),
        ci(atoms("G", "H"), "Z"),
    ))


def cyclic_tbox():
    return TBox((
        ci("C1", "A"),
        ci("A", some("r", "A")),
        ci(some("r", "B"), "B"),
        ci("B", "C2"),
    ))


def lion_tbox():
    return TBox((
        ci("Lion", "Felidae"),
        ci("Mammal", "Animal"),
        ci("House", "Building"),
    ))


@pytest.fixture
def academia():
    return AbductionProblem.with_full_signature(academia_tbox(), ci("Professor", "Researcher"))


@pytest.fixture
def nested():
    sigma = frozenset("ABEFGHLM")
    return AbductionProblem(nested_tbox(), sigma, ci("C1", "C2"))


@pytest.fixture
def cyclic():
    return AbductionProblem(cyclic_tbox(), frozenset(("A", "B", "C1", "C2")), ci("C1", "C2"))


@pytest.fixture
def lion():
    return AbductionProblem.with_full_signature(lion_tbox(), ci("Lion", "Animal"))


@pytest.fixture
def rng():
    return random.Random(20240611)


# --- random problems ------------------------------------------------------------

ROLES = ("r", "s")


def random_forward_tbox(rng, n_names=6, n_axioms=8, nested=True):
    """
    Random TBox whose axioms only point from lower to higher name indices.

    Every name on a left-hand side has a smaller index than every name on
    the right-hand side, so canonical models are finite trees.
    """
    names = [f"N{i}" for i in range(n_names)]
    axioms = []
    while len(axioms) < n_axioms:
        i = rng.randrange(n_names - 1)
        j = rng.randrange(i + 1, n_names)
        low, high = names[i], names[j]
        role = rng.choice(ROLES)
        kind = rng.randrange(6 if nested else 4)
        if kind == 0:
            axiom = ci(low, high)
        elif kind == 1:
            k = rng.randrange(i + 1) if i else 0
            if names[k] == low:
                continue
            axiom = ci(atoms(names[k], low), high)
        elif kind == 2:
            axiom = ci(some(role, low), high)
        elif kind == 3:
            axiom = ci(low, some(role, high))
        elif kind == 4:
            if j + 1 >= n_names:
                continue
            other = names[rng.randrange(j + 1, n_names)]
            axiom = ci(low, some(role, atoms(high, other)))
        else:
            k = rng.randrange(i + 1) if i else 0
            axiom = ci(conjunction([A(names[k]), some(role, low)]), high)
        axioms.append(axiom)
    return TBox(tuple(axioms))


def random_problem(rng, n_names=6, n_axioms=8, nested=True, attempts=50):
    """A random forward TBox with a non-entailed observation Ni ⊑ Nj, i < j; None if none is found."""
    from src.el.reasoner import entails_ci

    for _ in range(attempts):
        tbox = random_forward_tbox(rng, n_names, n_axioms, nested)
        names = sorted(tbox.concept_names)
        pairs = [
            (a, b) for a in names for b in names
            if int(a[1:]) < int(b[1:]) and not entails_ci(tbox, ci(a, b))
        ]
        if pairs:
            a, b = rng.choice(pairs)
            return AbductionProblem.with_full_signature(tbox, ci(a, b))
    return None


def random_concept(rng, names, depth=2, roles=ROLES):
    """Random canonical concept with at most two successors per node."""
    parts = [A(n) for n in rng.sample(list(names), rng.randrange(3))]
    if depth:
        for _ in range(rng.randrange(3)):
            parts.append(some(rng.choice(roles), random_concept(rng, names, depth - 1, roles)))
    return conjunction(parts)
