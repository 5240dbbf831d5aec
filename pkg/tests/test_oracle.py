import pytest

from src.el.concepts import TBox, atoms
from src.fol.clauses import SK0, ground
from src.services.oracle import (
    OracleConfig,
    check_connection_minimal,
    enumerate_packed,
    ground_terms,
    hypotheses_equivalent,
    naive_saturation,
)
from src.services.recombine import Hypothesis

from conftest import academia_tbox, ci, lion_tbox
from test_engine import micro_clause_set


def test_config_rejects_non_positive_bounds():
    with pytest.raises(ValueError):
        OracleConfig(max_tree_depth=0)


def test_ground_terms():
    terms = ground_terms(["f", "g"], 2)
    assert len(terms) == 7
    assert SK0 in terms and ground("f", "g") in terms


def test_naive_saturation_agrees_on_micro_example():
    derived = naive_saturation(micro_clause_set(), max_term_depth=1)
    strings = {str(c) for c in derived}
    assert "A2(sk(sk0))" in strings
    assert "~B1'(sk0)" in strings
    assert "~B2'(sk0) | ~B3'(sk(sk0))" in strings


def test_lion_connection_minimality():
    t, obs = lion_tbox(), ci("Lion", "Animal")
    assert check_connection_minimal(t, obs, Hypothesis.of(ci("Felidae", "Mammal")))
    assert not check_connection_minimal(
        t, obs, Hypothesis.of(ci("Felidae", "House"), ci("Building", "Mammal"))
    )


def test_academia_connection_minimality():
    t, obs = academia_tbox(), ci("Professor", "Researcher")
    assert check_connection_minimal(
        t, obs, Hypothesis.of(ci("Chair", "ResearchPosition"), ci("PhD", "Diploma"))
    )
    assert not check_connection_minimal(
        t, obs, Hypothesis.of(ci("Professor", "FundsProvider"), ci("GrantApplication", "ResearchPaper"))
    )


def test_enumerate_packed_academia():
    t, obs = academia_tbox(), ci("Professor", "Researcher")
    found = enumerate_packed(t, obs, t.concept_names)
    expected = [
        Hypothesis.of(ci(atoms("Doctor", "Professor"), "Researcher")),
        Hypothesis.of(ci("Chair", "ResearchPosition"), ci("PhD", "Diploma")),
    ]
    for h in expected:
        assert any(hypotheses_equivalent(h, f) for f in found)


def test_hypotheses_equivalent():
    split = Hypothesis.of(ci("A", "B"), ci("A", "C"))
    packed = Hypothesis.of(ci("A", atoms("B", "C")))
    assert hypotheses_equivalent(split, packed)
    assert not hypotheses_equivalent(split, Hypothesis.of(ci("A", "B")))


def test_empty_background():
    obs = ci("A", "B")
    assert check_connection_minimal(TBox(), obs, Hypothesis.of(obs))
