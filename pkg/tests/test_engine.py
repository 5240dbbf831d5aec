import pytest

from src.el.reasoner import classify
from src.fol.clauses import SK0, ClauseSet, app, clause, concept_lit, ground, role_lit, var
from src.services.engine import (
    eligible_literals,
    format_negative,
    minimal_negatives,
    saturate,
)
from src.services.preprocess import prepare
from src.services.translate import depth_bound, presaturate, translate
from src.utils.exceptions import PhaseTimeout

x, y = var(0), var(1)


def micro_clause_set():
    """A1(sk0), ~B1'(sk0) and three rules, one of them over the barred copy."""
    return ClauseSet((
        clause(concept_lit(True, "A1", SK0)),
        clause(concept_lit(False, "B1", SK0, dup=True)),
        clause(concept_lit(False, "A1", x), role_lit(True, "r", x, app("sk", x))),
        clause(concept_lit(False, "A1", x), concept_lit(True, "A2", app("sk", x))),
        clause(
            concept_lit(False, "B2", x, dup=True),
            role_lit(False, "r", x, y),
            concept_lit(False, "B3", y, dup=True),
            concept_lit(True, "B1", x, dup=True),
        ),
    ))


def _pis(problem, use_modules=True, bound=None, **kwargs):
    prepared = prepare(problem, use_modules=use_modules)
    phi = presaturate(translate(prepared), classify(prepared.tbox))
    return saturate(phi, depth_bound(phi) if bound is None else bound, **kwargs)


def test_micro_example():
    pi = saturate(micro_clause_set(), bound=2)
    assert pi.complete
    assert pi.positive == {SK0: {"A1"}, ground("sk"): {"A2"}}
    assert pi.roles == {role_lit(True, "r", SK0, ground("sk"))}
    assert pi.negative == {
        frozenset({("B1", SK0)}),
        frozenset({("B2", SK0), ("B3", ground("sk"))}),
    }


def test_micro_example_with_zero_bound():
    pi = saturate(micro_clause_set(), bound=0)
    assert pi.positive == {SK0: {"A1"}}
    assert pi.negative == {frozenset({("B1", SK0)})}


def test_trace_records_kept_inferences():
    trace = []
    saturate(micro_clause_set(), bound=2, trace=trace)
    assert trace
    assert all(line.startswith("d") and "resolve(" in line for line in trace)


def test_negative_bound_is_rejected():
    with pytest.raises(ValueError):
        saturate(micro_clause_set(), bound=-1)


def test_academia_prime_implicates(academia):
    pi = _pis(academia)
    assert pi.complete
    sk1, sk2 = ground("sk1"), ground("sk2")
    assert pi.positive_atoms() == {
        ("Professor", SK0), ("Doctor", SK0), ("PhD", sk1), ("Chair", sk2),
    }
    assert pi.negative == {
        frozenset({("Researcher", SK0)}),
        frozenset({("ResearchPosition", sk2), ("Diploma", sk1)}),
    }


def test_nested_prime_implicates(nested):
    pi = _pis(nested)
    sk1 = ground("sk1")
    sk2, sk3 = ground("sk2", "sk1"), ground("sk3", "sk1")
    assert pi.positive_atoms() == {("L", SK0), ("H", SK0), ("A", sk1), ("M", sk2), ("B", sk3)}
    expected = frozenset({("E", SK0), ("F", sk1), ("M", sk2), ("G", sk3), ("H", sk3)})
    assert expected in pi.negative
    assert all(name in nested.abducibles for c in pi.negative for name, _ in c)
    # the A ⊑ ∃r2.M successor can serve either r2 requirement
    assert frozenset({("E", SK0), ("F", sk1), ("M", sk2), ("G", sk2), ("H", sk2)}) in pi.negative


def test_cyclic_prime_implicates_stop_at_bound(cyclic):
    pi = _pis(cyclic)
    deepest = max(t.depth for t in pi.positive)
    assert deepest == 8
    assert frozenset({("C2", SK0)}) in pi.negative
    assert all(t.depth <= 8 for c in pi.negative for _, t in c)


def test_negatives_are_ground_barred_and_prime(nested):
    pi = _pis(nested, use_modules=False)
    for c in pi.negative:
        assert all(t.is_ground for _, t in c)
        assert not any(other < c for other in pi.negative)


def test_soft_limit_marks_result_incomplete(academia):
    pi = _pis(academia, soft_limit=-1.0)
    assert not pi.complete


def test_hard_limit_raises(academia):
    with pytest.raises(PhaseTimeout):
        _pis(academia, hard_limit=-1.0)


def test_minimal_negatives():
    a, b = frozenset({("A", SK0)}), frozenset({("A", SK0), ("B", SK0)})
    assert minimal_negatives([a, b, b]) == {a}
    assert format_negative(b) == "~A'(sk0) | ~B'(sk0)"


def test_eligible_literals_prefer_open_role_atoms():
    c = clause(role_lit(False, "r", SK0, y), concept_lit(False, "B", y, dup=True))
    assert eligible_literals(c) == (role_lit(False, "r", SK0, y),)
    conditional = clause(concept_lit(False, "A", SK0), concept_lit(True, "B", SK0))
    assert eligible_literals(conditional) == (concept_lit(False, "A", SK0),)
