import pytest

from src.el.concepts import TOP, Existential, TBox, Top, atoms, conjunction
from src.el.normal_form import is_normal, normalize
from src.el.reasoner import classify, entails_ci, entails_flat, entails_tbox
from src.utils.exceptions import NotNormalized

from conftest import A, academia_tbox, ci, cyclic_tbox, some


# --- normal form -------------------------------------------------------------------

@pytest.mark.parametrize("axiom, normal", [
    (ci("A", "B"), True),
    (ci(atoms("A", "B"), "C"), True),
    (ci(some("r", "A"), "B"), True),
    (ci("A", some("r", "B")), True),
    (ci(TOP, "A"), True),
    (ci("A", some("r", TOP)), True),
    (ci(atoms("A", "B", "C"), "D"), False),
    (ci("A", atoms("B", "C")), False),
    (ci(some("r", some("s", "A")), "B"), False),
    (ci(some("r", "A"), some("s", "B")), False),
])
def test_is_normal(axiom, normal):
    assert is_normal(axiom) == normal


def test_normalize_academia():
    normalized, name_map = normalize(academia_tbox())
    assert all(is_normal(a) for a in normalized)
    assert len(name_map) == 3
    assert all(name.startswith("__fresh_") for name in name_map)
    assert len(normalized.concept_names) == 13
    assert ci("Professor", "Doctor") in normalized
    assert ci("Professor", some("employment", "Chair")) in normalized
    assert sum(1 for a in normalized if isinstance(a.rhs, Existential)) == 3


def test_normalize_is_conservative():
    t = TBox((ci(atoms("A", "B", "C"), some("r", conjunction([A("D"), some("s", "E")]))),))
    normalized, _ = normalize(t)
    assert all(is_normal(a) for a in normalized)
    assert entails_tbox(normalized, t.axioms)
    assert not entails_ci(normalized, ci(atoms("A", "B"), some("r", "D")))


def test_normalize_shares_fresh_names():
    t = TBox((ci(some("r", "A"), "B"), ci(conjunction([A("C"), some("r", "A")]), "D")))
    normalized, name_map = normalize(t)
    assert len(name_map) == 1


# --- classification ------------------------------------------------------------------

def test_classify_requires_normal_form():
    with pytest.raises(NotNormalized):
        classify(TBox((ci(atoms("A", "B", "C"), "D"),)))


def test_classify_academia():
    table = classify(normalize(academia_tbox())[0])
    assert table.subsumes("Professor", "Doctor")
    assert not table.subsumes("Professor", "Researcher")
    assert not table.subsumes("Doctor", "Professor")
    assert ("Professor", "Doctor") in set(table.derived_pairs())
    assert all(a != b for a, b in table.derived_pairs())


def test_classify_existential_chains():
    t = TBox((
        ci("A", some("r", "B")),
        ci("B", "C"),
        ci(some("r", "C"), "D"),
        ci(atoms("A", "D"), "E"),
    ))
    table = classify(normalize(t)[0])
    assert table.subsumers("A") >= {"A", "D", "E"}
    assert not table.subsumes("B", "D")


def test_classify_top():
    t = TBox((ci(TOP, "A"), ci(some("r", TOP), "B"), ci("C", some("r", "D"))))
    table = classify(t)
    assert table.subsumes("C", "A")
    assert table.subsumes("C", "B")
    assert table.subsumes("D", "A")
    assert not table.subsumes("D", "B")


def test_classify_cycle_terminates():
    table = classify(normalize(cyclic_tbox())[0])
    assert table.subsumes("C1", "A")
    assert not table.subsumes("C1", "B")


def test_entails_complex_inclusions():
    t = academia_tbox()
    assert entails_ci(t, ci("Professor", some("employment", "Chair")))
    assert entails_ci(t, ci(conjunction([A("Doctor"), some("employment", "Chair")]), "Professor"))
    assert entails_ci(t, ci("Doctor", some("qualification", TOP)))
    assert entails_ci(t, ci("Lion", TOP))
    assert entails_ci(t, ci("Lion", "Lion"))
    assert not entails_ci(t, ci("Professor", "Researcher"))
    assert not entails_ci(t, ci("Unknown", "Professor"))


def test_entails_flat_and_tbox():
    t = TBox((ci("A", "B"), ci(atoms("B", "C"), "D")))
    assert entails_flat(t, {"A", "C"}, {"D", "B"})
    assert entails_flat(t, {"A"}, set())
    assert not entails_flat(t, {"A"}, {"D"})
    assert entails_tbox(t, [ci("A", "B"), ci(atoms("A", "C"), "D")])
    assert not entails_tbox(t, [ci("B", "A")])


def test_entails_from_empty_tbox():
    assert entails_ci(TBox(), ci(atoms("A", "B"), "A"))
    assert not entails_ci(TBox(), ci("A", "B"))
    assert isinstance(TOP, Top)
