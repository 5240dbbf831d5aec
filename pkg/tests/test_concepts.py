import pytest

from src.el.concepts import (
    TOP,
    Atomic,
    ConceptInclusion,
    Conjunction,
    Existential,
    TBox,
    atoms,
    canonical,
    concept_names,
    conjunction,
    existential_count,
    flat_names,
    role_depth,
    role_names,
)
from src.el.trees import (
    DescriptionTree,
    NodeMapping,
    concept_to_tree,
    is_t_homomorphism,
    is_weak_homomorphism,
    one_step_reductions,
    preceq_and,
    tree_to_concept,
    weak_homomorphisms,
)
from src.utils.exceptions import NotAHomomorphism

from conftest import A, ci, some


def test_conjunction_is_flat_sorted_and_deduplicated():
    c = conjunction([A("B"), conjunction([A("A"), A("B")]), some("r", "C")])
    assert isinstance(c, Conjunction)
    assert c.conjuncts == (A("A"), A("B"), some("r", "C"))
    assert conjunction([A("B"), A("A")]) == conjunction([A("A"), A("B")])


def test_conjunction_edge_cases():
    assert conjunction([]) == TOP
    assert conjunction([A("A")]) == A("A")
    assert conjunction([A("A"), TOP]) == A("A")
    assert atoms() == TOP


def test_canonical_reaches_into_fillers():
    c = Existential("r", Conjunction((A("B"), A("A"), A("B"))))
    assert canonical(c) == Existential("r", atoms("A", "B"))


def test_signature_helpers():
    c = conjunction([A("A"), some("r", conjunction([A("B"), some("s", "C")]))])
    assert concept_names(c) == {"A", "B", "C"}
    assert role_names(c) == {"r", "s"}
    assert existential_count(c) == 2
    assert role_depth(c) == 2
    assert flat_names(atoms("A", "B")) == {"A", "B"}
    with pytest.raises(ValueError):
        flat_names(c)


def test_string_forms():
    assert str(ci(atoms("A", "B"), some("r", atoms("C", "D")))) == "A and B SubClassOf r some (C and D)"
    assert str(TOP) == "Top"


def test_axiom_size_counts_atom_occurrences():
    assert ci(atoms("A", "B"), some("r", "C")).size() == 3
    assert ci(TOP, "A").size() == 1


def test_tbox_keeps_first_seen_order_without_duplicates():
    a, b = ci("A", "B"), ci("B", "C")
    t = TBox((a, b, a))
    assert t.axioms == (a, b)
    assert a in t
    assert t.without(a).axioms == (b,)
    assert t.concept_names == {"A", "B", "C"}


# --- description trees ----------------------------------------------------------

def test_concept_tree_round_trip():
    c = conjunction([A("A"), some("r", atoms("B", "C")), some("s", some("r", "D"))])
    tree = concept_to_tree(c)
    assert len(tree.labels) == 4
    assert tree.label(tree.root) == {"A"}
    assert tree.depth() == 2
    assert tree_to_concept(tree) == c


def test_tree_rejects_broken_edges():
    with pytest.raises(ValueError):
        DescriptionTree((frozenset(), frozenset()), ())
    with pytest.raises(ValueError):
        DescriptionTree((frozenset(), frozenset()), ((0, "r", 1), (1, "r", 1)))


def test_preceq_and_drops_conjuncts_at_any_depth():
    big = conjunction([A("A"), some("r", atoms("B", "C"))])
    assert preceq_and(some("r", "B"), big)
    assert preceq_and(TOP, big)
    assert preceq_and(big, big)
    assert not preceq_and(some("s", "B"), big)
    assert not preceq_and(some("r", "D"), big)


def test_preceq_and_needs_distinct_conjuncts():
    one = some("r", "A")
    two = conjunction([some("r", "A"), some("r", "B")])
    assert preceq_and(conjunction([some("r", "A"), some("r", TOP)]), two)
    assert not preceq_and(conjunction([some("r", "A"), some("r", "B")]), one)


def test_one_step_reductions():
    c = conjunction([A("A"), some("r", "B")])
    reductions = set(one_step_reductions(c))
    assert reductions == {some("r", "B"), A("A"), conjunction([A("A"), some("r", TOP)])}
    assert all(preceq_and(r, c) and r != c for r in reductions)


def test_weak_homomorphisms_enumerate_edge_preserving_maps():
    source = concept_to_tree(some("r", "B"))
    target = concept_to_tree(conjunction([some("r", "A"), some("r", "C")]))
    maps = weak_homomorphisms(source, target)
    assert len(maps) == 2
    assert all(is_weak_homomorphism(phi, source, target) for phi in maps)
    assert weak_homomorphisms(concept_to_tree(some("s", "B")), target) == []


def test_t_homomorphism_checks_labels():
    source = concept_to_tree(some("r", "B"))
    target = concept_to_tree(some("r", "A"))
    phi = weak_homomorphisms(source, target)[0]

    def entails(lhs, rhs):
        return rhs <= lhs | ({"B"} if "A" in lhs else set())

    assert is_t_homomorphism(phi, source, target, entails)
    assert not is_t_homomorphism(phi, source, target, lambda lhs, rhs: rhs <= lhs)
    with pytest.raises(NotAHomomorphism):
        is_t_homomorphism(NodeMapping((1, 0)), source, target, entails)
