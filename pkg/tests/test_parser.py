import logging

import pytest

from src.cli.parser import (
    format_problem,
    parse_abducibles,
    parse_axiom,
    parse_ofn,
    parse_problem,
    parse_problem_file,
    parse_tbox,
)
from src.el.concepts import TOP, atoms, conjunction, equivalence
from src.utils.exceptions import AlreadyEntailed, ProblemSyntaxError, UnknownNameError

from conftest import EXAMPLES, A, academia_tbox, nested_tbox, ci, some


def test_parse_axiom_precedence():
    (axiom,) = parse_axiom("A and r some B and C SubClassOf s some (D and E)")
    assert axiom == ci(conjunction([A("A"), some("r", "B"), A("C")]), some("s", atoms("D", "E")))


def test_parse_nested_existentials_and_top():
    (axiom,) = parse_axiom("r some s some Top SubClassOf Top")
    assert axiom == ci(some("r", some("s", TOP)), TOP)


def test_parse_equivalence():
    assert parse_axiom("A EquivalentTo B and C") == equivalence(A("A"), atoms("B", "C"))
    with pytest.raises(ProblemSyntaxError):
        parse_axiom("A EquivalentTo B", allow_equivalence=False)


@pytest.mark.parametrize("text, column", [
    ("A SubClassOf", 13),
    ("A SubClassOf B C", 16),
    ("A and SubClassOf B", 7),
    ("A SubClassOf (B and C", 22),
    ("A SubClassOf B$", 15),
])
def test_syntax_errors_carry_columns(text, column):
    with pytest.raises(ProblemSyntaxError) as err:
        parse_axiom(text)
    assert err.value.line == 1
    assert err.value.column == column


def test_reserved_names_are_rejected():
    with pytest.raises(ProblemSyntaxError, match="reserved"):
        parse_axiom("__fresh_1 SubClassOf B")


def test_problem_file_sections():
    parsed = parse_problem_file((EXAMPLES / "lion.abd").read_text(), "lion.abd")
    assert len(parsed.problem.background) == 3
    assert parsed.problem.observation == ci("Lion", "Animal")
    assert parsed.problem.abducibles == parsed.problem.signature
    assert parsed.options == {'soft_timeout': 10.0}


def test_example_files_match_fixtures():
    assert parse_problem((EXAMPLES / "academia.abd").read_text()).background == academia_tbox()
    nested = parse_problem((EXAMPLES / "nested.abd").read_text())
    assert nested.background == nested_tbox()
    assert nested.abducibles == frozenset("ABEFGHLM")


def test_error_lines_point_into_the_file():
    text = "tbox {\n  A SubClassOf B\n  A SubClassOf and\n}\nobservation: A SubClassOf C\n"
    with pytest.raises(ProblemSyntaxError) as err:
        parse_problem(text, "broken.abd")
    assert err.value.line == 3
    assert str(err.value).startswith("broken.abd:3:")


@pytest.mark.parametrize("text", [
    "tbox {\n  A SubClassOf B\n",
    "tbox {\n  A SubClassOf B\n}\n",
    "observation: A SubClassOf B\nobservation: A SubClassOf C\n",
    "tbox {\n}\nobservation: A SubClassOf B\noptions {\n  depth_bound: many\n}\n",
    "tbox {\n}\nobservation: A SubClassOf B\noptions {\n  colour: blue\n}\n",
    "goal: A SubClassOf B\n",
    "observation: A EquivalentTo B\n",
])
def test_malformed_problem_files(text):
    with pytest.raises(ProblemSyntaxError):
        parse_problem(text)


def test_unknown_abducibles():
    with pytest.raises(UnknownNameError):
        parse_problem("observation: A SubClassOf B\nabducibles: A, Z\n")


def test_entailed_observation():
    with pytest.raises(AlreadyEntailed):
        parse_problem("tbox {\n  A SubClassOf B\n}\nobservation: A SubClassOf B\n")


def test_comments_and_blank_lines():
    text = "# header\n\ntbox {\n  A SubClassOf B   # told\n}\nobservation: A SubClassOf C\n"
    assert parse_problem(text).background.axioms == (ci("A", "B"),)


def test_parse_tbox_ignores_missing_observation():
    assert len(parse_tbox("tbox {\n  A SubClassOf B\n  B SubClassOf C\n}\n")) == 2


def test_format_problem_reads_back(academia, nested):
    for problem in (academia, nested):
        assert parse_problem(format_problem(problem)) == problem
    text = format_problem(nested, {'depth_bound': 4})
    assert parse_problem_file(text).options == {'depth_bound': 4}


def test_observation_override_resolves_abducibles_against_the_new_signature():
    text = "tbox {\n  A SubClassOf B\n}\nobservation: A SubClassOf E\nabducibles: B, E\n"
    problem = parse_problem_file(text, observation=ci("A", "C")).problem
    assert problem.observation == ci("A", "C")
    assert problem.abducibles == {"B"}
    entailed = "tbox {\n  A SubClassOf B\n}\nobservation: A SubClassOf B\n"
    assert parse_problem_file(entailed, observation=ci("A", "C")).problem.abducibles == {"A", "B", "C"}
    unknown = "tbox {\n  A SubClassOf B\n}\nobservation: A SubClassOf E\nabducibles: Z\n"
    with pytest.raises(UnknownNameError):
        parse_problem_file(unknown, observation=ci("A", "C"))


def test_parse_abducibles():
    assert parse_abducibles("all", {"A", "B"}) == {"A", "B"}
    assert parse_abducibles("A, B", {"A", "B", "C"}) == {"A", "B"}
    with pytest.raises(UnknownNameError):
        parse_abducibles("A, D", {"A"})


OFN = """\
Prefix(:=<http://example.org/zoo#>)
Ontology(<http://example.org/zoo>
  Declaration(Class(:Lion))
  SubClassOf(:Lion :Felidae)
  SubClassOf(Annotation(rdfs:comment "big cat") :Felidae ObjectSomeValuesFrom(:eats :Meat))
  EquivalentClasses(:Carnivore ObjectIntersectionOf(:Animal ObjectSomeValuesFrom(:eats :Meat)))
  SubClassOf(<http://example.org/zoo#Meat> owl:Thing)
  DisjointClasses(:Lion :House)
  SubClassOf(:Lion ObjectAllValuesFrom(:eats :Meat))
)
"""


def test_parse_ofn():
    t = parse_ofn(OFN)
    assert ci("Lion", "Felidae") in t
    assert ci("Felidae", some("eats", "Meat")) in t
    assert ci("Meat", TOP) in t
    for axiom in equivalence(A("Carnivore"), conjunction([A("Animal"), some("eats", "Meat")])):
        assert axiom in t
    assert len(t) == 5


def test_parse_ofn_unbalanced():
    with pytest.raises(ProblemSyntaxError):
        parse_ofn("Ontology(SubClassOf(:A :B)")


def test_parse_ofn_reports_only_non_el_axioms(caplog):
    caplog.set_level(logging.INFO, logger="src.cli.parser")
    parse_ofn(OFN)
    skipped = [r.getMessage() for r in caplog.records if r.getMessage().startswith("Skipped")]
    assert skipped == ["Skipped axioms outside EL: DisjointClasses x1, ObjectAllValuesFrom x1"]
    assert "Imported 5 inclusions" in caplog.text


def test_parse_ofn_heads_attach_to_their_lists():
    t = parse_ofn("Ontology(SubClassOf(:A ObjectSomeValuesFrom(:r ObjectIntersectionOf(:B :C))))")
    assert t.axioms == (ci("A", some("r", atoms("B", "C"))),)
