import pytest

from src.el.concepts import atoms
from src.services.oracle import check_connection_minimal
from src.services.pipeline import AbduceOptions, run_abduce
from src.services.recombine import Hypothesis, verify_solution
from src.utils.exceptions import PhaseTimeout

from conftest import ci


def _hypotheses(problem, **options):
    return run_abduce(problem, AbduceOptions(**options)).hypotheses


ACADEMIA = [
    Hypothesis.of(ci(atoms("Doctor", "Professor"), "Researcher")),
    Hypothesis.of(ci("Chair", "ResearchPosition"), ci("PhD", "Diploma")),
]


def test_academia_golden(academia):
    report = run_abduce(academia)
    assert report.complete
    assert report.hypotheses == ACADEMIA
    assert report.negative_implicates == 2
    assert report.max_term_depth == 1
    assert set(report.phase_ms) == {"prepare", "translate", "saturate", "recombine"}


@pytest.mark.parametrize("options", [
    {'use_modules': False},
    {'presaturate': False},
    {'use_modules': False, 'presaturate': False},
])
def test_academia_switches_do_not_change_the_result(academia, options):
    assert _hypotheses(academia, **options) == ACADEMIA


@pytest.mark.parametrize("use_modules", [True, False])
def test_academia_depth_bound(academia, use_modules):
    assert run_abduce(academia, AbduceOptions(use_modules=use_modules)).depth_bound == 132


def test_nested_hypothesis(nested):
    expected = Hypothesis.of(ci(atoms("H", "L"), "E"), ci("A", "F"), ci("B", atoms("G", "H")))
    hypotheses = _hypotheses(nested)
    assert expected in hypotheses
    assert Hypothesis.of(ci(atoms("H", "L"), "E"), ci("A", "F"), ci("M", atoms("G", "H"))) in hypotheses
    for h in hypotheses:
        assert verify_solution(nested.background, h, nested.observation)
        assert h.concept_names <= nested.abducibles


@pytest.mark.parametrize("bound", [None, 2])
def test_cyclic_hypotheses(cyclic, bound):
    report = run_abduce(cyclic, AbduceOptions(depth_bound=bound))
    assert report.depth_bound == (20 if bound is None else 2)
    assert set(report.hypotheses) == {
        Hypothesis.of(ci(atoms("A", "C1"), "C2")),
        Hypothesis.of(ci(atoms("A", "C1"), "B")),
        Hypothesis.of(ci("A", "B")),
    }


def test_lion(lion):
    assert _hypotheses(lion) == [
        Hypothesis.of(ci(atoms("Felidae", "Lion"), "Animal")),
        Hypothesis.of(ci(atoms("Felidae", "Lion"), "Mammal")),
    ]


def test_every_hypothesis_is_connection_minimal(academia, lion):
    for problem in (academia, lion):
        for h in _hypotheses(problem):
            assert check_connection_minimal(problem.background, problem.observation, h, abducibles=problem.abducibles)


def test_verification_in_report(academia):
    report = run_abduce(academia, AbduceOptions(verify=True))
    assert report.verification == [{'solution': True, 'connection_minimal': True}] * 2
    assert "verify" in report.phase_ms
    assert not report.warnings


def test_soft_limit_keeps_going_with_a_warning(academia):
    report = run_abduce(academia, AbduceOptions(soft_timeout=-1.0))
    assert not report.complete
    assert report.warnings
    assert all(not h.constructible for h in report.hypotheses)


def test_hard_limit_aborts(academia):
    with pytest.raises(PhaseTimeout):
        run_abduce(academia, AbduceOptions(hard_timeout=-1.0))


def test_trace_and_dump(lion):
    report = run_abduce(lion, AbduceOptions(trace=True, dump_clauses=True))
    assert report.trace
    assert "Lion(sk0)" in report.clause_dump.splitlines()


def test_stats(academia):
    stats = run_abduce(academia).stats()
    assert stats['num_hypotheses'] == 2
    assert stats['hypothesis_sizes'] == [1, 2]
    assert stats['axiom_sizes'] == [3, 2, 2]
    assert stats['background_size'] == stats['module_size'] == 6
