"""Rendering of reports and classifications as JSON or text."""

import json
from typing import Any, Dict, Iterable, List, Mapping

from ..el.concepts import ConceptInclusion, flat_names
from ..el.reasoner import SubsumptionTable
from ..services.engine import format_negative
from ..services.pipeline import Report
from ..services.recombine import Hypothesis, flat_axiom


def axiom_to_dict(ci: ConceptInclusion) -> Dict[str, List[str]]:
    return {'lhs': sorted(flat_names(ci.lhs)), 'rhs': sorted(flat_names(ci.rhs))}


def hypothesis_to_dict(h: Hypothesis) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        'axioms': [axiom_to_dict(a) for a in h.sorted_axioms()],
        'constructible': h.constructible,
    }
    if h.provenance is not None:
        support = h.provenance.describe()['support']
        data['provenance'] = {
            'negative_implicate': format_negative(h.provenance.negative),
            'terms': [{'term': term, **sides} for term, sides in support.items()],
        }
    return data


def report_to_dict(report: Report) -> Dict[str, Any]:
    """
    The stable JSON form of a report.

    Returns:
        Dictionary with complete, depth_bound, hypotheses, stats and warnings
    """
    data: Dict[str, Any] = {
        'complete': report.complete,
        'depth_bound': report.depth_bound,
        'hypotheses': [hypothesis_to_dict(h) for h in report.hypotheses],
        'stats': report.stats(),
        'warnings': list(report.warnings),
    }
    if report.verification:
        for entry, verdict in zip(data['hypotheses'], report.verification):
            entry['verification'] = dict(verdict)
    return data


def hypotheses_from_dict(data: Mapping[str, Any]) -> List[Hypothesis]:
    """Read the hypotheses of a JSON report back."""
    return [
        Hypothesis.of(
            *(flat_axiom(a['lhs'], a['rhs']) for a in entry['axioms']),
            constructible=entry.get('constructible', True),
        )
        for entry in data.get('hypotheses', [])
    ]


def render_json(report: Report) -> str:
    return json.dumps(report_to_dict(report), indent=2)


def render_text(report: Report) -> str:
    """Human-readable report."""
    status = "complete" if report.complete else "incomplete (soft limit reached)"
    message = f"Hypotheses: {len(report.hypotheses)}, {status}, depth bound {report.depth_bound}\n\n"
    for i, h in enumerate(report.hypotheses, 1):
        flag = "" if h.constructible else "  [not guaranteed constructible]"
        message += f"H{i}:{flag}\n"
        for a in h.sorted_axioms():
            message += f"  {a}\n"
        if h.provenance is not None:
            message += f"  from {format_negative(h.provenance.negative)}\n"
        if report.verification:
            verdict = report.verification[i - 1]
            message += f"  solution: {verdict['solution']}, connection-minimal: {verdict['connection_minimal']}\n"
        message += "\n"

    stats = report.stats()
    message += "Stats:\n"
    for phase, ms in stats['phase_ms'].items():
        message += f"  {phase}: {ms:.1f} ms\n"
    message += f"  prime implicates: {stats['positive_implicates']} positive, {stats['negative_implicates']} negative\n"
    message += f"  given clauses: {stats['given_clauses']}\n"
    message += f"  module: {stats['module_size']} of {stats['background_size']} axioms\n"
    message += f"  memory: {stats['memory_mb']} MB\n"
    for warning in report.warnings:
        message += f"Warning: {warning}\n"
    return message


def classification_to_dict(table: SubsumptionTable, names: Iterable[str]) -> Dict[str, List[str]]:
    """Sorted subsumers per name, restricted to `names`."""
    names = sorted(names)
    shown = frozenset(names)
    return {name: sorted(table.subsumers(name) & shown) for name in names}


def render_classification(data: Mapping[str, List[str]], fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(data, indent=2)
    return "".join(f"{name}: {', '.join(subsumers)}\n" for name, subsumers in data.items())
