"""Readers for problem files and for plain functional-syntax ontologies."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

from ..el.concepts import (
    TOP,
    Atomic,
    Concept,
    ConceptInclusion,
    Existential,
    TBox,
    conjunction,
    equivalence,
)
from ..services.preprocess import AbductionProblem, is_reserved
from ..utils.exceptions import ProblemSyntaxError, UnknownNameError

logger = logging.getLogger(__name__)

KEYWORDS = frozenset(("and", "some", "Top", "SubClassOf", "EquivalentTo"))

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_.\-]*)|(?P<punct>[(),]))")

# option key -> converter
OPTION_TYPES = {
    'depth_bound': int,
    'soft_timeout': float,
    'hard_timeout': float,
    'modules': 'switch',
    'presaturation': 'switch',
}

_SWITCH = {'on': True, 'true': True, 'yes': True, 'off': False, 'false': False, 'no': False}


@dataclass(frozen=True)
class ProblemFile:
    problem: AbductionProblem
    options: Dict[str, Union[int, float, bool]] = field(default_factory=dict)


class _Tokens:
    """Tokens of one line with their 1-based columns."""

    def __init__(self, text: str, line: int, offset: int, source: Optional[str]):
        self.line = line
        self.source = source
        self.items: List[Tuple[str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            match = _TOKEN.match(text, pos)
            if match is None:
                column = offset + pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
                raise ProblemSyntaxError(f"unexpected character {text[pos:].lstrip()[0]!r}", line, column, source)
            value = match.group('name') or match.group('punct')
            self.items.append((value, offset + match.start(match.lastgroup) + 1))
            pos = match.end()
        self.pos = 0
        self.end_column = offset + len(text.rstrip()) + 1

    def error(self, message: str, column: Optional[int] = None) -> ProblemSyntaxError:
        if column is None:
            column = self.items[self.pos][1] if self.pos < len(self.items) else self.end_column
        return ProblemSyntaxError(message, self.line, column, self.source)

    def peek(self) -> Optional[str]:
        return self.items[self.pos][0] if self.pos < len(self.items) else None

    def take(self) -> str:
        if self.pos >= len(self.items):
            raise self.error("unexpected end of line")
        value = self.items[self.pos][0]
        self.pos += 1
        return value

    def expect(self, value: str) -> None:
        if self.peek() != value:
            found = self.peek()
            raise self.error(f"expected '{value}'" + (f", found '{found}'" if found else ""))
        self.pos += 1

    def name(self, what: str) -> str:
        value = self.peek()
        if value is None or value in KEYWORDS or value in "(),":
            raise self.error(f"expected {what}" + (f", found '{value}'" if value else ""))
        if is_reserved(value):
            raise self.error(f"'{value}' is a reserved name")
        self.pos += 1
        return value

    def done(self) -> None:
        if self.pos < len(self.items):
            raise self.error(f"unexpected '{self.peek()}'")


def _concept(tokens: _Tokens) -> Concept:
    parts = [_unit(tokens)]
    while tokens.peek() == "and":
        tokens.take()
        parts.append(_unit(tokens))
    return conjunction(parts) if len(parts) > 1 else parts[0]


def _unit(tokens: _Tokens) -> Concept:
    value = tokens.peek()
    if value == "Top":
        tokens.take()
        return TOP
    if value == "(":
        tokens.take()
        inner = _concept(tokens)
        tokens.expect(")")
        return inner
    name = tokens.name("a concept")
    if tokens.peek() == "some":
        tokens.take()
        return Existential(name, _unit(tokens))
    return Atomic(name)


def _axioms(tokens: _Tokens, allow_equivalence: bool = True) -> Tuple[ConceptInclusion, ...]:
    lhs = _concept(tokens)
    keyword = tokens.peek()
    if keyword == "EquivalentTo" and allow_equivalence:
        tokens.take()
        rhs = _concept(tokens)
        tokens.done()
        return equivalence(lhs, rhs)
    if keyword != "SubClassOf":
        raise tokens.error("expected 'SubClassOf'" + (" or 'EquivalentTo'" if allow_equivalence else ""))
    tokens.take()
    rhs = _concept(tokens)
    tokens.done()
    return (ConceptInclusion(lhs, rhs),)


def parse_axiom(text: str, allow_equivalence: bool = True) -> Tuple[ConceptInclusion, ...]:
    """Parse one axiom line; an equivalence yields both inclusions."""
    return _axioms(_Tokens(text, 1, 0, None), allow_equivalence)


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def _option(key: str, value: str, line: int, column: int, source: Optional[str]) -> Union[int, float, bool]:
    kind = OPTION_TYPES.get(key)
    if kind is None:
        raise ProblemSyntaxError(f"unknown option '{key}'", line, column, source)
    if kind == 'switch':
        if value.lower() not in _SWITCH:
            raise ProblemSyntaxError(f"option '{key}' expects on or off", line, column, source)
        return _SWITCH[value.lower()]
    try:
        converted = kind(value)
    except ValueError:
        raise ProblemSyntaxError(f"option '{key}' expects a number, found '{value}'", line, column, source)
    if converted < 0:
        raise ProblemSyntaxError(f"option '{key}' must not be negative", line, column, source)
    return converted


@dataclass
class _Sections:
    axioms: List[ConceptInclusion] = field(default_factory=list)
    observation: Optional[ConceptInclusion] = None
    abducibles: Optional[Tuple[str, ...]] = None
    options: Dict[str, Union[int, float, bool]] = field(default_factory=dict)


def _read_sections(text: str, source: Optional[str]) -> _Sections:
    axioms: List[ConceptInclusion] = []
    observation: Optional[ConceptInclusion] = None
    abducibles: Optional[Tuple[str, ...]] = None
    options: Dict[str, Union[int, float, bool]] = {}
    block: Optional[str] = None
    block_line = 0
    seen = set()

    def header(key: str, line_no: int, indent: int) -> None:
        if key in seen:
            raise ProblemSyntaxError(f"duplicate '{key}' section", line_no, indent + 1, source)
        seen.add(key)

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())

        if block is not None:
            if stripped == "}":
                block = None
                continue
            if block == "tbox":
                axioms.extend(_axioms(_Tokens(line, line_no, 0, source)))
            else:
                if ":" not in stripped:
                    raise ProblemSyntaxError("expected 'key: value'", line_no, indent + 1, source)
                key, value = (part.strip() for part in stripped.split(":", 1))
                options[key] = _option(key, value, line_no, indent + 1, source)
            continue

        match = re.match(r"(tbox|options)\s*\{\s*$", stripped)
        if match:
            header(match.group(1), line_no, indent)
            block, block_line = match.group(1), line_no
            continue

        match = re.match(r"(observation|abducibles)\s*:", stripped)
        if not match:
            raise ProblemSyntaxError(
                "expected 'tbox {', 'options {', 'observation:' or 'abducibles:'", line_no, indent + 1, source
            )
        key = match.group(1)
        header(key, line_no, indent)
        offset = line.index(":") + 1
        tokens = _Tokens(line[offset:], line_no, offset, source)
        if key == "observation":
            observation = _axioms(tokens, allow_equivalence=False)[0]
        elif tokens.peek() == "all" and len(tokens.items) == 1:
            abducibles = None
        else:
            names = [tokens.name("an abducible name")]
            while tokens.peek() == ",":
                tokens.take()
                names.append(tokens.name("an abducible name"))
            tokens.done()
            abducibles = tuple(names)

    if block is not None:
        raise ProblemSyntaxError(f"'{block}' block is never closed", block_line, 1, source)
    return _Sections(axioms, observation, abducibles, options)


def parse_tbox(text: str, source: Optional[str] = None) -> TBox:
    """The axioms of a problem file's tbox block; the other sections are checked but not used."""
    return TBox(tuple(_read_sections(text, source).axioms))


def parse_problem_file(
    text: str, source: Optional[str] = None, observation: Optional[ConceptInclusion] = None
) -> ProblemFile:
    """
    Parse a problem file.

    Args:
        text: File contents
        source: File name used in error messages
        observation: Replaces the file's observation line; listed abducibles are
            kept where they occur in the new signature and `all` means all of it

    Returns:
        The abduction problem and the options block

    Raises:
        ProblemSyntaxError: On malformed input, with line and column
        UnknownNameError: If an abducible occurs neither in the TBox nor in the observation
        AlreadyEntailed: If the TBox already entails the observation
    """
    sections = _read_sections(text, source)
    own, abducibles = sections.observation, sections.abducibles
    observation = own if observation is None else observation
    if observation is None:
        raise ProblemSyntaxError("missing 'observation:' line", len(text.splitlines()) + 1, 1, source)

    background = TBox(tuple(sections.axioms))
    signature = background.concept_names | observation.concept_names
    if abducibles is None:
        chosen: FrozenSet[str] = signature
    else:
        known = signature | (own.concept_names if own is not None else frozenset())
        unknown = sorted(set(abducibles) - known)
        if unknown:
            raise UnknownNameError(f"abducibles not in the problem signature: {', '.join(unknown)}")
        chosen = frozenset(abducibles) & signature
    problem = AbductionProblem(background, chosen, observation)
    logger.info(f"Parsed {len(background)} axioms, {len(chosen)} abducibles from {source or 'input'}")
    return ProblemFile(problem, sections.options)


def parse_problem(text: str, source: Optional[str] = None) -> AbductionProblem:
    return parse_problem_file(text, source).problem


def parse_abducibles(text: str, signature: Iterable[str]) -> FrozenSet[str]:
    """`all` or a comma-separated list of names from `signature`."""
    signature = frozenset(signature)
    if text.strip() == "all":
        return signature
    names = frozenset(n.strip() for n in text.split(",") if n.strip())
    unknown = sorted(names - signature)
    if unknown:
        raise UnknownNameError(f"abducibles not in the problem signature: {', '.join(unknown)}")
    return names


def format_problem(problem: AbductionProblem, options: Optional[Dict[str, object]] = None) -> str:
    """Problem file text that `parse_problem_file` reads back to the same problem."""
    lines = ["tbox {"]
    lines.extend(f"  {ci}" for ci in problem.background)
    lines.append("}")
    lines.append(f"observation: {problem.observation}")
    if problem.abducibles == problem.signature:
        lines.append("abducibles: all")
    else:
        lines.append(f"abducibles: {', '.join(sorted(problem.abducibles))}")
    if options:
        lines.append("options {")
        lines.extend(f"  {key}: {value}" for key, value in options.items())
        lines.append("}")
    return "\n".join(lines) + "\n"


# --- functional syntax subset ---------------------------------------------------

_OFN_TOKEN = re.compile(r"<[^>]*>|\"(?:[^\"\\]|\\.)*\"(?:\^\^\S+|@\S+)?|[()]|[^\s()]+")

Sexp = Union[str, list]


def _sexps(text: str) -> List[Sexp]:
    """
    Nested lists of a functional-syntax text.

    `Head(a b)` becomes `['Head', 'a', 'b']`: the token right before an
    opening parenthesis is the head of the list it opens.
    """
    stack: List[list] = [[]]
    for line in text.splitlines():
        if line.lstrip().startswith("#"):
            continue
        for token in _OFN_TOKEN.findall(line):
            if token == "(":
                current = stack[-1]
                head = current.pop() if current and isinstance(current[-1], str) else None
                stack.append([head] if head is not None else [])
            elif token == ")":
                if len(stack) == 1:
                    raise ProblemSyntaxError("unbalanced ')'", 0, 0)
                done = stack.pop()
                stack[-1].append(done)
            else:
                stack[-1].append(token)
    if len(stack) != 1:
        raise ProblemSyntaxError("unbalanced '('", 0, 0)
    return stack[0]


def _local_name(iri: str) -> str:
    iri = iri.strip("<>")
    for sep in ("#", "/", ":"):
        if sep in iri:
            iri = iri.rsplit(sep, 1)[1]
    return iri


class _Unsupported(Exception):
    pass


def _ofn_concept(x: Sexp) -> Concept:
    if isinstance(x, str):
        if x in ("owl:Thing", "<http://www.w3.org/2002/07/owl#Thing>"):
            return TOP
        return Atomic(_local_name(x))
    if len(x) >= 2 and x[0] == "ObjectIntersectionOf":
        return conjunction(_ofn_concept(c) for c in x[1:])
    if len(x) == 3 and x[0] == "ObjectSomeValuesFrom" and isinstance(x[1], str):
        return Existential(_local_name(x[1]), _ofn_concept(x[2]))
    raise _Unsupported(x[0] if x else "()")


def _ofn_axioms(x: list) -> List[ConceptInclusion]:
    args = [a for a in x[1:] if not (isinstance(a, list) and a and a[0] == "Annotation")]
    if x[0] == "SubClassOf" and len(args) == 2:
        return [ConceptInclusion(_ofn_concept(args[0]), _ofn_concept(args[1]))]
    if x[0] == "EquivalentClasses" and len(args) >= 2:
        first = _ofn_concept(args[0])
        found: List[ConceptInclusion] = []
        for other in args[1:]:
            found.extend(equivalence(first, _ofn_concept(other)))
        return found
    raise _Unsupported(x[0])


def parse_ofn(text: str) -> TBox:
    """
    Read the EL part of a functional-syntax ontology.

    SubClassOf and EquivalentClasses axioms over named classes,
    ObjectIntersectionOf, ObjectSomeValuesFrom and owl:Thing are kept;
    declarations, prefixes and annotations are ignored and every other
    axiom is skipped.
    """
    axioms: List[ConceptInclusion] = []
    skipped: Dict[str, int] = {}

    def visit(items: List[Sexp]) -> None:
        for item in items:
            if not isinstance(item, list) or not item or not isinstance(item[0], str):
                continue
            head = item[0]
            if head == "Ontology":
                visit(item[1:])
            elif head in ("Prefix", "Import", "Declaration", "Annotation"):
                continue
            else:
                try:
                    axioms.extend(_ofn_axioms(item))
                except _Unsupported as e:
                    skipped[str(e)] = skipped.get(str(e), 0) + 1

    visit(_sexps(text))
    reserved = sorted(n for ci in axioms for n in ci.concept_names if is_reserved(n))
    if reserved:
        raise ProblemSyntaxError(f"'{reserved[0]}' is a reserved name", 0, 0)
    if skipped:
        logger.info(f"Skipped axioms outside EL: {', '.join(f'{k} x{v}' for k, v in sorted(skipped.items()))}")
    logger.info(f"Imported {len(axioms)} inclusions")
    return TBox(tuple(axioms))
