"""Exceptions raised by the EL abduction toolkit."""

from typing import Optional


class AbductionError(Exception):
    """Base class for every error the toolkit raises on purpose."""


class ProblemSyntaxError(AbductionError):
    """A problem file could not be parsed."""

    def __init__(self, message: str, line: int, column: int, source: Optional[str] = None):
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")


class UnknownNameError(AbductionError):
    """An abducible or option refers to something the problem does not know."""


class AlreadyEntailed(AbductionError):
    """The background TBox already entails the observation."""


class NotNormalized(AbductionError):
    """An axiom is outside the four normal-form shapes."""


class NotAHomomorphism(AbductionError):
    """A node mapping violates the root or edge conditions."""


class BoundsExhausted(AbductionError):
    """The oracle search was truncated before it could decide."""


class NoCandidate(AbductionError):
    """No benchmark problem can be generated from the given TBox."""


class NotEntailed(AbductionError):
    """A justification or repair was requested for a non-entailed axiom."""


class TautologyError(AbductionError):
    """A repair was requested for an axiom every TBox entails."""


class PhaseTimeout(AbductionError):
    """A pipeline phase ran past the hard time limit."""

    def __init__(self, phase: str, limit: float):
        self.phase = phase
        self.limit = limit
        super().__init__(f"phase '{phase}' exceeded the hard limit of {limit:g}s")
