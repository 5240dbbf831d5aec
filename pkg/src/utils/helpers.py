"""Helper functions for the EL abduction toolkit."""

import time
import statistics
from typing import Dict, Iterable, Optional

import psutil

from .exceptions import PhaseTimeout


def describe(values: Iterable[float]) -> Dict[str, float]:
    """
    Median, average and maximum of a sequence of numbers.

    Args:
        values: The numbers to summarize

    Returns:
        Dictionary with 'median', 'avg' and 'max' (all 0 for an empty input)
    """
    values = list(values)
    if not values:
        return {'median': 0, 'avg': 0, 'max': 0}
    return {
        'median': statistics.median(values),
        'avg': round(sum(values) / len(values), 3),
        'max': max(values),
    }


def process_memory_mb() -> float:
    """Resident set size of the current process in megabytes."""
    return round(psutil.Process().memory_info().rss / (1024 * 1024), 1)


class Deadline:
    """Soft and hard time limits for one pipeline phase."""

    def __init__(self, phase: str, soft: Optional[float], hard: Optional[float]):
        self.phase = phase
        self.soft = soft
        self.hard = hard
        self.started = time.monotonic()

    def elapsed(self) -> float:
        return time.monotonic() - self.started

    def soft_expired(self) -> bool:
        return self.soft is not None and self.elapsed() > self.soft

    def check_hard(self) -> None:
        """
        Raise if the hard limit has passed.

        Raises:
            PhaseTimeout: When the phase has run longer than the hard limit
        """
        if self.hard is not None and self.elapsed() > self.hard:
            raise PhaseTimeout(self.phase, self.hard)
