"""Exception types raised across shellergm.

Every error derives from ``ValueError`` so callers that only care about bad
input can catch a single type. The CLI maps each subclass to its own exit
code.
"""

from __future__ import annotations

from typing import Optional


class EdgeListParseError(ValueError):
    """An edge-list file could not be parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None) -> None:
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class InfeasibleDistributionError(ValueError):
    """A shell distribution is not the distribution of any simple graph."""


class EstimatorError(ValueError):
    """The smoothed empirical estimator cannot produce finite parameters."""


class EnumerationCapError(ValueError):
    """An exhaustive enumeration was requested above its vertex cap."""


class DistributionParseError(ValueError):
    """A shell distribution given as text could not be parsed."""
