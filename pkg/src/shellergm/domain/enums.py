"""Enums for the shellergm domain model."""

from enum import Enum


class Correction(str, Enum):
    """Acceptance rule of the Metropolis chain.

    ``PAPER`` treats the tie-no-tie proposal as symmetric. ``HASTINGS``
    multiplies in the proposal ratio so the chain targets the model exactly.
    """

    PAPER = "paper_metropolis"
    HASTINGS = "hastings_corrected"

    @classmethod
    def parse(cls, value: str) -> "Correction":
        """Accept the enum value or the short CLI spellings ``paper``/``hastings``."""
        aliases = {"paper": cls.PAPER, "hastings": cls.HASTINGS}
        key = str(value).strip().lower()
        if key in aliases:
            return aliases[key]
        return cls(key)

    def __str__(self) -> str:
        return self.value


class MoveBranch(str, Enum):
    """Which dyad set a tie-no-tie proposal drew from."""

    ADD = "add"
    REMOVE = "remove"

    def __str__(self) -> str:
        return self.value
