"""Strategy interfaces for graph summary statistics.

Protocols describe pure, deterministic, no-I/O strategy contracts. Use forward
references for domain types to avoid circular imports.
"""

from __future__ import annotations

from typing import Protocol


class CentralityMeasure(Protocol):
    """Strategy interface for a scalar graph centralization index.

    Inputs:
        g: "Graph" (forward ref) with at least 3 vertices
    Outputs:
        float: centralization score

    Invariants:
        - Pure: no mutation, no I/O
        - Isomorphism invariant: relabeling ``g`` leaves the score unchanged
    """

    name: str

    def compute(self, g: "Graph") -> float:  # pragma: no cover - interface
        ...

