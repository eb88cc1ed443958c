"""Shell sequence and shell distribution value types."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from shellergm.errors import DistributionParseError


@dataclass(frozen=True)
class ShellSequence:
    """Shell index of every vertex, in label order.

    Attributes:
        indices: ``indices[i]`` is the largest ``k`` with vertex ``i`` in the k-core
    """

    indices: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "indices", tuple(int(s) for s in self.indices))
        n = len(self.indices)
        for vertex, index in enumerate(self.indices):
            if index < 0 or (n and index > n - 1):
                raise ValueError(
                    f"shell index {index} of vertex {vertex} outside [0, {n - 1}]"
                )

    @property
    def n(self) -> int:
        return len(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __getitem__(self, vertex: int) -> int:
        return self.indices[vertex]

    def sorted(self) -> Tuple[int, ...]:
        return tuple(sorted(self.indices))

    def distribution(self) -> "ShellDistribution":
        return ShellDistribution.from_indices(self.indices, self.n)


@dataclass(frozen=True)
class ShellDistribution:
    """Histogram of shell indices, ``counts[j]`` vertices in shell ``j``.

    The vector always has one slot per vertex (``len(counts) == n``). Values
    that are not the distribution of any graph are representable so that
    realizability can be tested; see :mod:`shellergm.metrics.realizability`.

    Attributes:
        counts: Non-negative counts, length ``n``
    """

    counts: Tuple[int, ...]

    def __post_init__(self) -> None:
        counts = tuple(int(c) for c in self.counts)
        if any(c < 0 for c in counts):
            raise ValueError(f"shell counts must be non-negative, got {counts}")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_indices(cls, indices: Iterable[int], n: int) -> "ShellDistribution":
        tally = Counter(indices)
        return cls(tuple(tally.get(j, 0) for j in range(n)))

    @classmethod
    def parse(cls, text: str) -> "ShellDistribution":
        """Parse ``"0,2,1,4,0,0,0"`` (commas, spaces or parentheses allowed)."""
        cleaned = text.strip().strip("()[]")
        tokens = [tok for tok in cleaned.replace(",", " ").split() if tok]
        if not tokens:
            raise DistributionParseError("empty shell distribution")
        try:
            return cls(tuple(int(tok) for tok in tokens))
        except ValueError as exc:
            raise DistributionParseError(f"invalid shell distribution '{text}': {exc}") from None

    @property
    def n(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __len__(self) -> int:
        return len(self.counts)

    def __getitem__(self, index: int) -> int:
        return self.counts[index]

    def truncated(self) -> Tuple[int, ...]:
        """The sufficient statistic ``(n_0, ..., n_{n-2})``."""
        return self.counts[:-1]

    def expand(self) -> Tuple[int, ...]:
        """Non-decreasing shell sequence with this histogram."""
        return tuple(j for j, count in enumerate(self.counts) for _ in range(count))

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.counts) + ")"


def distribution_of(indices: Sequence[int]) -> ShellDistribution:
    return ShellDistribution.from_indices(indices, len(indices))
