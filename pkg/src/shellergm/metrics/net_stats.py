"""Network summary statistics used by the goodness-of-fit report."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Sequence, Tuple

from shellergm.domain.graph import Graph
from shellergm.metrics.cores import shell_distribution
from shellergm.metrics.interfaces import CentralityMeasure

logger = logging.getLogger(__name__)


def triangles(g: Graph) -> int:
    """Number of 3-cliques; each is counted once from its two lowest vertices."""
    adjacency = g.adjacency
    count = 0
    for u, v in g.edges:
        count += sum(1 for w in adjacency[u] & adjacency[v] if w > v)
    return count


def centrality(g: Graph) -> float:
    """Freeman degree centralization ``sum_v (d_max - d_v) / ((n-1)(n-2))``.

    Raises:
        ValueError: If ``g`` has fewer than 3 vertices
    """
    if g.n < 3:
        raise ValueError(f"degree centralization needs at least 3 vertices, got {g.n}")
    degrees = g.degrees()
    top = max(degrees)
    return sum(top - d for d in degrees) / ((g.n - 1) * (g.n - 2))


def largest_core_index(g: Graph) -> int:
    counts = shell_distribution(g).counts
    return max((j for j, c in enumerate(counts) if c), default=0)


def largest_shell_size(g: Graph) -> int:
    return max(shell_distribution(g).counts, default=0)


def degree_distribution(g: Graph) -> Tuple[int, ...]:
    """``result[d]`` vertices have degree ``d``; length ``n``."""
    counts = [0] * g.n
    for d in g.degrees():
        counts[d] += 1
    return tuple(counts)


# --- centrality registry ---------------------------------------------------


@dataclass(frozen=True)
class FreemanDegreeCentralization:
    name: str = "freeman_degree"

    def compute(self, g: Graph) -> float:
        return centrality(g)


_CENTRALITY_MEASURES: Dict[str, CentralityMeasure] = {}


def register_centrality(measure: CentralityMeasure) -> None:
    """Make ``measure`` available to the GOF report under ``measure.name``.

    Raises:
        ValueError: If the name is already registered
    """
    if measure.name in _CENTRALITY_MEASURES:
        raise ValueError(f"centrality measure '{measure.name}' is already registered")
    _CENTRALITY_MEASURES[measure.name] = measure
    logger.debug("Registered centrality measure %s", measure.name)


def unregister_centrality(name: str) -> None:
    _CENTRALITY_MEASURES.pop(name, None)


def get_centrality(name: str) -> CentralityMeasure:
    try:
        return _CENTRALITY_MEASURES[name]
    except KeyError:
        known = ", ".join(sorted(_CENTRALITY_MEASURES))
        raise ValueError(f"unknown centrality measure '{name}' (known: {known})") from None


def available_centralities() -> List[str]:
    return sorted(_CENTRALITY_MEASURES)


register_centrality(FreemanDegreeCentralization())


def centralities(g: Graph, names: Sequence[str]) -> Dict[str, float]:
    """Score ``g`` under each named measure; ``nan`` below 3 vertices."""
    if g.n < 3:
        return {name: float("nan") for name in names}
    return {name: float(get_centrality(name).compute(g)) for name in names}


# --- summary record --------------------------------------------------------


@dataclass(frozen=True)
class SummaryRecord:
    """Summary statistics of one graph.

    Attributes:
        edges: Edge count
        triangles: Number of 3-cliques
        centrality: Freeman degree centralization (``nan`` below 3 vertices)
        largest_core_index: Top shell index present
        largest_shell_size: Count of the most populated shell
        degree_distribution: Degree histogram, length ``n``
        shell_distribution: Shell histogram, length ``n``
        extra_centralities: Further registered measures by name
    """

    edges: int
    triangles: int
    centrality: float
    largest_core_index: int
    largest_shell_size: int
    degree_distribution: Tuple[int, ...]
    shell_distribution: Tuple[int, ...]
    extra_centralities: Mapping[str, float] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        return {
            "edges": self.edges,
            "triangles": self.triangles,
            "centrality": self.centrality,
            "largest_core_index": self.largest_core_index,
            "largest_shell_size": self.largest_shell_size,
            "degree_distribution": list(self.degree_distribution),
            "shell_distribution": list(self.shell_distribution),
            "extra_centralities": dict(self.extra_centralities),
        }


def summarize(g: Graph, centrality_measures: Sequence[str] = ("freeman_degree",)) -> SummaryRecord:
    counts = shell_distribution(g).counts
    scores = centralities(g, centrality_measures)
    freeman = scores.pop("freeman_degree", None)
    if freeman is None:
        freeman = centrality(g) if g.n >= 3 else float("nan")
    return SummaryRecord(
        edges=g.num_edges,
        triangles=triangles(g),
        centrality=freeman,
        largest_core_index=max((j for j, c in enumerate(counts) if c), default=0),
        largest_shell_size=max(counts, default=0),
        degree_distribution=degree_distribution(g),
        shell_distribution=counts,
        extra_centralities=scores,
    )
