"""Heuristic goodness-of-fit report.

Compares an observed graph with graphs simulated from a fitted model: for each
summary statistic the report gives sampled quantiles, a histogram and where the
observed value falls, plus per-index degree and shell summaries ready for box
plots and the most visited shell distributions.
"""

from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from shellergm.config.schema import GOFConfig
from shellergm.domain.graph import Graph
from shellergm.metrics.net_stats import SummaryRecord, summarize
from shellergm.sampling.mcmc import DEFAULT_CENTRALITY, ChainTrace

logger = logging.getLogger(__name__)

INTEGER_STATISTICS = ("edges", "triangles", "largest_core_index", "largest_shell_size")


@dataclass
class StatisticSummary:
    """Sampling distribution of one statistic against its observed value.

    Attributes:
        name: Statistic name
        observed: Value on the observed graph
        quantiles: Sampled quantile per level, levels ascending
        histogram: ``(value, count)`` pairs; bin midpoints for real-valued statistics
        position: Mid-rank of the observed value among the samples, in ``[0, 1]``
        mean: Sample mean
    """

    name: str
    observed: float
    quantiles: Dict[float, float]
    histogram: List[Tuple[float, int]]
    position: float
    mean: float

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "observed": self.observed,
            "mean": self.mean,
            "position": self.position,
            "quantiles": {str(level): value for level, value in self.quantiles.items()},
            "histogram": [{"value": v, "count": c} for v, c in self.histogram],
        }

    def histogram_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.histogram, columns=["value", "count"])


def empirical_position(samples: np.ndarray, observed: float) -> float:
    """``(#below + 0.5 * #equal) / N``; 0.5 when every sample equals ``observed``."""
    below = int(np.count_nonzero(samples < observed))
    equal = int(np.count_nonzero(samples == observed))
    return (below + 0.5 * equal) / len(samples)


def _unit_histogram(values: np.ndarray) -> List[Tuple[float, int]]:
    counts = Counter(int(v) for v in values)
    return [(float(v), counts[v]) for v in sorted(counts)]


def _binned_histogram(values: np.ndarray, bins: int) -> List[Tuple[float, int]]:
    counts, edges = np.histogram(values, bins=bins)
    midpoints = (edges[:-1] + edges[1:]) / 2
    return [(float(m), int(c)) for m, c in zip(midpoints, counts)]


def summarize_statistic(
    name: str,
    samples: np.ndarray,
    observed: float,
    levels: Sequence[float],
    bins: Optional[int] = None,
) -> StatisticSummary:
    """Quantiles, histogram and observed position; unit bins unless ``bins`` is given."""
    values = np.asarray(samples, dtype=float)
    quantiles = np.quantile(values, list(levels)) if len(levels) else np.array([])
    histogram = _unit_histogram(values) if bins is None else _binned_histogram(values, bins)
    return StatisticSummary(
        name=name,
        observed=float(observed),
        quantiles={float(q): float(v) for q, v in zip(levels, quantiles)},
        histogram=histogram,
        position=empirical_position(values, observed),
        mean=float(values.mean()),
    )


def index_box_summary(counts: np.ndarray, observed: Sequence[int]) -> List[Dict[str, float]]:
    """Five-number summary of ``counts[:, j]`` for every index ``j``, with the observed count."""
    rows: List[Dict[str, float]] = []
    for j in range(counts.shape[1]):
        column = counts[:, j].astype(float)
        q1, median, q3 = np.quantile(column, [0.25, 0.5, 0.75])
        rows.append(
            {
                "index": j,
                "min": float(column.min()),
                "q1": float(q1),
                "median": float(median),
                "q3": float(q3),
                "max": float(column.max()),
                "observed": int(observed[j]),
            }
        )
    return rows


@dataclass
class _SampleTable:
    edges: np.ndarray
    triangles: np.ndarray
    largest_core_index: np.ndarray
    largest_shell_size: np.ndarray
    centralities: Dict[str, np.ndarray]
    degree_counts: np.ndarray
    shell_counts: np.ndarray

    @property
    def size(self) -> int:
        return int(len(self.edges))

    @classmethod
    def from_trace(cls, trace: ChainTrace) -> "_SampleTable":
        return cls(
            edges=trace.edges,
            triangles=trace.triangles,
            largest_core_index=trace.largest_core_index(),
            largest_shell_size=trace.largest_shell_size(),
            centralities=dict(trace.centralities),
            degree_counts=trace.degree_counts,
            shell_counts=trace.shell_counts,
        )

    @classmethod
    def from_records(cls, records: Sequence[SummaryRecord]) -> "_SampleTable":
        names = sorted(records[0].extra_centralities)
        centralities = {DEFAULT_CENTRALITY: np.array([r.centrality for r in records])}
        for name in names:
            centralities[name] = np.array([r.extra_centralities[name] for r in records])
        return cls(
            edges=np.array([r.edges for r in records]),
            triangles=np.array([r.triangles for r in records]),
            largest_core_index=np.array([r.largest_core_index for r in records]),
            largest_shell_size=np.array([r.largest_shell_size for r in records]),
            centralities=centralities,
            degree_counts=np.array([r.degree_distribution for r in records]),
            shell_counts=np.array([r.shell_distribution for r in records]),
        )


@dataclass
class GOFReport:
    """Goodness-of-fit comparison of an observed graph with simulated samples."""

    n: int
    samples: int
    observed: SummaryRecord
    statistics: Dict[str, StatisticSummary]
    degree_boxes: List[Dict[str, float]]
    shell_boxes: List[Dict[str, float]]
    modal_distributions: List[Tuple[Tuple[int, ...], int]] = field(default_factory=list)

    @property
    def observed_truncated(self) -> Tuple[int, ...]:
        return tuple(self.observed.shell_distribution[:-1])

    def to_dict(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "samples": self.samples,
            "observed": self.observed.to_dict(),
            "statistics": {name: s.to_dict() for name, s in self.statistics.items()},
            "degree_boxes": self.degree_boxes,
            "shell_boxes": self.shell_boxes,
            "modal_distributions": [
                {"distribution": list(key), "count": count}
                for key, count in self.modal_distributions
            ],
            "observed_truncated_distribution": list(self.observed_truncated),
        }

    def write_json(self, output_path: Path) -> Path:
        path = Path(output_path)
        with path.open("w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2, default=str)
        return path

    def write_csvs(self, output_dir: Path) -> List[Path]:
        """One ``value,count`` CSV per statistic plus the two box-plot tables."""
        directory = Path(output_dir)
        directory.mkdir(parents=True, exist_ok=True)
        written: List[Path] = []
        for name, summary in self.statistics.items():
            path = directory / f"gof_{name}.csv"
            summary.histogram_frame().to_csv(path, index=False, encoding="utf-8")
            written.append(path)
        for label, rows in (("degree", self.degree_boxes), ("shell", self.shell_boxes)):
            path = directory / f"gof_{label}_boxes.csv"
            pd.DataFrame(rows).to_csv(path, index=False, encoding="utf-8")
            written.append(path)
        return written


Samples = Union[ChainTrace, Sequence[Graph]]


def gof_compare(
    observed: Graph,
    samples: Samples,
    config: Optional[GOFConfig] = None,
) -> GOFReport:
    """Build the goodness-of-fit report of ``observed`` against ``samples``.

    Args:
        observed: The observed graph
        samples: A chain trace or a list of sampled graphs
        config: Quantile levels, bin counts, centrality measures and modal count

    Raises:
        ValueError: If the samples are empty or their vertex count differs from ``observed``
    """
    config = config or GOFConfig()
    measures = list(dict.fromkeys([DEFAULT_CENTRALITY, *config.centrality_measures]))

    if isinstance(samples, ChainTrace):
        if samples.n != observed.n:
            raise ValueError(f"trace is over n={samples.n}, observed graph has n={observed.n}")
        table = _SampleTable.from_trace(samples)
        modal = samples.modal_distributions(config.modal_top)
    else:
        graphs = list(samples)
        if any(g.n != observed.n for g in graphs):
            raise ValueError(f"every sampled graph must have n={observed.n} vertices")
        if not graphs:
            raise ValueError("no sampled graphs to compare against")
        table = _SampleTable.from_records([summarize(g, measures) for g in graphs])
        counts = Counter(tuple(g_row[:-1]) for g_row in table.shell_counts.tolist())
        modal = sorted(counts.items(), key=lambda item: (-item[1], item[0]))[: config.modal_top]

    if table.size == 0:
        raise ValueError("no recorded samples to compare against")

    record = summarize(observed, measures)
    levels = config.quantile_levels
    statistics: Dict[str, StatisticSummary] = {}
    observed_values: Mapping[str, float] = {
        "edges": record.edges,
        "triangles": record.triangles,
        "largest_core_index": record.largest_core_index,
        "largest_shell_size": record.largest_shell_size,
    }
    for name in INTEGER_STATISTICS:
        statistics[name] = summarize_statistic(
            name, getattr(table, name), observed_values[name], levels
        )

    if observed.n >= 3:
        for measure in measures:
            if measure not in table.centralities:
                logger.warning("Centrality %s was not recorded; skipping", measure)
                continue
            key = "centrality" if measure == DEFAULT_CENTRALITY else f"centrality_{measure}"
            value = (
                record.centrality
                if measure == DEFAULT_CENTRALITY
                else record.extra_centralities[measure]
            )
            statistics[key] = summarize_statistic(
                key, table.centralities[measure], value, levels, bins=config.centrality_bins
            )

    report = GOFReport(
        n=observed.n,
        samples=table.size,
        observed=record,
        statistics=statistics,
        degree_boxes=index_box_summary(table.degree_counts, record.degree_distribution),
        shell_boxes=index_box_summary(table.shell_counts, record.shell_distribution),
        modal_distributions=[(tuple(int(c) for c in key), int(count)) for key, count in modal],
    )
    logger.info(
        "GOF over %d samples: observed edges at position %.3f",
        report.samples,
        statistics["edges"].position,
    )
    return report
