"""Fiber discovery report: how much of a fiber repeated sampler runs reach."""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from shellergm.domain.graph import Graph
from shellergm.domain.shells import ShellDistribution
from shellergm.sampling.enumeration import CERTIFICATE_CAP, Certificate, canonical_certificate
from shellergm.sampling.fiber import random_relabel, sample_fiber, sort_spec, verify_sample

logger = logging.getLogger(__name__)


@dataclass
class ClassDiscovery:
    """First run (1-based) at which an isomorphism class appeared, and how often."""

    certificate: Certificate
    first_seen: int
    count: int = 0


@dataclass
class FiberDiscoveryReport:
    """Outcome of ``runs`` sampler calls on one shell distribution.

    Attributes:
        distribution: Target shell distribution
        runs: Number of sampler calls
        seed: Seed of the random source
        labeled: Whether outputs were randomly relabeled
        distinct_labeled: Distinct labeled graphs among the outputs
        classes: Isomorphism classes in order of discovery, ``None`` above the cap
        failures: Outputs whose shell sequence or construction conditions did not check out
    """

    distribution: ShellDistribution
    runs: int
    seed: int
    labeled: bool
    distinct_labeled: int
    classes: Optional[List[ClassDiscovery]] = None
    failures: int = 0
    graphs: List[Graph] = field(default_factory=list, repr=False)

    @property
    def iso_class_count(self) -> Optional[int]:
        return None if self.classes is None else len(self.classes)

    def to_dict(self) -> Dict[str, object]:
        data: Dict[str, object] = {
            "distribution": list(self.distribution.counts),
            "runs": self.runs,
            "seed": self.seed,
            "labeled": self.labeled,
            "distinct_labeled": self.distinct_labeled,
            "iso_classes": self.iso_class_count,
            "failures": self.failures,
        }
        if self.classes is not None:
            data["classes"] = [
                {
                    "edges": [list(e) for e in c.certificate.to_graph().sorted_edges()],
                    "first_seen": c.first_seen,
                    "count": c.count,
                }
                for c in self.classes
            ]
        return data

    def write_json(self, output_path: Path) -> Path:
        path = Path(output_path)
        with path.open("w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2)
        return path

    def export_to_csv(self, output_path: Path) -> Path:
        """One row per isomorphism class: certificate, first_seen, count, edges."""
        path = Path(output_path)
        with path.open("w", newline="", encoding="utf-8") as csv_file:
            writer = csv.DictWriter(
                csv_file, fieldnames=["certificate", "first_seen", "count", "edges"]
            )
            writer.writeheader()
            for c in self.classes or []:
                writer.writerow(
                    {
                        "certificate": c.certificate.mask,
                        "first_seen": c.first_seen,
                        "count": c.count,
                        "edges": " ".join(f"{u}-{v}" for u, v in c.certificate.to_graph().sorted_edges()),
                    }
                )
        return path

    def write_graphs(self, output_path: Path) -> Path:
        """Every sampler output as one JSON document per line."""
        path = Path(output_path)
        with path.open("w", encoding="utf-8") as f:
            for g in self.graphs:
                f.write(json.dumps(g.to_dict(), sort_keys=True) + "\n")
        return path


def discover_fiber(
    d: ShellDistribution,
    runs: int,
    seed: int,
    labeled: bool = True,
    iso_class_cap: int = CERTIFICATE_CAP,
    keep_graphs: bool = False,
) -> FiberDiscoveryReport:
    """Call the fiber sampler ``runs`` times and tally what it found.

    Raises:
        InfeasibleDistributionError: If ``d`` is not realizable
    """
    if runs < 1:
        raise ValueError(f"runs must be positive, got {runs}")
    spec = sort_spec(d)
    rng = np.random.default_rng(seed)
    track_classes = d.n <= min(iso_class_cap, CERTIFICATE_CAP)

    seen_masks: Dict[int, Certificate] = {}
    classes: Dict[Certificate, ClassDiscovery] = {}
    failures = 0
    graphs: List[Graph] = []

    for run in range(1, runs + 1):
        built = sample_fiber(spec, rng)
        if not verify_sample(built, spec):
            failures += 1
        g = random_relabel(built, rng) if labeled else built
        if keep_graphs:
            graphs.append(g)

        mask = g.to_mask()
        if mask not in seen_masks:
            seen_masks[mask] = canonical_certificate(g) if track_classes else None
        if track_classes:
            cert = seen_masks[mask]
            entry = classes.setdefault(cert, ClassDiscovery(cert, first_seen=run))
            entry.count += 1

    if failures:
        logger.error("%d of %d fiber samples failed verification", failures, runs)
    logger.info(
        "Fiber %s: %d runs, %d distinct labeled graphs, %s isomorphism classes",
        d,
        runs,
        len(seen_masks),
        len(classes) if track_classes else "untracked",
    )

    return FiberDiscoveryReport(
        distribution=d,
        runs=runs,
        seed=seed,
        labeled=labeled,
        distinct_labeled=len(seen_masks),
        classes=list(classes.values()) if track_classes else None,
        failures=failures,
        graphs=graphs,
    )
