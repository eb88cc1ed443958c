"""Realizability of shell distributions and existence of the MLE.

A vector ``(n_0, ..., n_{n-1})`` is the shell distribution of some simple
graph exactly when it sums to ``n`` and its top non-empty shell ``m`` holds at
least ``m + 1`` vertices. The model polytope in truncated coordinates is the
simplex spanned by the origin and ``n * e_i``; the MLE exists only when the
mean sufficient statistic of a sample is strictly inside it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from shellergm.domain.graph import Graph
from shellergm.domain.shells import ShellDistribution
from shellergm.errors import InfeasibleDistributionError
from shellergm.metrics.cores import degeneracy, shell_distribution


def is_realizable(d: ShellDistribution) -> bool:
    """Return whether ``d`` is the shell distribution of some simple graph."""
    if d.n == 0 or d.total != d.n:
        return False
    m = degeneracy(d)
    return d.counts[m] >= m + 1


def require_realizable(d: ShellDistribution) -> int:
    """Return the degeneracy of ``d`` or raise if ``d`` is not realizable.

    Raises:
        InfeasibleDistributionError: Naming the violated condition
    """
    if d.n == 0:
        raise InfeasibleDistributionError("shell distribution is empty")
    if d.total != d.n:
        raise InfeasibleDistributionError(
            f"shell distribution {d} sums to {d.total}, expected n={d.n}"
        )
    m = degeneracy(d)
    if d.counts[m] < m + 1:
        raise InfeasibleDistributionError(
            f"shell distribution {d} is not realizable: top shell m={m} holds "
            f"n_m={d.counts[m]} vertices but n_m >= m+1 = {m + 1} is required"
        )
    return m


def construct_witness(d: ShellDistribution) -> Graph:
    """Build one graph whose shell distribution is ``d``.

    Vertices ``0 .. m-1`` form a clique ``K_m``; the next ``n_m - m`` vertices
    are joined to all of it, completing shell ``m``. Each vertex of a lower
    shell ``j`` is then joined to clique vertices ``0 .. j-1``.

    Raises:
        InfeasibleDistributionError: If ``d`` is not realizable
    """
    m = require_realizable(d)
    edges: List[Tuple[int, int]] = [(u, v) for u in range(m) for v in range(u + 1, m)]

    next_vertex = m
    for _ in range(d.counts[m] - m):
        edges.extend((c, next_vertex) for c in range(m))
        next_vertex += 1

    for shell in range(m):
        for _ in range(d.counts[shell]):
            edges.extend((c, next_vertex) for c in range(shell))
            next_vertex += 1

    return Graph(d.n, frozenset(edges))


@dataclass(frozen=True)
class PolytopePoint:
    """A point of truncated sufficient-statistic space, exact rationals.

    Attributes:
        coords: ``n - 1`` coordinates
        n: Vertex count; the polytope is ``conv{0, n e_0, ..., n e_{n-2}}``
    """

    coords: Tuple[Fraction, ...]
    n: int

    @classmethod
    def from_sample(cls, sample: Sequence[Graph]) -> "PolytopePoint":
        """Componentwise mean of the truncated shell distributions of ``sample``.

        Raises:
            ValueError: If the sample is empty or mixes vertex counts
        """
        if not sample:
            raise ValueError("the sample must contain at least one graph")
        n = sample[0].n
        if any(g.n != n for g in sample):
            raise ValueError("every graph in the sample must have the same vertex count")
        if n < 2:
            raise ValueError("the model needs at least 2 vertices")

        totals = [0] * (n - 1)
        for g in sample:
            for j, count in enumerate(shell_distribution(g).truncated()):
                totals[j] += count
        size = len(sample)
        return cls(tuple(Fraction(total, size) for total in totals), n)

    def is_interior(self) -> bool:
        """Strictly inside: every coordinate positive and their sum below ``n``."""
        return all(c > 0 for c in self.coords) and sum(self.coords) < self.n


def mle_exists(sample: Sequence[Graph]) -> bool:
    """Return whether the MLE of the shell-distribution model exists for ``sample``."""
    return PolytopePoint.from_sample(sample).is_interior()
