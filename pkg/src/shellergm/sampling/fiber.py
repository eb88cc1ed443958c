"""Random construction of graphs with a prescribed shell sequence.

Vertices ``v_0 .. v_{n-1}`` are processed in order of a sorted shell sequence.
Each early vertex is joined to a random set of later vertices sized so that it
keeps at least ``s_i`` neighbours of shell ``>= s_i`` while having at most
``s_i`` later neighbours. The last ``s_n + 1`` vertices all belong to the top
shell and are wired together by a separate tail phase that tracks how many
non-neighbours each of them can still afford.

Every graph in the fiber is produced, up to isomorphism, with positive
probability. The sampling distribution over the fiber is not uniform.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Set, Tuple

import numpy as np

from shellergm.domain.graph import Graph
from shellergm.domain.shells import ShellDistribution, distribution_of
from shellergm.metrics.cores import shell_sequence
from shellergm.metrics.realizability import require_realizable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SortedShellSpec:
    """Input of the fiber sampler.

    Attributes:
        s: Non-decreasing shell sequence
        t: Initial satisfied-neighbour counts, zeros unless given
    """

    s: Tuple[int, ...]
    t: Tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        s = tuple(int(x) for x in self.s)
        n = len(s)
        if n == 0:
            raise ValueError("shell sequence must not be empty")
        if any(a > b for a, b in zip(s, s[1:])):
            raise ValueError(f"shell sequence must be non-decreasing, got {s}")
        if s[0] < 0 or s[-1] > n - 1:
            raise ValueError(f"shell indices must lie in [0, {n - 1}], got {s}")
        require_realizable(distribution_of(s))

        t = tuple(int(x) for x in self.t) if self.t else (0,) * n
        if len(t) != n:
            raise ValueError(f"t has {len(t)} entries for a sequence of length {n}")
        for i, (si, ti) in enumerate(zip(s, t)):
            if not 0 <= ti <= si:
                raise ValueError(f"t[{i}]={ti} outside [0, s[{i}]={si}]")

        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)

    @property
    def n(self) -> int:
        return len(self.s)

    @property
    def top(self) -> int:
        return self.s[-1]

    @property
    def tail_start(self) -> int:
        """First position of the tail set (the last ``s_n + 1`` positions)."""
        return self.n - self.top - 1

    def distribution(self) -> ShellDistribution:
        return distribution_of(self.s)


def sort_spec(d: ShellDistribution) -> SortedShellSpec:
    """Expand ``d`` into its sorted shell sequence with ``t`` all zero.

    Raises:
        InfeasibleDistributionError: If ``d`` is not realizable
    """
    require_realizable(d)
    return SortedShellSpec(d.expand())


def _random_subset(
    candidates: Sequence[int], low: int, high: int, rng: np.random.Generator
) -> List[int]:
    """Draw a size uniformly from ``[low, high]`` then a uniform subset of that size."""
    size = int(rng.integers(low, high + 1))
    if size == 0:
        return []
    picked = rng.choice(len(candidates), size=size, replace=False)
    return [candidates[int(k)] for k in picked]


def sample_fiber(spec: SortedShellSpec, rng: np.random.Generator) -> Graph:
    """Construct a random graph whose vertex ``i`` has shell index ``spec.s[i]``.

    Args:
        spec: Sorted shell sequence with its starting ``t`` vector
        rng: Seeded random source

    Returns:
        A graph on ``spec.n`` vertices, labeled in construction order
    """
    s = spec.s
    n = spec.n
    t = list(spec.t)
    edges: Set[Tuple[int, int]] = set()

    for i in range(spec.tail_start):
        later = list(range(i + 1, n))
        chosen = _random_subset(later, max(0, s[i] - t[i]), s[i], rng)
        for j in chosen:
            edges.add((i, j))
            if s[j] == s[i]:
                t[j] += 1

    tail: List[int] = list(range(spec.tail_start, n))

    def flush(j: int) -> None:
        tail.remove(j)
        edges.update((min(j, k), max(j, k)) for k in tail)

    for j in list(tail):
        if t[j] == 0:
            flush(j)

    while tail:
        i = tail.pop(int(rng.integers(len(tail))))
        chosen = set(_random_subset(tail, max(0, len(tail) - t[i]), len(tail), rng))
        for j in chosen:
            edges.add((min(i, j), max(i, j)))
        for j in [k for k in tail if k not in chosen]:
            t[j] -= 1
            if t[j] == 0:
                flush(j)

    logger.debug("Fiber draw for %s: %d edges", spec.distribution(), len(edges))
    return Graph(n, frozenset(edges))


def random_relabel(g: Graph, rng: np.random.Generator) -> Graph:
    """Permute vertex labels uniformly at random."""
    return g.relabel(rng.permutation(g.n).tolist())


def sample_labeled(d: ShellDistribution, rng: np.random.Generator) -> Graph:
    """One fiber draw with labels permuted, the labeled-graph sampler."""
    return random_relabel(sample_fiber(sort_spec(d), rng), rng)


def check_conditions(g: Graph, s: Sequence[int]) -> bool:
    """Whether peeling can remove ``g``'s vertices in label order with shells ``s``.

    Positions before the tail set must have at least ``s_i`` neighbours of
    shell ``>= s_i`` and at most ``s_i`` later neighbours. A tail vertex may
    have at most ``t_i`` non-neighbours inside the tail, where ``t_i`` counts
    its same-shell neighbours placed before the tail.

    Raises:
        ValueError: If ``s`` is unsorted or its length differs from ``g.n``
    """
    s = tuple(int(x) for x in s)
    n = g.n
    if len(s) != n:
        raise ValueError(f"sequence of length {len(s)} for a graph on {n} vertices")
    if any(a > b for a, b in zip(s, s[1:])):
        raise ValueError("check_conditions requires a sorted shell sequence")
    if n == 0:
        return True

    adjacency = g.adjacency
    tail_start = n - s[-1] - 1

    for i in range(tail_start):
        support = sum(1 for j in adjacency[i] if s[j] >= s[i])
        later = sum(1 for j in adjacency[i] if j > i)
        if support < s[i] or later > s[i]:
            return False

    tail = range(tail_start, n)
    for i in tail:
        t_i = sum(1 for j in adjacency[i] if j < tail_start and s[j] == s[i])
        missing = sum(1 for j in tail if j != i and j not in adjacency[i])
        if missing > t_i:
            return False
    return True


def verify_sample(g: Graph, spec: SortedShellSpec) -> bool:
    """Shell sequence and construction-order conditions of a sampler output."""
    return shell_sequence(g).indices == spec.s and check_conditions(g, spec.s)

