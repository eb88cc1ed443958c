"""Exhaustive enumeration of small graph spaces.

Every labeled graph on ``n`` vertices is a bitmask over :func:`all_dyads`.
Walking all ``2^C(n,2)`` masks gives the exact histogram of truncated shell
distributions (the partition function and the exact stationary law are both
read from it) and the brute-force fiber oracle.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Dict, Iterator, List, Tuple

from shellergm.domain.graph import Graph, all_dyads, dyad_index
from shellergm.domain.shells import ShellDistribution
from shellergm.errors import EnumerationCapError

logger = logging.getLogger(__name__)

# 2^21 labeled graphs at n=7
ENUMERATION_HARD_CAP = 7
CERTIFICATE_CAP = 8

TruncatedStatistic = Tuple[int, ...]


def _require_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise EnumerationCapError(
            f"{what} is limited to n <= {cap} vertices, got n={n} "
            f"({2 ** (n * (n - 1) // 2)} labeled graphs)"
        )


def _adjacency_rows(n: int, mask: int) -> List[int]:
    dyads = all_dyads(n)
    rows = [0] * n
    while mask:
        low = mask & -mask
        u, v = dyads[low.bit_length() - 1]
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        mask ^= low
    return rows


def mask_shell_counts(n: int, mask: int) -> Tuple[int, ...]:
    """Shell distribution of the graph encoded by ``mask``, as a count tuple.

    Minimum-degree peel over adjacency bitsets; the shell index of a vertex is
    the running maximum of the minimum degree at the moment it is removed.
    """
    rows = _adjacency_rows(n, mask)
    counts = [0] * n
    alive = (1 << n) - 1
    level = 0
    while alive:
        best = -1
        best_degree = n
        remaining = alive
        while remaining:
            low = remaining & -remaining
            v = low.bit_length() - 1
            remaining ^= low
            d = (rows[v] & alive).bit_count()
            if d < best_degree:
                best_degree = d
                best = v
        if best_degree > level:
            level = best_degree
        counts[level] += 1
        alive ^= 1 << best
    return tuple(counts)


def iter_masks(n: int) -> Iterator[int]:
    return iter(range(1 << (n * (n - 1) // 2)))


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labeled graph on ``n`` vertices, in mask order.

    Raises:
        EnumerationCapError: If ``n`` exceeds the enumeration cap
    """
    _require_cap(n, ENUMERATION_HARD_CAP, "graph enumeration")
    for mask in iter_masks(n):
        yield Graph.from_mask(n, mask)


@lru_cache(maxsize=None)
def statistic_histogram(n: int) -> Dict[TruncatedStatistic, int]:
    """Number of labeled graphs on ``n`` vertices per truncated shell distribution.

    Keys are sorted so downstream floating-point reductions run in a fixed order.

    Raises:
        EnumerationCapError: If ``n`` exceeds the enumeration cap
    """
    if n < 1:
        raise ValueError(f"vertex count must be positive, got {n}")
    _require_cap(n, ENUMERATION_HARD_CAP, "statistic histogram")

    tally: Counter = Counter()
    for mask in iter_masks(n):
        tally[mask_shell_counts(n, mask)[:-1]] += 1

    logger.info(
        "Enumerated %d labeled graphs on %d vertices into %d truncated statistics",
        sum(tally.values()),
        n,
        len(tally),
    )
    return {key: tally[key] for key in sorted(tally)}


# --- isomorphism classes -------------------------------------------------


@dataclass(frozen=True, order=True)
class Certificate:
    """Canonical form of an isomorphism class: the minimal dyad bitmask."""

    n: int
    mask: int

    def to_graph(self) -> Graph:
        return Graph.from_mask(self.n, self.mask)


def _refined_colors(g: Graph) -> List[int]:
    """Colour refinement starting from degrees; colours are ranks of signatures."""
    adjacency = g.adjacency
    colors = [len(nbrs) for nbrs in adjacency]
    distinct = len(set(colors))
    while True:
        signatures = [
            (colors[v], tuple(sorted(colors[u] for u in adjacency[v])))
            for v in range(g.n)
        ]
        ranking = {sig: rank for rank, sig in enumerate(sorted(set(signatures)))}
        refined = [ranking[sig] for sig in signatures]
        if len(ranking) == distinct:
            return refined
        colors = refined
        distinct = len(ranking)


@lru_cache(maxsize=65536)
def canonical_certificate(g: Graph) -> Certificate:
    """Minimal relabeled bitmask of ``g`` over colour-respecting orderings.

    Vertices are placed in blocks by refined colour (ascending) and every
    ordering inside each block is tried. Refined colours are isomorphism
    invariant, so two graphs share a certificate exactly when they are
    isomorphic.

    Raises:
        EnumerationCapError: If ``g`` has more than 8 vertices
    """
    _require_cap(g.n, CERTIFICATE_CAP, "canonical certificate")
    n = g.n
    if n == 0:
        return Certificate(0, 0)

    colors = _refined_colors(g)
    blocks: Dict[int, List[int]] = {}
    for v in range(n):
        blocks.setdefault(colors[v], []).append(v)
    ordered_blocks = [blocks[c] for c in sorted(blocks)]
    offsets = []
    start = 0
    for block in ordered_blocks:
        offsets.append(start)
        start += len(block)

    edges = tuple(g.edges)
    best = None
    position = [0] * n
    for arrangement in product(*(permutations(block) for block in ordered_blocks)):
        for offset, block in zip(offsets, arrangement):
            for k, v in enumerate(block):
                position[v] = offset + k
        mask = 0
        for u, v in edges:
            mask |= 1 << dyad_index(n, position[u], position[v])
        if best is None or mask < best:
            best = mask
    return Certificate(n, best)


def is_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.num_edges != b.num_edges:
        return False
    return canonical_certificate(a) == canonical_certificate(b)


@dataclass(frozen=True)
class FiberEnumeration:
    """Brute-force fiber of one shell distribution.

    Attributes:
        distribution: The enumerated shell distribution
        labeled_count: Number of labeled graphs with that distribution
        iso_classes: Canonical certificates, ascending
        class_sizes: Labeled graphs per class, aligned with ``iso_classes``
    """

    distribution: ShellDistribution
    labeled_count: int
    iso_classes: Tuple[Certificate, ...]
    class_sizes: Tuple[int, ...]

    @property
    def num_classes(self) -> int:
        return len(self.iso_classes)


def fiber_masks(d: ShellDistribution, max_n: int = ENUMERATION_HARD_CAP) -> List[int]:
    """Masks of every labeled graph whose shell distribution is ``d``."""
    _require_cap(d.n, min(max_n, ENUMERATION_HARD_CAP), "fiber enumeration")
    target = d.counts
    n = d.n
    return [mask for mask in iter_masks(n) if mask_shell_counts(n, mask) == target]


def enumerate_fiber(
    d: ShellDistribution, max_n: int = ENUMERATION_HARD_CAP
) -> FiberEnumeration:
    """Enumerate every labeled graph with shell distribution ``d`` and group by isomorphism.

    Raises:
        EnumerationCapError: If ``d.n`` exceeds ``max_n`` (never above 7)
    """
    masks = fiber_masks(d, max_n)
    sizes: Counter = Counter()
    for mask in masks:
        sizes[canonical_certificate(Graph.from_mask(d.n, mask))] += 1

    classes = tuple(sorted(sizes))
    logger.info(
        "Fiber of %s: %d labeled graphs in %d isomorphism classes",
        d,
        len(masks),
        len(classes),
    )
    return FiberEnumeration(
        distribution=d,
        labeled_count=len(masks),
        iso_classes=classes,
        class_sizes=tuple(sizes[c] for c in classes),
    )
