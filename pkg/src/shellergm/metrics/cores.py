"""k-core and shell decomposition.

The decomposition is the bucket-queue peel: vertices sit in buckets keyed by
their current degree and the lowest non-empty bucket is drained first, so a
vertex's bucket when it leaves the graph is its shell index. Vertices enter
their buckets in label order, which fixes the peel order for a given graph.
Runs in O(n + m).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from shellergm.domain.graph import Graph
from shellergm.domain.shells import ShellDistribution, ShellSequence


@dataclass(frozen=True)
class ShellDecomposition:
    """Shell indices together with the order in which vertices were peeled."""

    sequence: ShellSequence
    peel_order: Tuple[int, ...]


def shell_decomposition(g: Graph) -> ShellDecomposition:
    """Peel ``g`` and return shell indices plus the removal order."""
    n = g.n
    adjacency = g.adjacency
    degree: List[int] = [len(nbrs) for nbrs in adjacency]
    max_degree = max(degree, default=0)

    # bucket_start[d] is the first slot of bucket d inside `order`
    bucket_start = [0] * (max_degree + 1)
    for d in degree:
        bucket_start[d] += 1
    start = 0
    for d in range(max_degree + 1):
        size = bucket_start[d]
        bucket_start[d] = start
        start += size

    position = [0] * n
    order = [0] * n
    for v in range(n):
        position[v] = bucket_start[degree[v]]
        order[position[v]] = v
        bucket_start[degree[v]] += 1
    for d in range(max_degree, 0, -1):
        bucket_start[d] = bucket_start[d - 1]
    bucket_start[0] = 0

    for i in range(n):
        v = order[i]
        for u in adjacency[v]:
            if degree[u] > degree[v]:
                du = degree[u]
                pu = position[u]
                pw = bucket_start[du]
                w = order[pw]
                if u != w:
                    position[u], position[w] = pw, pu
                    order[pu], order[pw] = w, u
                bucket_start[du] += 1
                degree[u] -= 1

    return ShellDecomposition(ShellSequence(tuple(degree)), tuple(order))


def shell_sequence(g: Graph) -> ShellSequence:
    """Shell index of every vertex of ``g``."""
    return shell_decomposition(g).sequence


def shell_distribution(g: Graph) -> ShellDistribution:
    """Number of vertices in each shell, a vector of length ``n``."""
    return shell_sequence(g).distribution()


def core_vertices(g: Graph, k: int) -> Tuple[int, ...]:
    """Vertices of the k-core, ascending."""
    if k < 0:
        raise ValueError(f"core order must be non-negative, got {k}")
    indices = shell_sequence(g).indices
    return tuple(v for v in range(g.n) if indices[v] >= k)


def k_core(g: Graph, k: int) -> Graph:
    """The maximal subgraph of ``g`` with minimum degree at least ``k``.

    The core is returned relabeled densely (ascending original labels); use
    :func:`core_vertices` for the original labels. ``k == 0`` returns ``g``.
    """
    if k == 0:
        return g
    return g.induced_subgraph(core_vertices(g, k))


def truncated_distribution(d: ShellDistribution) -> Tuple[int, ...]:
    """Drop the last coordinate ``n_{n-1}``."""
    return d.truncated()


def degeneracy(d: ShellDistribution) -> int:
    """Largest shell index with a non-zero count.

    Raises:
        ValueError: If every count is zero
    """
    for index in range(len(d.counts) - 1, -1, -1):
        if d.counts[index] > 0:
            return index
    raise ValueError("an all-zero vector is not the shell distribution of a graph")
