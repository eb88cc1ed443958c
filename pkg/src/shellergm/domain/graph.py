"""Simple undirected graph model shared by every shellergm module."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

Edge = Tuple[int, int]


@dataclass(frozen=True, order=True)
class Dyad:
    """An unordered vertex pair, stored with ``u < v``.

    Attributes:
        u: Smaller vertex label
        v: Larger vertex label
    """

    u: int
    v: int

    def __post_init__(self) -> None:
        """Validate the dyad."""
        if self.u < 0:
            raise ValueError(f"dyad labels must be non-negative, got {self.u}")
        if self.u >= self.v:
            raise ValueError(f"dyad requires u < v, got ({self.u}, {self.v})")

    @classmethod
    def of(cls, a: int, b: int) -> "Dyad":
        """Build a dyad from two labels in either order."""
        return cls(min(a, b), max(a, b))

    def as_tuple(self) -> Edge:
        return (self.u, self.v)


def num_dyads(n: int) -> int:
    """Number of unordered vertex pairs on ``n`` vertices."""
    return n * (n - 1) // 2


@lru_cache(maxsize=None)
def all_dyads(n: int) -> Tuple[Edge, ...]:
    """All dyads of ``n`` vertices in canonical order (0,1), (0,2), ..., (n-2,n-1).

    The position of a dyad in this tuple is its bit position in
    :meth:`Graph.to_mask`.
    """
    return tuple(combinations(range(n), 2))


def dyad_index(n: int, u: int, v: int) -> int:
    """Position of dyad ``{u, v}`` in :func:`all_dyads`."""
    if u > v:
        u, v = v, u
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices ``0 .. n-1``.

    Graphs are immutable values; every operation that changes the edge set
    returns a new graph. Adjacency sets are derived lazily and cached on the
    instance.

    Attributes:
        n: Vertex count
        edges: Unordered vertex pairs, each stored as ``(u, v)`` with ``u < v``
        labels: Optional external vertex names, position ``i`` naming vertex ``i``.
            Not part of graph equality.
    """

    n: int
    edges: frozenset = frozenset()
    labels: Optional[Tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        """Normalize edges to ``u < v`` pairs and validate them."""
        if self.n < 0:
            raise ValueError(f"vertex count must be non-negative, got {self.n}")

        normalized = set()
        for edge in self.edges:
            u, v = (int(x) for x in edge)
            if u == v:
                raise ValueError(f"self-loop on vertex {u} is not allowed")
            if u > v:
                u, v = v, u
            if u < 0 or v >= self.n:
                raise ValueError(
                    f"edge ({u}, {v}) is out of range for a graph on {self.n} vertices"
                )
            normalized.add((u, v))
        object.__setattr__(self, "edges", frozenset(normalized))

        if self.labels is not None:
            if len(self.labels) != self.n:
                raise ValueError(
                    f"label table has {len(self.labels)} entries for {self.n} vertices"
                )
            object.__setattr__(self, "labels", tuple(self.labels))

    # --- constructors ---------------------------------------------------

    @classmethod
    def _trusted(cls, n: int, edges: frozenset) -> "Graph":
        """Build a graph from edges already normalized to ``u < v``."""
        graph = object.__new__(cls)
        object.__setattr__(graph, "n", n)
        object.__setattr__(graph, "edges", edges)
        object.__setattr__(graph, "labels", None)
        return graph

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls._trusted(n, frozenset())

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls._trusted(n, frozenset(all_dyads(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls._trusted(n, frozenset((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        return cls(n, frozenset((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def star(cls, n: int) -> "Graph":
        """Star with centre 0 and leaves ``1 .. n-1``."""
        return cls._trusted(n, frozenset((0, i) for i in range(1, n)))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "Graph":
        """Decode a graph from its dyad bitmask (see :func:`all_dyads`)."""
        dyads = all_dyads(n)
        return cls._trusted(
            n, frozenset(dyads[i] for i in range(len(dyads)) if mask >> i & 1)
        )

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Graph":
        """Build a graph from its JSON form ``{"n": ..., "edges": [[u, v], ...]}``."""
        try:
            n = int(data["n"])
            edges = frozenset(tuple(edge) for edge in data.get("edges", []))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"invalid graph document: {exc}") from exc
        labels = data.get("labels")
        return cls(n, edges, tuple(labels) if labels is not None else None)

    # --- derived structure ----------------------------------------------

    @cached_property
    def adjacency(self) -> Tuple[frozenset, ...]:
        """Neighbor set of every vertex."""
        neighbors: List[set] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            neighbors[u].add(v)
            neighbors[v].add(u)
        return tuple(frozenset(items) for items in neighbors)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def density(self) -> float:
        total = num_dyads(self.n)
        return len(self.edges) / total if total else 0.0

    def neighbors(self, v: int) -> Tuple[int, ...]:
        """Sorted neighbors of ``v``."""
        return tuple(sorted(self.adjacency[v]))

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edges

    def degrees(self) -> Tuple[int, ...]:
        return tuple(len(nbrs) for nbrs in self.adjacency)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def non_edges(self) -> List[Edge]:
        """Dyads that are not edges, in canonical order."""
        return [dyad for dyad in all_dyads(self.n) if dyad not in self.edges]

    def to_mask(self) -> int:
        mask = 0
        for u, v in self.edges:
            mask |= 1 << dyad_index(self.n, u, v)
        return mask

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "n": self.n,
            "edges": [list(edge) for edge in self.sorted_edges()],
        }
        if self.labels is not None:
            data["labels"] = list(self.labels)
        return data

    # --- derived graphs -------------------------------------------------

    def relabel(self, permutation: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``permutation[v]``."""
        if sorted(permutation) != list(range(self.n)):
            raise ValueError("relabeling requires a permutation of 0..n-1")
        perm = [int(p) for p in permutation]
        edges = frozenset(
            (perm[u], perm[v]) if perm[u] < perm[v] else (perm[v], perm[u])
            for u, v in self.edges
        )
        return Graph._trusted(self.n, edges)

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph on ``vertices``, relabeled densely in ascending order."""
        kept = sorted(set(vertices))
        position = {v: i for i, v in enumerate(kept)}
        edges = frozenset(
            (position[u], position[v])
            for u, v in self.edges
            if u in position and v in position
        )
        labels = (
            tuple(self.labels[v] for v in kept) if self.labels is not None else None
        )
        graph = Graph._trusted(len(kept), edges)
        if labels is not None:
            object.__setattr__(graph, "labels", labels)
        return graph


def toggle_dyads(g: Graph, dyads: Sequence[Dyad]) -> Graph:
    """Flip every listed dyad between edge and non-edge.

    Raises:
        ValueError: If a dyad repeats or falls outside ``0 .. n-1``
    """
    pairs = [d.as_tuple() if isinstance(d, Dyad) else Dyad.of(*d).as_tuple() for d in dyads]
    flipped = frozenset(pairs)
    if len(flipped) != len(pairs):
        raise ValueError("toggle_dyads requires distinct dyads")
    for _, v in pairs:
        if v >= g.n:
            raise ValueError(f"dyad vertex {v} is out of range for n={g.n}")
    return Graph._trusted(g.n, g.edges.symmetric_difference(flipped))


def degree_sequence(g: Graph) -> Tuple[int, ...]:
    """Degree of every vertex, in label order."""
    return g.degrees()


def erdos_renyi(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Draw a G(n, p) graph from ``rng``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    dyads = all_dyads(n)
    draws = rng.random(len(dyads)) < p
    return Graph._trusted(n, frozenset(d for d, keep in zip(dyads, draws) if keep))
