"""Tie-no-tie proposals for graph-space Metropolis chains.

A move picks the edge set or the non-edge set with probability 1/2 and
toggles ``k`` dyads drawn uniformly from it. When the picked set is empty the
other set is used; when it holds fewer than ``k`` dyads the whole set is
toggled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Protocol, Tuple

import numpy as np

from shellergm.domain.enums import MoveBranch
from shellergm.domain.graph import Edge, Graph, num_dyads


@dataclass(frozen=True)
class Proposal:
    """A proposed move.

    Attributes:
        graph: The proposed state
        log_ratio: ``log q(g | g') - log q(g' | g)``; ``-inf`` when the move cannot be reversed
        toggled: Dyads flipped by the move, ascending
        branch: Whether edges were added or removed
    """

    graph: Graph
    log_ratio: float
    toggled: Tuple[Edge, ...]
    branch: MoveBranch

    @property
    def reversible(self) -> bool:
        return self.log_ratio != -math.inf


class ProposalStrategy(Protocol):
    """Strategy interface for graph proposals.

    Invariants:
        - Draws only from ``rng``; identical generator state gives an identical proposal
        - Never mutates ``g``
    """

    def propose(self, g: Graph, rng: np.random.Generator) -> Proposal:  # pragma: no cover - interface
        ...


def _log_move_probability(chosen_size: int, other_size: int, k: int) -> Tuple[int, float]:
    """Toggle count and log probability of one specific move from a set of ``chosen_size``."""
    count = min(k, chosen_size)
    branch = 0.0 if other_size == 0 else math.log(0.5)
    return count, branch - math.log(math.comb(chosen_size, count))


def tnt_propose(g: Graph, k: int, rng: np.random.Generator) -> Proposal:
    """Draw one tie-no-tie move from ``g``.

    Raises:
        ValueError: If ``k < 1`` or ``g`` has fewer than 2 vertices
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    total = num_dyads(g.n)
    if total == 0:
        raise ValueError("tie-no-tie proposals need at least 2 vertices")

    edges: List[Edge] = g.sorted_edges()
    non_edges: List[Edge] = g.non_edges()

    remove = rng.random() < 0.5
    if remove and not edges:
        remove = False
    elif not remove and not non_edges:
        remove = True

    chosen, other = (edges, non_edges) if remove else (non_edges, edges)
    count, log_forward = _log_move_probability(len(chosen), len(other), k)

    if count == len(chosen):
        toggled = tuple(chosen)
    else:
        picked = rng.choice(len(chosen), size=count, replace=False)
        toggled = tuple(sorted(chosen[int(i)] for i in picked))

    proposed = Graph._trusted(g.n, g.edges.symmetric_difference(toggled))

    # The reverse move draws from the set the toggled dyads joined.
    reverse_size = len(other) + count
    reverse_other = len(chosen) - count
    if min(k, reverse_size) != count:
        log_ratio = -math.inf
    else:
        _, log_reverse = _log_move_probability(reverse_size, reverse_other, k)
        log_ratio = log_reverse - log_forward

    return Proposal(
        graph=proposed,
        log_ratio=log_ratio,
        toggled=toggled,
        branch=MoveBranch.REMOVE if remove else MoveBranch.ADD,
    )


@dataclass(frozen=True)
class TieNoTieProposal:
    """``ProposalStrategy`` toggling ``k`` dyads per move."""

    k: int = 5

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")

    def propose(self, g: Graph, rng: np.random.Generator) -> Proposal:
        return tnt_propose(g, self.k, rng)
