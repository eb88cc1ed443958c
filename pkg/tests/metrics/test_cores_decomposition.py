"""Shell decomposition against hand-worked graphs and two independent oracles."""

from __future__ import annotations

from typing import List

import networkx as nx
import numpy as np
import pytest

from shellergm.data_ingestion.datasets import load_sampson
from shellergm.domain.graph import Graph, erdos_renyi
from shellergm.domain.shells import ShellDistribution
from shellergm.metrics.cores import (
    core_vertices,
    degeneracy,
    k_core,
    shell_decomposition,
    shell_distribution,
    shell_sequence,
    truncated_distribution,
)


def fixpoint_shells(g: Graph) -> List[int]:
    """Shell indices straight from the definition: repeatedly strip vertices of degree < k."""
    shells = [0] * g.n
    k = 1
    alive = set(range(g.n))
    while alive:
        changed = True
        while changed:
            changed = False
            for v in list(alive):
                if len(g.adjacency[v] & alive) < k:
                    alive.discard(v)
                    changed = True
        for v in alive:
            shells[v] = k
        k += 1
    return shells


def _disjoint_union(*graphs: Graph) -> Graph:
    edges = set()
    offset = 0
    for g in graphs:
        edges.update((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, frozenset(edges))


class TestShellSequence:
    """Hand-worked shell sequences."""

    def test_path_is_all_ones(self):
        assert shell_sequence(Graph.path(4)).indices == (1, 1, 1, 1)
        assert shell_distribution(Graph.path(4)).counts == (0, 4, 0, 0)

    def test_empty_graph_is_all_zeros(self):
        assert shell_sequence(Graph.empty(5)).indices == (0,) * 5

    def test_complete_graph_is_top_shell(self):
        for n in range(1, 7):
            assert shell_sequence(Graph.complete(n)).indices == (n - 1,) * n

    def test_clique_plus_cycle(self):
        g = _disjoint_union(Graph.complete(4), Graph.cycle(4))
        assert shell_distribution(g).counts == (0, 0, 4, 4, 0, 0, 0, 0)

    def test_triangle_statistics(self):
        assert shell_distribution(Graph.complete(3)).counts == (0, 0, 3)
        single_edge = Graph(3, frozenset({(0, 1)}))
        assert shell_distribution(single_edge).counts == (1, 2, 0)
        assert truncated_distribution(shell_distribution(single_edge)) == (1, 2)
        assert truncated_distribution(shell_distribution(Graph.empty(3))) == (3, 0)

    def test_clique_with_pendants(self):
        # K5 on 0..4, a triangle 5-6-7 hanging off vertex 0, leaf 8 on 5, isolated 9
        edges = {(u, v) for u in range(5) for v in range(u + 1, 5)}
        edges |= {(5, 6), (6, 7), (5, 7), (0, 5), (5, 8)}
        g = Graph(10, frozenset(edges))
        assert shell_sequence(g).indices == (4, 4, 4, 4, 4, 2, 2, 2, 1, 0)

    def test_sampson(self):
        d = shell_distribution(load_sampson())
        assert d.counts[:4] == (0, 2, 3, 13)
        assert sum(d.counts[4:]) == 0
        assert degeneracy(d) == 3

    def test_peel_order_is_permutation_and_nondecreasing_in_shell(self):
        g = erdos_renyi(15, 0.3, np.random.default_rng(3))
        decomposition = shell_decomposition(g)
        assert sorted(decomposition.peel_order) == list(range(15))
        shells = [decomposition.sequence[v] for v in decomposition.peel_order]
        assert shells == sorted(shells)


class TestOracles:
    """Random graphs against the definition and against networkx."""

    def test_matches_definition_fixpoint(self):
        rng = np.random.default_rng(20240501)
        mismatches = 0
        for _ in range(1000):
            n = int(rng.integers(1, 13))
            g = erdos_renyi(n, float(rng.random()), rng)
            if list(shell_sequence(g).indices) != fixpoint_shells(g):
                mismatches += 1
        assert mismatches == 0

    def test_matches_networkx_core_number(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            n = int(rng.integers(2, 30))
            g = erdos_renyi(n, float(rng.random()) * 0.5, rng)
            reference = nx.Graph()
            reference.add_nodes_from(range(n))
            reference.add_edges_from(g.edges)
            expected = nx.core_number(reference)
            assert shell_sequence(g).indices == tuple(expected[v] for v in range(n))

    def test_relabeling_permutes_indices(self):
        rng = np.random.default_rng(11)
        g = erdos_renyi(12, 0.35, rng)
        perm = rng.permutation(12).tolist()
        original = shell_sequence(g).indices
        relabeled = shell_sequence(g.relabel(perm)).indices
        assert all(relabeled[perm[v]] == original[v] for v in range(12))


class TestKCore:
    """k-core extraction."""

    def test_zero_core_is_graph(self):
        g = Graph.path(5)
        assert k_core(g, 0) is g

    def test_two_core_drops_trees(self):
        edges = {(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)}
        g = Graph(6, frozenset(edges))
        assert core_vertices(g, 2) == (0, 1, 2)
        assert k_core(g, 2) == Graph.complete(3)

    def test_core_above_degeneracy_is_empty(self):
        g = Graph.complete(5)
        assert k_core(g, 5).n == 0
        assert core_vertices(g, 4) == (0, 1, 2, 3, 4)

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            core_vertices(Graph.path(3), -1)


class TestDegeneracy:
    """Largest populated shell."""

    @pytest.mark.parametrize(
        "counts, expected",
        [((0, 2, 1, 4, 0, 0, 0), 3), ((5, 0, 0, 0, 0), 0), ((0, 0, 3), 2)],
    )
    def test_degeneracy(self, counts, expected):
        assert degeneracy(ShellDistribution(counts)) == expected

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError):
            degeneracy(ShellDistribution((0, 0, 0)))
