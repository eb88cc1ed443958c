"""Tests for the random fiber sampler and its construction-order conditions."""

from __future__ import annotations

import time
from itertools import product

import numpy as np
import pytest

from shellergm.domain.graph import Graph, erdos_renyi
from shellergm.domain.shells import ShellDistribution
from shellergm.errors import InfeasibleDistributionError
from shellergm.metrics.cores import shell_distribution
from shellergm.metrics.realizability import is_realizable
from shellergm.sampling.enumeration import canonical_certificate, enumerate_fiber, is_isomorphic
from shellergm.sampling.fiber import (
    SortedShellSpec,
    check_conditions,
    random_relabel,
    sample_fiber,
    sample_labeled,
    sort_spec,
    verify_sample,
)

TWO_EDGES = Graph(4, frozenset({(0, 1), (2, 3)}))


def realizable_distributions(n: int):
    for counts in product(range(n + 1), repeat=n):
        d = ShellDistribution(counts)
        if sum(counts) == n and is_realizable(d):
            yield d


def assert_fiber_covered(d: ShellDistribution, max_runs: int, seed: int) -> None:
    """Every isomorphism class of the brute-force fiber shows up and every draw verifies."""
    expected = set(enumerate_fiber(d).iso_classes)
    spec = sort_spec(d)
    rng = np.random.default_rng(seed)
    found = set()
    for _ in range(max_runs):
        g = sample_fiber(spec, rng)
        assert verify_sample(g, spec), f"draw for {d} failed verification"
        found.add(canonical_certificate(g))
        if found == expected:
            return
    missing = len(expected - found)
    pytest.fail(f"{missing} of {len(expected)} classes of {d} not produced in {max_runs} runs")


class TestSortSpec:
    """Sorted shell sequences from distributions."""

    def test_expands_distribution(self):
        assert sort_spec(ShellDistribution((0, 2, 1, 4, 0, 0, 0))).s == (1, 1, 2, 3, 3, 3, 3)
        assert sort_spec(ShellDistribution((0, 4, 0, 0))).s == (1, 1, 1, 1)
        assert sort_spec(ShellDistribution((3, 0, 0))).s == (0, 0, 0)

    def test_t_defaults_to_zero(self):
        spec = sort_spec(ShellDistribution((0, 2, 1, 4, 0, 0, 0)))
        assert spec.t == (0,) * 7
        assert spec.top == 3
        assert spec.tail_start == 3

    def test_unrealizable_rejected(self):
        with pytest.raises(InfeasibleDistributionError):
            sort_spec(ShellDistribution((1, 0, 2)))

    def test_unsorted_sequence_rejected(self):
        with pytest.raises(ValueError, match="non-decreasing"):
            SortedShellSpec((1, 0, 1))

    def test_t_range_checked(self):
        with pytest.raises(ValueError, match="outside"):
            SortedShellSpec((1, 1, 1, 1), (2, 0, 0, 0))
        with pytest.raises(ValueError):
            SortedShellSpec((1, 1, 1, 1), (0, 0))


class TestSampleFiber:
    """Draws land in the requested fiber."""

    def test_top_shell_only_gives_complete_graph(self):
        spec = SortedShellSpec((3, 3, 3, 3))
        rng = np.random.default_rng(0)
        for _ in range(20):
            assert sample_fiber(spec, rng) == Graph.complete(4)

    def test_zero_shell_gives_empty_graph(self):
        assert sample_fiber(SortedShellSpec((0, 0, 0)), np.random.default_rng(1)) == Graph.empty(3)

    def test_forest_fiber_reaches_path_and_two_edges(self):
        spec = SortedShellSpec((1, 1, 1, 1))
        rng = np.random.default_rng(2)
        draws = [sample_fiber(spec, rng) for _ in range(300)]
        assert all(shell_distribution(g).counts == (0, 4, 0, 0) for g in draws)
        assert any(is_isomorphic(g, Graph.path(4)) for g in draws)
        assert any(is_isomorphic(g, TWO_EDGES) for g in draws)

    def test_seeded_draws_repeat(self):
        spec = sort_spec(ShellDistribution((0, 2, 1, 4, 0, 0, 0)))
        a = [sample_fiber(spec, np.random.default_rng(99)) for _ in range(3)]
        b = [sample_fiber(spec, np.random.default_rng(99)) for _ in range(3)]
        assert a == b

    def test_every_draw_verifies(self):
        spec = sort_spec(ShellDistribution((0, 2, 1, 4, 0, 0, 0)))
        rng = np.random.default_rng(5)
        for _ in range(500):
            assert verify_sample(sample_fiber(spec, rng), spec)

    def test_larger_distribution(self):
        d = ShellDistribution((3, 5, 4, 0, 8) + (0,) * 15)
        g = sample_labeled(d, np.random.default_rng(8))
        assert shell_distribution(g) == d

    def test_labeled_sampler_keeps_distribution(self):
        d = ShellDistribution((1, 2, 0, 4, 0, 0, 0))
        rng = np.random.default_rng(4)
        for _ in range(50):
            assert shell_distribution(sample_labeled(d, rng)) == d


class TestRandomRelabel:
    """Relabeling preserves structure."""

    def test_complete_graph_fixed(self):
        assert random_relabel(Graph.complete(4), np.random.default_rng(0)) == Graph.complete(4)

    def test_path_relabelings_cover_all_labeled_paths(self):
        rng = np.random.default_rng(6)
        seen = {random_relabel(Graph.path(4), rng) for _ in range(2000)}
        assert len(seen) == 12
        assert all(is_isomorphic(g, Graph.path(4)) for g in seen)

    def test_degrees_preserved(self):
        g = Graph(6, frozenset({(0, 1), (1, 2), (2, 0), (3, 4)}))
        h = random_relabel(g, np.random.default_rng(3))
        assert sorted(h.degrees()) == sorted(g.degrees())
        assert shell_distribution(h) == shell_distribution(g)


class TestCheckConditions:
    """Construction-order conditions on labeled graphs."""

    def test_complete_graph(self):
        assert check_conditions(Graph.complete(4), (3, 3, 3, 3))

    def test_two_disjoint_edges(self):
        assert check_conditions(TWO_EDGES, (1, 1, 1, 1))
        assert not check_conditions(TWO_EDGES, (2, 2, 2, 2))

    def test_too_many_later_neighbours(self):
        assert not check_conditions(Graph.star(4), (1, 1, 1, 1))

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            check_conditions(Graph.path(3), (1, 1))

    def test_unsorted(self):
        with pytest.raises(ValueError, match="sorted"):
            check_conditions(Graph.path(3), (1, 0, 1))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_every_class_reachable_small(n):
    for d in realizable_distributions(n):
        assert_fiber_covered(d, max_runs=5000, seed=n)


@pytest.mark.slow
def test_every_class_reachable_five_vertices():
    for d in realizable_distributions(5):
        assert_fiber_covered(d, max_runs=50000, seed=5)


def random_realizable_distribution(rng: np.random.Generator) -> ShellDistribution:
    n = int(rng.integers(2, 11))
    return shell_distribution(erdos_renyi(n, float(rng.uniform(0.05, 0.95)), rng))


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(50))
def test_sampler_output_always_matches_distribution(seed):
    """50 random distributions on up to 10 vertices, 200 draws each."""
    rng = np.random.default_rng(seed)
    d = random_realizable_distribution(rng)
    spec = sort_spec(d)
    for _ in range(200):
        g = sample_fiber(spec, rng)
        assert shell_distribution(g) == d
        assert shell_distribution(random_relabel(g, rng)) == d


@pytest.mark.slow
def test_runtime_grows_at_most_quadratically():
    rng = np.random.default_rng(0)
    timings = []
    for n in (100, 200, 400):
        counts = [0] * n
        counts[0], counts[2], counts[5], counts[9] = n // 4, n // 4, n // 4, n - 3 * (n // 4)
        spec = sort_spec(ShellDistribution(tuple(counts)))
        start = time.perf_counter()
        for _ in range(5):
            sample_fiber(spec, rng)
        timings.append(time.perf_counter() - start)
    assert timings[1] <= 5 * timings[0]
    assert timings[2] <= 5 * timings[1]
