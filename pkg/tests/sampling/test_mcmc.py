"""Tests for the Metropolis chain, its trace and diagnostics."""

from __future__ import annotations

import math

import numpy as np
import pytest

from shellergm.config.schema import ChainConfig
from shellergm.domain.enums import Correction
from shellergm.domain.graph import Graph
from shellergm.domain.params import ModelParams
from shellergm.model.ergm import exact_distribution
from shellergm.sampling.mcmc import (
    ChainTrace,
    accept_prob,
    autocorrelation,
    chain_seeds,
    default_initial_graph,
    generate_seed,
    log_acceptance,
    run_chain,
    run_chains,
)


def total_variation(empirical, exact) -> float:
    keys = set(empirical) | set(exact)
    return 0.5 * sum(abs(empirical.get(key, 0.0) - exact.get(key, 0.0)) for key in keys)


class TestAcceptance:
    """Acceptance probabilities."""

    def test_zero_theta_always_accepts_symmetric_moves(self):
        params = ModelParams.zeros(4)
        assert accept_prob(params, Graph.path(4), Graph.complete(4), 0.0) == 1.0

    def test_capped_at_one(self):
        params = ModelParams(3, (0.0, 2.0))
        assert log_acceptance(params, (3, 0), (0, 3), 0.0, Correction.PAPER) == 0.0

    def test_downhill_move(self):
        params = ModelParams(3, (1.0, 0.0))
        # (3, 0) -> (1, 2) loses two vertices of shell 0
        assert log_acceptance(params, (3, 0), (1, 2), 0.0, Correction.PAPER) == pytest.approx(-2.0)

    def test_hastings_adds_proposal_ratio(self):
        params = ModelParams(3, (1.0, 0.0))
        paper = log_acceptance(params, (3, 0), (1, 2), math.log(0.5), Correction.PAPER)
        hastings = log_acceptance(params, (3, 0), (1, 2), math.log(0.5), Correction.HASTINGS)
        assert paper == pytest.approx(-2.0)
        assert hastings == pytest.approx(-2.0 + math.log(0.5))

    def test_irreversible_move_never_accepted_under_hastings(self):
        params = ModelParams.zeros(4)
        prob = accept_prob(params, Graph.path(4), Graph.empty(4), -math.inf, Correction.HASTINGS)
        assert prob == 0.0

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            accept_prob(ModelParams.zeros(4), Graph.path(3), Graph.path(4), 0.0)

    def test_shell_swap_uses_propensity_ratio(self):
        # P3 (0, 3) -> one edge (1, 2): one vertex moves from shell 1 to shell 0
        params = ModelParams.from_propensities((0.1, 0.4, 1.0))
        single_edge = Graph(3, frozenset({(0, 1)}))
        assert accept_prob(params, Graph.path(3), single_edge, 0.0) == pytest.approx(0.25)
        assert accept_prob(params, single_edge, Graph.path(3), 0.0) == 1.0

    def test_non_decreasing_in_theta_gap(self):
        rng = np.random.default_rng(31)
        for _ in range(20):
            base = rng.normal(0.0, 1.0, size=4)
            i, j = rng.choice(4, size=2, replace=False)
            current = [1, 1, 1, 1]
            proposed = list(current)
            proposed[i] += 1
            proposed[j] -= 1
            previous = -math.inf
            for gap in np.linspace(-5.0, 5.0, 41):
                theta = base.copy()
                theta[i] = theta[j] + gap
                log_pi = log_acceptance(ModelParams(5, tuple(theta)), current, proposed, 0.0, Correction.PAPER)
                assert log_pi >= previous
                previous = log_pi
            assert previous == 0.0


class TestAutocorrelation:
    """Sample autocorrelation."""

    def test_lag_zero_is_one(self):
        acf = autocorrelation(np.random.default_rng(0).random(200), 10)
        assert acf.values[0] == pytest.approx(1.0)
        assert len(acf.values) == 11
        assert not acf.constant

    def test_alternating_series(self):
        series = [1.0, -1.0] * 50
        acf = autocorrelation(series, 2)
        assert acf.values[1] == pytest.approx(-99 / 100)
        assert acf.values[2] == pytest.approx(98 / 100)

    def test_constant_series_flagged(self):
        acf = autocorrelation([3.0] * 20, 5)
        assert acf.constant
        assert acf.values.tolist() == [1.0, 0.0, 0.0, 0.0, 0.0, 0.0]

    def test_lag_bounds(self):
        with pytest.raises(ValueError, match="too short"):
            autocorrelation([1.0, 2.0, 3.0], 3)
        with pytest.raises(ValueError):
            autocorrelation([1.0, 2.0, 3.0], -1)


class TestRunChain:
    """Single chains."""

    def _config(self, **overrides) -> ChainConfig:
        values = {"steps": 400, "k": 2, "burn_in": 100, "thin": 3, "seed": 1234}
        values.update(overrides)
        return ChainConfig(**values)

    def test_record_schedule(self):
        cfg = self._config()
        trace = run_chain(ModelParams.zeros(6), Graph.empty(6), cfg)
        assert trace.recorded == cfg.recorded_steps == 100
        assert trace.steps[0] == 103
        assert trace.steps[-1] == 400
        assert trace.total_steps == 400
        assert trace.seeds == (1234,)

    def test_records_are_consistent(self):
        trace = run_chain(ModelParams.zeros(6), Graph.path(6), self._config())
        assert (trace.shell_counts.sum(axis=1) == 6).all()
        assert (trace.degree_counts.sum(axis=1) == 6).all()
        assert trace.final_graph is not None
        assert 0.0 <= trace.acceptance_rate <= 1.0

    def test_seed_reproduces_trace(self):
        params = ModelParams(5, (0.5, -0.2, 0.1, 0.3))
        a = run_chain(params, Graph.path(5), self._config(correction="hastings"))
        b = run_chain(params, Graph.path(5), self._config(correction="hastings"))
        assert np.array_equal(a.shell_counts, b.shell_counts)
        assert np.array_equal(a.centrality, b.centrality)
        assert a.final_graph == b.final_graph

    def test_top_shell_preference_concentrates_on_complete_graph(self):
        params = ModelParams(5, (-16.0, -12.0, -8.0, -4.0))
        cfg = self._config(steps=6000, k=1, burn_in=3000, thin=1)
        trace = run_chain(params, Graph.empty(5), cfg)
        top, visits = trace.modal_distributions(1)[0]
        assert top == (0, 0, 0, 0)
        assert visits / trace.recorded > 0.95
        assert trace.final_graph == Graph.complete(5)

    def test_uniform_model_accepts_everything_in_paper_mode(self):
        trace = run_chain(ModelParams.zeros(5), Graph.empty(5), self._config())
        assert trace.acceptance_rate == 1.0

    def test_frame_columns(self):
        frame = run_chain(ModelParams.zeros(4), Graph.empty(4), self._config()).to_frame()
        assert list(frame.columns) == [
            "step", "n_0", "n_1", "n_2", "edges", "triangles", "centrality", "accepted",
        ]
        assert len(frame) == 100

    def test_modal_distributions_sorted_by_visits(self):
        trace = run_chain(ModelParams.zeros(5), Graph.empty(5), self._config())
        modes = trace.modal_distributions(3)
        counts = [count for _, count in modes]
        assert counts == sorted(counts, reverse=True)
        assert sum(trace.statistic_counts().values()) == trace.recorded
        assert sum(trace.statistic_frequencies().values()) == pytest.approx(1.0)

    def test_summary(self):
        trace = run_chain(ModelParams.zeros(5), Graph.empty(5), self._config())
        summary = trace.summary(max_lag=5, top=2)
        assert summary["recorded"] == 100
        assert len(summary["autocorrelation"]["edges"]) == 6
        assert len(summary["modal_distributions"]) <= 2

    def test_k_larger_than_dyads(self):
        with pytest.raises(ValueError, match="exceeds"):
            run_chain(ModelParams.zeros(3), Graph.empty(3), self._config(k=4))

    def test_initial_state_size(self):
        with pytest.raises(ValueError, match="initial graph"):
            run_chain(ModelParams.zeros(4), Graph.empty(5), self._config())

    def test_nothing_recorded_inside_burn_in(self):
        trace = run_chain(ModelParams.zeros(4), Graph.empty(4), self._config(steps=50))
        assert trace.recorded == 0
        assert trace.autocorrelations() == {}


class TestRunChains:
    """Independent chains merged in seed order."""

    def test_merge_in_seed_order(self):
        cfg = ChainConfig(steps=200, k=1, burn_in=0, thin=1)
        seeds = chain_seeds(77, 3)
        trace = run_chains(ModelParams.zeros(5), Graph.empty(5), cfg, seeds, max_workers=1)
        assert trace.seeds == tuple(seeds)
        assert trace.recorded == 600
        single = run_chain(ModelParams.zeros(5), Graph.empty(5), cfg.model_copy(update={"seed": seeds[1]}))
        assert np.array_equal(trace.shell_counts[200:400], single.shell_counts)

    def test_worker_processes_match_sequential(self):
        cfg = ChainConfig(steps=150, k=2, burn_in=10, thin=2)
        seeds = chain_seeds(5, 2)
        params = ModelParams(5, (0.1, 0.2, 0.3, 0.4))
        pooled = run_chains(params, Graph.path(5), cfg, seeds, max_workers=2)
        sequential = run_chains(params, Graph.path(5), cfg, seeds, max_workers=1)
        assert np.array_equal(pooled.shell_counts, sequential.shell_counts)
        assert pooled.total_accepted == sequential.total_accepted

    def test_concatenate_rejects_mixed_sizes(self):
        cfg = ChainConfig(steps=20, k=1, burn_in=0, seed=1)
        a = run_chain(ModelParams.zeros(4), Graph.empty(4), cfg)
        b = run_chain(ModelParams.zeros(5), Graph.empty(5), cfg)
        with pytest.raises(ValueError):
            ChainTrace.concatenate([a, b])
        with pytest.raises(ValueError):
            ChainTrace.concatenate([])

    def test_no_seeds(self):
        with pytest.raises(ValueError):
            run_chains(ModelParams.zeros(4), Graph.empty(4), ChainConfig(), [])


class TestSeeds:
    """Seed derivation."""

    def test_single_chain_keeps_seed(self):
        assert chain_seeds(42, 1) == [42]

    def test_derived_seeds_are_distinct_and_stable(self):
        seeds = chain_seeds(42, 4)
        assert len(set(seeds)) == 4
        assert seeds == chain_seeds(42, 4)
        with pytest.raises(ValueError):
            chain_seeds(42, 0)

    def test_generated_seed_is_64_bit(self):
        assert 0 <= generate_seed() < 2**64

    def test_default_initial_graph(self):
        observed = Graph.cycle(8)
        a = default_initial_graph(observed, 3)
        assert a.n == 8
        assert a == default_initial_graph(observed, 3)


def test_chain_matches_exact_law_small():
    params = ModelParams.zeros(4)
    cfg = ChainConfig(steps=40000, k=1, burn_in=1000, thin=1, seed=2024, correction="hastings")
    trace = run_chain(params, Graph.empty(4), cfg)
    assert total_variation(trace.statistic_frequencies(), exact_distribution(params)) < 0.05


@pytest.mark.slow
@pytest.mark.parametrize("seed", [11, 12, 13])
def test_chain_matches_exact_law(seed):
    rng = np.random.default_rng(seed)
    params = ModelParams(4, tuple(rng.normal(0.0, 0.5, size=3)))
    cfg = ChainConfig(
        steps=1_000_000, k=1, burn_in=10_000, thin=1, seed=seed, correction="hastings"
    )
    trace = run_chain(params, Graph.empty(4), cfg)
    assert total_variation(trace.statistic_frequencies(), exact_distribution(params)) < 0.02
