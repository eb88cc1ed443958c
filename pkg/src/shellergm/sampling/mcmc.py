"""Metropolis simulation from the shell-distribution model.

A chain proposes tie-no-tie moves and accepts with
``min(1, exp(<n*_S(g') - n*_S(g), theta>))``, optionally multiplied by the
proposal ratio. Summary statistics of the current state are recorded after
burn-in at the configured thinning.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from shellergm.config.schema import ChainConfig
from shellergm.domain.enums import Correction
from shellergm.domain.graph import Graph, erdos_renyi, num_dyads
from shellergm.domain.params import ModelParams
from shellergm.metrics.cores import shell_distribution
from shellergm.metrics.net_stats import centralities, degree_distribution, triangles
from shellergm.sampling.proposals import ProposalStrategy, TieNoTieProposal

logger = logging.getLogger(__name__)

DEFAULT_CENTRALITY = "freeman_degree"


def generate_seed() -> int:
    """Fresh 64-bit seed from OS entropy."""
    return int(np.random.SeedSequence().generate_state(1, dtype=np.uint64)[0])


def log_acceptance(
    params: ModelParams,
    current: Sequence[int],
    proposed: Sequence[int],
    log_ratio: float,
    correction: Correction,
) -> float:
    """Log acceptance probability from two truncated statistics."""
    log_pi = math.fsum(
        (b - a) * theta for a, b, theta in zip(current, proposed, params.theta)
    )
    if correction == Correction.HASTINGS:
        log_pi += log_ratio
    return min(0.0, log_pi)


def accept_prob(
    params: ModelParams,
    g: Graph,
    g_new: Graph,
    log_ratio: float,
    correction: Correction = Correction.PAPER,
) -> float:
    """Metropolis acceptance probability of moving from ``g`` to ``g_new``.

    Raises:
        ValueError: If either graph does not have ``params.n`` vertices
    """
    if g.n != params.n or g_new.n != params.n:
        raise ValueError(
            f"graphs on {g.n} and {g_new.n} vertices for a model with n={params.n}"
        )
    current = shell_distribution(g).truncated()
    proposed = shell_distribution(g_new).truncated()
    return math.exp(log_acceptance(params, current, proposed, log_ratio, correction))


@dataclass(frozen=True)
class Autocorrelation:
    """Sample autocorrelation at lags ``0 .. max_lag``; ``constant`` flags a flat series."""

    values: np.ndarray
    constant: bool = False


def autocorrelation(series: Sequence[float], max_lag: int) -> Autocorrelation:
    """``r_k = sum_t (x_t - m)(x_{t+k} - m) / sum_t (x_t - m)^2``.

    A constant series has no defined autocorrelation; it is reported as 1 at
    lag 0 and 0 elsewhere with ``constant`` set.

    Raises:
        ValueError: If ``max_lag`` is negative or not below the series length
    """
    x = np.asarray(series, dtype=float)
    if max_lag < 0:
        raise ValueError(f"max_lag must be non-negative, got {max_lag}")
    if len(x) <= max_lag:
        raise ValueError(
            f"series of length {len(x)} is too short for max_lag={max_lag}"
        )

    if np.ptp(x) == 0:
        values = np.zeros(max_lag + 1)
        values[0] = 1.0
        return Autocorrelation(values, constant=True)

    centered = x - x.mean()
    denominator = float(np.dot(centered, centered))
    size = len(x)
    values = np.array(
        [np.dot(centered[: size - k], centered[k:]) / denominator for k in range(max_lag + 1)]
    )
    return Autocorrelation(values)


@dataclass(eq=False)
class ChainTrace:
    """Recorded output of one or more chains.

    Attributes:
        n: Vertex count
        seeds: Seed of every merged chain, in merge order
        steps: Step number of each record (1-based, per chain)
        shell_counts: Full shell distribution per record, shape ``(R, n)``
        degree_counts: Degree histogram per record, shape ``(R, n)``
        edges: Edge count per record
        triangles: Triangle count per record
        centralities: Centralization score per record, by measure name
        accepted: Whether the move made at the recorded step was accepted
        total_steps: Proposals made over all merged chains
        total_accepted: Accepted proposals over all merged chains
        short_moves: Proposals that toggled fewer than ``k`` dyads
        final_graph: State of the last merged chain after its final step
    """

    n: int
    seeds: Tuple[int, ...]
    steps: np.ndarray
    shell_counts: np.ndarray
    degree_counts: np.ndarray
    edges: np.ndarray
    triangles: np.ndarray
    centralities: Dict[str, np.ndarray]
    accepted: np.ndarray
    total_steps: int
    total_accepted: int
    short_moves: int = 0
    final_graph: Optional[Graph] = field(default=None, compare=False)

    @property
    def recorded(self) -> int:
        return int(len(self.steps))

    @property
    def acceptance_rate(self) -> float:
        return self.total_accepted / self.total_steps if self.total_steps else 0.0

    @property
    def centrality(self) -> np.ndarray:
        return self.centralities[DEFAULT_CENTRALITY]

    def truncated_counts(self) -> np.ndarray:
        return self.shell_counts[:, :-1]

    def largest_core_index(self) -> np.ndarray:
        present = self.shell_counts > 0
        return (self.n - 1) - np.argmax(present[:, ::-1], axis=1)

    def largest_shell_size(self) -> np.ndarray:
        return self.shell_counts.max(axis=1)

    def statistic_counts(self) -> Counter:
        return Counter(tuple(int(c) for c in row) for row in self.truncated_counts())

    def statistic_frequencies(self) -> Dict[Tuple[int, ...], float]:
        """Share of records at each truncated shell distribution."""
        counts = self.statistic_counts()
        total = sum(counts.values())
        return {key: counts[key] / total for key in sorted(counts)}

    def modal_distributions(self, top: int = 5) -> List[Tuple[Tuple[int, ...], int]]:
        """Most visited truncated shell distributions, ties broken by the vector."""
        counts = self.statistic_counts()
        ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
        return ranked[:top]

    def series(self) -> Dict[str, np.ndarray]:
        """Every recorded scalar series by name."""
        named: Dict[str, np.ndarray] = {
            "edges": self.edges,
            "triangles": self.triangles,
        }
        for name, values in self.centralities.items():
            named["centrality" if name == DEFAULT_CENTRALITY else f"centrality_{name}"] = values
        for j in range(self.n - 1):
            named[f"n_{j}"] = self.shell_counts[:, j]
        return named

    def autocorrelations(self, max_lag: int = 50) -> Dict[str, Autocorrelation]:
        """Autocorrelation of every recorded series, lag clipped to the record count."""
        if self.recorded < 2:
            return {}
        lag = min(max_lag, self.recorded - 1)
        result = {name: autocorrelation(values, lag) for name, values in self.series().items()}
        constant = [name for name, acf in result.items() if acf.constant]
        if constant:
            logger.warning(
                "Constant series have no autocorrelation: %s", ", ".join(constant)
            )
        return result

    def to_frame(self) -> pd.DataFrame:
        """One row per record: step, n_0..n_{n-2}, edges, triangles, centrality, accepted."""
        columns: Dict[str, np.ndarray] = {"step": self.steps}
        for j in range(self.n - 1):
            columns[f"n_{j}"] = self.shell_counts[:, j]
        columns["edges"] = self.edges
        columns["triangles"] = self.triangles
        for name, values in self.centralities.items():
            columns["centrality" if name == DEFAULT_CENTRALITY else f"centrality_{name}"] = values
        columns["accepted"] = self.accepted
        return pd.DataFrame(columns)

    def summary(self, max_lag: int = 50, top: int = 5) -> Dict[str, object]:
        acfs = self.autocorrelations(max_lag)
        return {
            "n": self.n,
            "seeds": list(self.seeds),
            "recorded": self.recorded,
            "total_steps": self.total_steps,
            "acceptance_rate": self.acceptance_rate,
            "short_moves": self.short_moves,
            "autocorrelation": {name: acf.values.tolist() for name, acf in acfs.items()},
            "constant_series": sorted(name for name, acf in acfs.items() if acf.constant),
            "modal_distributions": [
                {"distribution": list(key), "count": count}
                for key, count in self.modal_distributions(top)
            ],
        }

    @classmethod
    def concatenate(cls, traces: Sequence["ChainTrace"]) -> "ChainTrace":
        """Merge traces in the given order.

        Raises:
            ValueError: If no traces are given or their vertex counts differ
        """
        if not traces:
            raise ValueError("no traces to merge")
        n = traces[0].n
        if any(t.n != n for t in traces):
            raise ValueError("cannot merge traces over different vertex counts")
        names = list(traces[0].centralities)
        return cls(
            n=n,
            seeds=tuple(s for t in traces for s in t.seeds),
            steps=np.concatenate([t.steps for t in traces]),
            shell_counts=np.concatenate([t.shell_counts for t in traces]),
            degree_counts=np.concatenate([t.degree_counts for t in traces]),
            edges=np.concatenate([t.edges for t in traces]),
            triangles=np.concatenate([t.triangles for t in traces]),
            centralities={
                name: np.concatenate([t.centralities[name] for t in traces]) for name in names
            },
            accepted=np.concatenate([t.accepted for t in traces]),
            total_steps=sum(t.total_steps for t in traces),
            total_accepted=sum(t.total_accepted for t in traces),
            short_moves=sum(t.short_moves for t in traces),
            final_graph=traces[-1].final_graph,
        )


def run_chain(
    params: ModelParams,
    init: Graph,
    cfg: ChainConfig,
    proposal: Optional[ProposalStrategy] = None,
    centrality_measures: Sequence[str] = (DEFAULT_CENTRALITY,),
) -> ChainTrace:
    """Run one Metropolis chain from ``init``.

    Args:
        params: Model parameters
        init: Initial state on ``params.n`` vertices
        cfg: Steps, k, burn-in, thinning, seed and acceptance rule
        proposal: Proposal strategy, tie-no-tie with ``cfg.k`` by default
        centrality_measures: Registered centrality measures to record

    Returns:
        The recorded trace; identical inputs and seed give an identical trace

    Raises:
        ValueError: If ``init`` has the wrong size or ``k`` exceeds the dyad count
    """
    n = params.n
    if init.n != n:
        raise ValueError(f"initial graph has {init.n} vertices, model expects n={n}")
    if cfg.k > num_dyads(n):
        raise ValueError(f"k={cfg.k} exceeds the {num_dyads(n)} dyads of a graph on {n} vertices")

    seed = cfg.seed if cfg.seed is not None else generate_seed()
    rng = np.random.default_rng(seed)
    strategy = proposal if proposal is not None else TieNoTieProposal(cfg.k)
    names = list(centrality_measures)
    if DEFAULT_CENTRALITY not in names:
        names.insert(0, DEFAULT_CENTRALITY)

    records = cfg.recorded_steps
    steps = np.zeros(records, dtype=np.int64)
    shell_counts = np.zeros((records, n), dtype=np.int64)
    degree_counts = np.zeros((records, n), dtype=np.int64)
    edge_counts = np.zeros(records, dtype=np.int64)
    triangle_counts = np.zeros(records, dtype=np.int64)
    scores = {name: np.zeros(records, dtype=float) for name in names}
    accepted_flags = np.zeros(records, dtype=bool)

    logger.info(
        "Chain start: n=%d steps=%d k=%d burn_in=%d thin=%d correction=%s seed=%d",
        n, cfg.steps, cfg.k, cfg.burn_in, cfg.thin, cfg.correction, seed,
    )

    current = init
    current_counts = shell_distribution(init).counts
    cached: Optional[Tuple[Tuple[int, ...], int, Dict[str, float]]] = None
    accepted_total = 0
    short_moves = 0
    row = 0

    for step in range(1, cfg.steps + 1):
        move = strategy.propose(current, rng)
        if len(move.toggled) < cfg.k:
            short_moves += 1
        proposed_counts = shell_distribution(move.graph).counts
        log_pi = log_acceptance(
            params, current_counts[:-1], proposed_counts[:-1], move.log_ratio, cfg.correction
        )
        accepted = bool(rng.random() < math.exp(log_pi))
        if accepted:
            current = move.graph
            current_counts = proposed_counts
            accepted_total += 1
            cached = None

        if step > cfg.burn_in and (step - cfg.burn_in) % cfg.thin == 0:
            if cached is None:
                cached = (degree_distribution(current), triangles(current), centralities(current, names))
            degrees, tri, score = cached
            steps[row] = step
            shell_counts[row] = current_counts
            degree_counts[row] = degrees
            edge_counts[row] = current.num_edges
            triangle_counts[row] = tri
            for name in names:
                scores[name][row] = score[name]
            accepted_flags[row] = accepted
            row += 1

    if short_moves:
        logger.warning(
            "%d of %d proposals toggled fewer than k=%d dyads (chosen set too small)",
            short_moves, cfg.steps, cfg.k,
        )
    logger.info(
        "Chain finished: %d records, acceptance rate %.3f",
        records, accepted_total / cfg.steps,
    )

    return ChainTrace(
        n=n,
        seeds=(seed,),
        steps=steps,
        shell_counts=shell_counts,
        degree_counts=degree_counts,
        edges=edge_counts,
        triangles=triangle_counts,
        centralities=scores,
        accepted=accepted_flags,
        total_steps=cfg.steps,
        total_accepted=accepted_total,
        short_moves=short_moves,
        final_graph=current,
    )


def _run_chain_task(task: Tuple[ModelParams, Graph, ChainConfig, Tuple[str, ...]]) -> ChainTrace:
    params, init, cfg, names = task
    return run_chain(params, init, cfg, centrality_measures=names)


def run_chains(
    params: ModelParams,
    init: Graph,
    cfg: ChainConfig,
    seeds: Sequence[int],
    max_workers: Optional[int] = None,
    centrality_measures: Sequence[str] = (DEFAULT_CENTRALITY,),
) -> ChainTrace:
    """Run one chain per seed, in worker processes, merged in seed order."""
    if not seeds:
        raise ValueError("run_chains needs at least one seed")
    names = tuple(centrality_measures)
    tasks = [
        (params, init, ChainConfig(**{**cfg.model_dump(), "seed": int(seed)}), names)
        for seed in seeds
    ]
    if max_workers == 1 or len(tasks) == 1:
        traces = [_run_chain_task(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=max_workers) as pool:
            traces = list(pool.map(_run_chain_task, tasks))
    return ChainTrace.concatenate(traces)


def default_initial_graph(observed: Graph, seed: int) -> Graph:
    """Erdos-Renyi draw at the observed density, on a stream independent of the chain's."""
    child = np.random.SeedSequence(seed).spawn(1)[0]
    return erdos_renyi(observed.n, observed.density, np.random.default_rng(child))


def chain_seeds(seed: int, count: int) -> List[int]:
    """``count`` independent 64-bit seeds derived from ``seed``; ``[seed]`` for one chain."""
    if count < 1:
        raise ValueError(f"chain count must be positive, got {count}")
    if count == 1:
        return [int(seed)]
    return [
        int(child.generate_state(1, dtype=np.uint64)[0])
        for child in np.random.SeedSequence(seed).spawn(count)
    ]
