"""Shell-distribution exponential random graph model.

``P(G = g) = exp(<n*_S(g), theta> - psi(theta))`` where ``n*_S`` is the
truncated shell distribution. The log-partition ``psi`` is computed exactly
for small ``n`` from the enumerated statistic histogram.
"""

from __future__ import annotations

import logging
import math
from typing import Dict, Sequence, Tuple

import numpy as np
from scipy.special import logsumexp

from shellergm.domain.graph import Graph
from shellergm.domain.params import ModelParams, SmoothingAlpha
from shellergm.errors import EnumerationCapError, EstimatorError
from shellergm.metrics.cores import shell_distribution
from shellergm.sampling.enumeration import ENUMERATION_HARD_CAP, statistic_histogram

logger = logging.getLogger(__name__)

DEFAULT_PARTITION_MAX_N = 6

TruncatedStatistic = Tuple[int, ...]


def statistic_log_weight(params: ModelParams, statistic: Sequence[int]) -> float:
    """``sum_j n_j * theta_j`` over a truncated statistic."""
    if len(statistic) != len(params.theta):
        raise ValueError(
            f"statistic has {len(statistic)} entries, parameters have {len(params.theta)}"
        )
    return math.fsum(count * theta for count, theta in zip(statistic, params.theta))


def unnormalized_log_prob(params: ModelParams, g: Graph) -> float:
    """Log of the unnormalized model weight of ``g``.

    Raises:
        ValueError: If ``g`` does not have ``params.n`` vertices
    """
    if g.n != params.n:
        raise ValueError(f"graph has {g.n} vertices, model expects n={params.n}")
    return statistic_log_weight(params, shell_distribution(g).truncated())


def _check_partition_cap(n: int, max_n: int) -> None:
    if max_n > ENUMERATION_HARD_CAP:
        raise EnumerationCapError(
            f"partition cap can be raised to at most {ENUMERATION_HARD_CAP}, got {max_n}"
        )
    if n > max_n:
        raise EnumerationCapError(
            f"exact partition function is limited to n <= {max_n}, got n={n}"
        )


def _weights(params: ModelParams, max_n: int) -> Tuple[list, np.ndarray, np.ndarray]:
    _check_partition_cap(params.n, max_n)
    histogram = statistic_histogram(params.n)
    keys = list(histogram)
    exponents = np.array([statistic_log_weight(params, key) for key in keys])
    multiplicities = np.array([histogram[key] for key in keys], dtype=float)
    return keys, exponents, multiplicities


def exact_log_partition(params: ModelParams, max_n: int = DEFAULT_PARTITION_MAX_N) -> float:
    """``psi(theta)`` by summing over every labeled graph on ``params.n`` vertices.

    Raises:
        EnumerationCapError: If ``params.n`` exceeds ``max_n``
    """
    _, exponents, multiplicities = _weights(params, max_n)
    return float(logsumexp(exponents, b=multiplicities))


def log_prob(params: ModelParams, g: Graph, max_n: int = DEFAULT_PARTITION_MAX_N) -> float:
    return unnormalized_log_prob(params, g) - exact_log_partition(params, max_n)


def exact_distribution(
    params: ModelParams, max_n: int = DEFAULT_PARTITION_MAX_N
) -> Dict[TruncatedStatistic, float]:
    """Exact law of the truncated shell distribution under ``params``."""
    keys, exponents, multiplicities = _weights(params, max_n)
    psi = logsumexp(exponents, b=multiplicities)
    probabilities = multiplicities * np.exp(exponents - psi)
    return {key: float(p) for key, p in zip(keys, probabilities)}


def smoothed_propensities(g: Graph, alpha: SmoothingAlpha) -> Tuple[float, ...]:
    """``(n_S(g) + alpha) / (n + |alpha|)``."""
    if alpha.n != g.n:
        raise ValueError(f"alpha has {alpha.n} entries for a graph on {g.n} vertices")
    counts = shell_distribution(g).counts
    denominator = g.n + alpha.total
    if denominator == 0:
        raise EstimatorError("cannot estimate parameters for an empty graph with zero alpha")
    return tuple((c + a) / denominator for c, a in zip(counts, alpha.alpha))


def empirical_estimate(g: Graph, alpha: SmoothingAlpha) -> ModelParams:
    """Smoothed plug-in estimate ``theta_i = log(p_i / p_{n-1})``.

    Raises:
        EstimatorError: If a smoothed propensity is zero, which makes theta infinite
    """
    if g.n < 2:
        raise ValueError("the model needs at least 2 vertices")
    p_hat = smoothed_propensities(g, alpha)
    if p_hat[-1] == 0:
        raise EstimatorError(
            f"no vertices in top shell {g.n - 1} and alpha[{g.n - 1}] = 0; "
            "raise alpha for the top shell (e.g. --alpha 0.2)"
        )
    zero = [j for j, p in enumerate(p_hat) if p == 0]
    if zero:
        raise EstimatorError(
            f"shells {zero} are empty and carry zero alpha; theta would be -inf. "
            "Raise alpha for those shells"
        )
    params = ModelParams.from_propensities(p_hat)
    logger.info("Estimated theta from %d-vertex graph with |alpha|=%.3g", g.n, alpha.total)
    return params
