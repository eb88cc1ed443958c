"""Graph statistics: shell decomposition, realizability and summary measures."""

from .cores import shell_decomposition, shell_distribution, shell_sequence
from .net_stats import centrality, summarize, triangles
from .realizability import construct_witness, is_realizable, mle_exists

__all__ = [
    "shell_decomposition",
    "shell_distribution",
    "shell_sequence",
    "centrality",
    "summarize",
    "triangles",
    "construct_witness",
    "is_realizable",
    "mle_exists",
]
