"""shellergm - exponential random graph models on the shell distribution.

k-core decomposition, exact fiber sampling, brute-force enumeration for small
graphs and Metropolis simulation with a goodness-of-fit report.
"""

__version__ = "0.1.0"
__author__ = "shellergm Contributors"

from shellergm.domain.graph import Graph
from shellergm.domain.params import ModelParams, SmoothingAlpha
from shellergm.domain.shells import ShellDistribution, ShellSequence
from shellergm.metrics.cores import shell_decomposition, shell_distribution, shell_sequence

__all__ = [
    "Graph",
    "ModelParams",
    "SmoothingAlpha",
    "ShellDistribution",
    "ShellSequence",
    "shell_decomposition",
    "shell_distribution",
    "shell_sequence",
]
