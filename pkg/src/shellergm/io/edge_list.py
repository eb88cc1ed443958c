"""Edge-list and JSON adapters for :class:`~shellergm.domain.graph.Graph`.

Edge-list format::

    # comment lines start with '#'
    n=4          # optional vertex count header, declares trailing isolated vertices
    0 1
    1 2

Labels are 0-indexed integers unless ``string_labels`` is requested, in which
case tokens are mapped to dense integers in first-seen order and the original
names are kept in :attr:`Graph.labels`.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from shellergm.domain.graph import Graph
from shellergm.errors import EdgeListParseError

_HEADER = re.compile(r"^n\s*=\s*(\S+)$", re.IGNORECASE)

TextSource = Union[str, bytes]


def parse_edge_list(text: TextSource, *, string_labels: bool = False) -> Graph:
    """Parse edge-list text into a graph.

    Duplicate lines (in either orientation) collapse into one edge.

    Args:
        text: Edge-list content, ``str`` or UTF-8 ``bytes``
        string_labels: Map arbitrary tokens to dense integer labels

    Returns:
        The parsed graph

    Raises:
        EdgeListParseError: On self-loops, malformed lines, non-integer labels
            (integer mode) or a header smaller than the labels used
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise EdgeListParseError(f"input is not valid UTF-8: {exc}") from exc

    declared_n: Optional[int] = None
    edges: set = set()
    names: Dict[str, int] = {}
    max_label = -1

    for line_number, raw_line in enumerate(text.splitlines(), 1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue

        header = _HEADER.match(line)
        if header:
            if declared_n is not None:
                raise EdgeListParseError("duplicate vertex count header", line_number)
            declared_n = _parse_count(header.group(1), line_number)
            continue

        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListParseError(
                f"expected two vertex labels, found {len(tokens)}: '{line}'",
                line_number,
            )

        if string_labels:
            u, v = (names.setdefault(token, len(names)) for token in tokens)
        else:
            u, v = (_parse_label(token, line_number) for token in tokens)

        if u == v:
            raise EdgeListParseError(f"self-loop on vertex '{tokens[0]}'", line_number)

        edges.add((min(u, v), max(u, v)))
        max_label = max(max_label, u, v)

    used = len(names) if string_labels else max_label + 1
    if declared_n is None:
        n = used
    elif declared_n < used:
        raise EdgeListParseError(
            f"header declares n={declared_n} but labels require at least {used} vertices"
        )
    else:
        n = declared_n

    labels: Optional[Tuple[str, ...]] = None
    if string_labels:
        ordered = sorted(names, key=names.get)
        labels = tuple(ordered + [str(i) for i in range(len(ordered), n)])

    return Graph(n, frozenset(edges), labels)


def from_edge_list(text: TextSource, *, string_labels: bool = False) -> Graph:
    """Alias of :func:`parse_edge_list`."""
    return parse_edge_list(text, string_labels=string_labels)


def read_edge_list(path: Path, *, string_labels: bool = False) -> Graph:
    """Read an edge-list file.

    Raises:
        FileNotFoundError: If the file doesn't exist
        EdgeListParseError: If the content is malformed
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Graph file not found: {path}")
    return parse_edge_list(path.read_bytes(), string_labels=string_labels)


def to_edge_list(g: Graph) -> str:
    """Serialize a graph as edge-list text with an explicit ``n=`` header."""
    lines: List[str] = [f"n={g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, path: Path) -> None:
    Path(path).write_text(to_edge_list(g), encoding="utf-8")


def graph_to_json(g: Graph) -> str:
    return json.dumps(g.to_dict(), sort_keys=True)


def graph_from_json(document: str) -> Graph:
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid graph JSON: {exc}") from exc
    return Graph.from_dict(data)


def _parse_label(token: str, line_number: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise EdgeListParseError(f"non-integer vertex label '{token}'", line_number) from None
    if value < 0:
        raise EdgeListParseError(f"negative vertex label {value}", line_number)
    return value


def _parse_count(token: str, line_number: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise EdgeListParseError(f"invalid vertex count '{token}'", line_number) from None
    if value < 0:
        raise EdgeListParseError(f"negative vertex count {value}", line_number)
    return value
