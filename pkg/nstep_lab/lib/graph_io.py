"""
Shared input helpers for CLI commands: graph references, edge-list and
JSON files, and JSON documents from a file, stdin or the command line.
"""
import json
import sys
from pathlib import Path
from typing import Any, Optional

from .errors import GraphError, ParameterError
from ..domains.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    path_graph,
    petersen_graph,
    star_graph,
    validate_graph,
)

NAMED_GRAPHS = ("triangle", "square", "k4", "petersen", "heawood")
PARAMETRIC_GRAPHS = ("cycle:N", "path:N", "star:N", "lps:P:Q", "gt:R")

# Command argument spec shared by every experiment that takes a graph
GRAPH_ARG = {
    "name": "--graph",
    "required": True,
    "help": "Graph name (triangle, square, k4, petersen, heawood, cycle:N, path:N, star:N, lps:P:Q, gt:R) or file",
}


def _int_args(ref: str, parts: list[str], count: int) -> list[int]:
    if len(parts) != count:
        raise ParameterError(f"graph reference {ref!r} needs {count} integer argument(s)")
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise ParameterError(f"graph reference {ref!r} has a non-integer argument") from None


def named_graph(ref: str) -> Optional[Graph]:
    """Resolve a built-in graph name, or None if ref is not one."""
    # Imported lazily: special depends on graph, and so does this module
    from ..domains.special import generalized_triangle, lps_graph

    head, *rest = ref.strip().lower().split(":")
    if head == "triangle" and not rest:
        return cycle_graph(3)
    if head == "square" and not rest:
        return cycle_graph(4)
    if head == "petersen" and not rest:
        return petersen_graph()
    if head == "heawood" and not rest:
        return generalized_triangle(2)[0]
    if head.startswith("k") and head[1:].isdigit() and not rest:
        return complete_graph(int(head[1:]))
    if head == "cycle":
        return cycle_graph(*_int_args(ref, rest, 1))
    if head == "path":
        return path_graph(*_int_args(ref, rest, 1))
    if head == "star":
        return star_graph(*_int_args(ref, rest, 1))
    if head == "gt":
        return generalized_triangle(*_int_args(ref, rest, 1))[0]
    if head == "lps":
        return lps_graph(*_int_args(ref, rest, 2))[0]
    return None


def parse_edge_list(text: str, name: str = "") -> Graph:
    """
    Parse `u v [length]` lines; blank lines and `#` comments are skipped.

    Raises:
        GraphError: On malformed lines or an invalid graph
    """
    edges, lengths = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) not in (2, 3):
            raise GraphError(f"line {lineno}: expected 'u v [length]', got {raw!r}")
        try:
            edges.append((int(fields[0]), int(fields[1])))
            lengths.append(float(fields[2]) if len(fields) == 3 else 1.0)
        except ValueError:
            raise GraphError(f"line {lineno}: non-numeric field in {raw!r}") from None
    return validate_graph(edges, edge_lengths=lengths, name=name)


def graph_from_dict(data: dict, name: str = "") -> Graph:
    """Build a Graph from `{"n": int, "edges": [[u, v], ...], "lengths": [...]}`."""
    if not isinstance(data, dict) or "edges" not in data:
        raise GraphError("graph JSON must be an object with an 'edges' list")
    return validate_graph(
        data["edges"],
        vertex_count=data.get("n"),
        edge_lengths=data.get("lengths"),
        multigraph=bool(data.get("multigraph", False)),
        name=data.get("name", name),
    )


def resolve_graph(ref: Any) -> Graph:
    """
    Resolve a graph reference.

    Accepts a Graph, a JSON graph object, a built-in name (see NAMED_GRAPHS
    and PARAMETRIC_GRAPHS), or a path to an edge-list or JSON file.

    Raises:
        ParameterError: If the reference names nothing
        OSError: If the file cannot be read
    """
    if isinstance(ref, Graph):
        return ref
    if isinstance(ref, dict):
        return graph_from_dict(ref)
    if not isinstance(ref, str):
        raise ParameterError(f"cannot interpret {ref!r} as a graph")

    graph = named_graph(ref)
    if graph is not None:
        return graph

    path = Path(ref)
    if not path.exists():
        raise ParameterError(
            f"unknown graph {ref!r}: not a file and not one of "
            f"{', '.join(NAMED_GRAPHS + PARAMETRIC_GRAPHS)}"
        )
    text = path.read_text()
    if path.suffix == ".json":
        return graph_from_dict(json.loads(text), name=path.stem)
    return parse_edge_list(text, name=path.stem)


def resolve_json_input(value: Optional[str]) -> Any:
    """
    Load a JSON document from a file path, stdin ('-' or piped input), or
    an inline JSON string, in that order of precedence.

    Raises:
        json.JSONDecodeError: If the text is not valid JSON
    """
    if value and value != "-" and Path(value).exists():
        return json.loads(Path(value).read_text())

    if value == "-" or (value is None and not sys.stdin.isatty()):
        return json.loads(sys.stdin.read())

    if value is None:
        raise ParameterError("no JSON input given")
    return json.loads(value)
