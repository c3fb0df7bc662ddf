"""The graph families with closed-form widths: complete, path, cycle and star graphs."""

from typing import Optional

import networkx as nx

from graphwidth.core.errors import InputError, ResourceLimitError
from graphwidth.core.graph import Graph
from graphwidth.models import ConfigModel

FAMILIES = ("complete", "path", "cycle", "star")

MIN_SIZE = {"complete": 1, "path": 1, "cycle": 3, "star": 1}

DEFAULT_CONFIG = ConfigModel()


def generate_family(kind: str, size: int, config: Optional[ConfigModel] = None) -> Graph:
    """The named graph on [size]; the star's center is vertex 1 and the cycle closes 1-size.

    Raises:
        InputError: If the kind is unknown or the size too small for it
        ResourceLimitError: If the size exceeds ``config.max_count``
    """
    config = config or DEFAULT_CONFIG
    if kind not in FAMILIES:
        raise InputError(f"Unknown family {kind!r}, expected one of {', '.join(FAMILIES)}")
    if size < MIN_SIZE[kind]:
        raise InputError(f"A {kind} graph needs at least {MIN_SIZE[kind]} vertices, got {size}")
    if size > config.max_count:
        raise ResourceLimitError(f"Family graphs are capped at {config.max_count} vertices, requested {size}")
    if kind == "complete":
        graph = nx.complete_graph(size)
    elif kind == "path":
        graph = nx.path_graph(size)
    elif kind == "cycle":
        graph = nx.cycle_graph(size)
    else:
        graph = nx.star_graph(size - 1)
    return Graph.from_networkx(graph)[0]


def expected_width(kind: str, size: int) -> int:
    """Closed-form width of the family member on ``size = n + 1`` vertices."""
    n = size - 1
    if n == 0:
        return 0
    if kind == "complete":
        return 2 ** n - 1
    if kind == "path":
        return n
    if kind == "cycle":
        return n * (n + 1) // 2
    if kind == "star":
        return 2 ** (n - 1)
    raise InputError(f"Unknown family {kind!r}, expected one of {', '.join(FAMILIES)}")
