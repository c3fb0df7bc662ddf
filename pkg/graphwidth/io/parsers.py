"""Text formats for graphs, building sets and CLI arguments.

Graph file: first significant line is the vertex count, every further line an
edge ``u v``. Building-set file: first line the ground-set size, every further
line one member as space-separated labels. Blank lines and lines starting with
``#`` are ignored; a batch file holds graph blocks separated by blank lines.
"""

import logging
import re
from fractions import Fraction
from typing import Iterator, List, Sequence, Tuple, Union

from graphwidth.core.building_set import BuildingSet
from graphwidth.core.errors import InputError, StructureError
from graphwidth.core.graph import Graph
from graphwidth.models import BuildingSetModel, GraphModel
from graphwidth.utils.rational import to_fraction

logger = logging.getLogger("graph-width")

TOKEN = re.compile(r"\S+")
FAMILY_SPEC = re.compile(r"^\s*([a-z]+)\s*:\s*(\d+)\s*$")

Token = Tuple[str, int, int]


def _significant_lines(text: str, first_line: int = 1) -> Iterator[Tuple[int, List[Token]]]:
    for number, line in enumerate(text.splitlines(), start=first_line):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield number, [(m.group(), number, m.start() + 1) for m in TOKEN.finditer(line)]


def _integer(token: Token, what: str) -> int:
    text, line, column = token
    try:
        return int(text)
    except ValueError:
        raise InputError(f"Expected an integer {what}, found {text!r}", line, column)


def _header(lines: List[Tuple[int, List[Token]]], what: str, first_line: int = 1) -> int:
    if not lines:
        raise InputError(f"Missing {what} line", first_line, 1)
    number, tokens = lines[0]
    if len(tokens) != 1:
        raise InputError(f"The {what} line must hold a single integer", number, tokens[1][2])
    value = _integer(tokens[0], what)
    if value < 1:
        raise InputError(f"{what.capitalize()} must be positive, got {value}", number, tokens[0][2])
    return value


def parse_graph_text(text: str, first_line: int = 1) -> Graph:
    """Parse an edge-list graph.

    Raises:
        InputError: With line and column of the first offending token
    """
    lines = list(_significant_lines(text, first_line))
    vertex_count = _header(lines, "vertex count", first_line)
    seen = set()
    for number, tokens in lines[1:]:
        if len(tokens) != 2:
            column = tokens[2][2] if len(tokens) > 2 else tokens[-1][2]
            raise InputError(f"Edge line must hold exactly two vertices, found {len(tokens)} tokens", number, column)
        u, v = (_integer(token, "vertex label") for token in tokens)
        for label, token in ((u, tokens[0]), (v, tokens[1])):
            if not (1 <= label <= vertex_count):
                raise InputError(f"Vertex {label} is not in [1..{vertex_count}]", number, token[2])
        if u == v:
            raise InputError(f"Self-loop at vertex {u}", number, tokens[0][2])
        edge = (min(u, v), max(u, v))
        if edge in seen:
            raise InputError(f"Duplicate edge {edge}", number, tokens[0][2])
        seen.add(edge)
    return Graph(vertex_count, frozenset(seen))


def parse_building_set_text(text: str) -> BuildingSet:
    """Parse a building-set file.

    Raises:
        InputError: If a line is malformed
        StructureError: If a member leaves the ground set
    """
    lines = list(_significant_lines(text))
    ground_size = _header(lines, "ground set size")
    members = []
    for number, tokens in lines[1:]:
        labels = []
        for token in tokens:
            label = _integer(token, "element label")
            if not (1 <= label <= ground_size):
                raise StructureError(f"Element {label} is outside [1..{ground_size}]", number, token[2])
            labels.append(label)
        members.append(labels)
    return BuildingSet.from_members(ground_size, members)


def _read(path: str) -> str:
    try:
        with open(path, "r") as f:
            return f.read()
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e.strerror or e}")


def read_graph(path: str) -> Graph:
    graph = parse_graph_text(_read(path))
    logger.debug(f"Read graph with {graph.vertex_count} vertices and {len(graph.edges)} edges from {path}")
    return graph


def read_building_set(path: str) -> BuildingSet:
    building_set = parse_building_set_text(_read(path))
    logger.debug(f"Read building set with {len(building_set)} members from {path}")
    return building_set


def split_blocks(text: str) -> List[Tuple[int, str]]:
    """Split on blank lines, returning each block with its first line number."""
    blocks = []
    current: List[str] = []
    start = 1
    for number, line in enumerate(text.splitlines(), start=1):
        if line.strip():
            if not current:
                start = number
            current.append(line)
        elif current:
            blocks.append((start, "\n".join(current)))
            current = []
    if current:
        blocks.append((start, "\n".join(current)))
    return blocks


def read_batch(path: str) -> List[Tuple[int, str]]:
    blocks = split_blocks(_read(path))
    if not blocks:
        raise InputError(f"Batch file {path} holds no graphs")
    return blocks


def parse_family_spec(spec: str) -> Tuple[str, int]:
    """Split ``KIND:N`` into the family name and its vertex count."""
    match = FAMILY_SPEC.match(spec)
    if not match:
        raise InputError(f"Family spec {spec!r} must look like KIND:N, e.g. path:4")
    return match.group(1), int(match.group(2))


def parse_rationals(text: str) -> List[Fraction]:
    """Parse a comma-separated list of exact rationals such as ``0,1/2,3``."""
    values = []
    for position, item in enumerate(text.split(","), start=1):
        try:
            values.append(to_fraction(item))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"Entry {position} ({item.strip()!r}) is not a rational number")
    return values


def parse_rational_items(items: Sequence[Union[int, str]]) -> List[Fraction]:
    """Flatten integers and comma-separated rational strings into one list."""
    values = []
    for item in items:
        if isinstance(item, str):
            values.extend(parse_rationals(item))
        else:
            values.append(to_fraction(item))
    return values


def parse_embedding(text: str) -> List[int]:
    labels = []
    for position, item in enumerate(text.split(","), start=1):
        try:
            labels.append(int(item))
        except ValueError:
            raise InputError(f"Embedding entry {position} ({item.strip()!r}) is not a vertex label")
    return labels


def graph_from_model(model: GraphModel) -> Graph:
    return Graph.from_edges(model.vertex_count, model.edges)


def building_set_from_model(model: BuildingSetModel) -> BuildingSet:
    return BuildingSet.from_members(model.ground_size, model.members)


def graph_to_model(g: Graph) -> GraphModel:
    return GraphModel(vertex_count=g.vertex_count, edges=g.sorted_edges)


def graph_to_text(g: Graph) -> str:
    """Edge-list text that :func:`parse_graph_text` reads back to ``g``."""
    lines = [str(g.vertex_count)] + [f"{i} {j}" for i, j in g.sorted_edges]
    return "\n".join(lines) + "\n"
