"""Command-line front end: request assembly, dispatch and report emission."""

import argparse
import asyncio
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from graphwidth import TOOL_NAME, __version__
from graphwidth.core.building_set import BuildingSet, from_graph
from graphwidth.core.config import apply_overrides, load_config
from graphwidth.core.errors import GraphWidthError, InputError, InternalInconsistencyError
from graphwidth.core.graph import Graph
from graphwidth.core.polytope import edges, nestohedron
from graphwidth.core.width import (
    certify,
    geometry_verdicts,
    gromov_width,
    nestohedron_bounds,
    nonsqueezing_report,
    permutohedron_width,
    subgraph_monotonicity,
)
from graphwidth.io.families import expected_width, generate_family
from graphwidth.io.parsers import (
    building_set_from_model,
    graph_from_model,
    parse_embedding,
    parse_family_spec,
    parse_graph_text,
    parse_rational_items,
    read_batch,
    read_building_set,
    read_graph,
)
from graphwidth.io.report import build_report, dump_report, polytope_payload, to_payload
from graphwidth.models import COMMANDS, ConfigModel, ReportModel, RequestModel, RequestOptions
from graphwidth.utils.timing import PhaseTimer

logger = logging.getLogger("graph-width")

# commands that take one graph and can therefore run over a batch file
GRAPH_COMMANDS = ("width", "certify", "polytope", "delzant")


class InputLoader:
    """Resolves the input sources of a request into graphs and building sets."""

    @staticmethod
    def graph(request: RequestModel, config: ConfigModel) -> Graph:
        if request.input_path is not None:
            return read_graph(request.input_path)
        if request.family is not None:
            return generate_family(*parse_family_spec(request.family), config)
        if request.graph is not None:
            return graph_from_model(request.graph)
        raise InputError(f"Command {request.command} needs a graph input")

    @staticmethod
    def subgraph(request: RequestModel, config: ConfigModel) -> Graph:
        if request.sub_input_path is not None:
            return read_graph(request.sub_input_path)
        if request.sub_family is not None:
            return generate_family(*parse_family_spec(request.sub_family), config)
        if request.sub_graph is not None:
            return graph_from_model(request.sub_graph)
        raise InputError(f"Command {request.command} needs a subgraph input")

    @staticmethod
    def building_set(request: RequestModel, config: ConfigModel) -> BuildingSet:
        """A building-set file or document, or B(G) of a family or graph document."""
        if request.input_path is not None:
            return read_building_set(request.input_path)
        if request.building_set is not None:
            return building_set_from_model(request.building_set)
        return from_graph(InputLoader.graph(request, config), config)


class CommandDispatcher:
    """Runs one command and returns its results payload."""

    def __init__(self, config: ConfigModel):
        self.config = config
        self.handlers: Dict[str, Callable[[RequestModel, Dict[str, Any]], Any]] = {
            "width": self.width,
            "certify": self.certify,
            "polytope": self.polytope,
            "delzant": self.delzant,
            "nestohedron": self.nestohedron,
            "family": self.family,
            "monotonicity": self.monotonicity,
            "nonsqueeze": self.nonsqueeze,
            "permutohedron": self.permutohedron,
        }

    def dispatch(self, request: RequestModel, echo: Dict[str, Any]) -> Any:
        logger.info(f"Running {request.command}")
        return self.handlers[request.command](request, echo)

    def _graph(self, request: RequestModel, echo: Dict[str, Any]) -> Graph:
        g = InputLoader.graph(request, self.config)
        echo["graph"] = to_payload(g)
        return g

    def run_on_graph(self, command: str, g: Graph) -> Any:
        if command == "width":
            return to_payload(gromov_width(g, self.config))
        if command == "certify":
            return to_payload(certify(g, self.config))
        b = from_graph(g, self.config)
        if command == "polytope":
            h, p = nestohedron(b, self.config)
            return {
                "building_set_size": len(b),
                "polytope": polytope_payload(h, p, edges(p)),
            }
        verdicts = geometry_verdicts(b, self.config)
        if not verdicts.passed:
            raise InternalInconsistencyError(f"Graph associahedron fails the polytope checks: {verdicts}")
        return to_payload(verdicts)

    def width(self, request: RequestModel, echo: Dict[str, Any]) -> Any:
        return self.run_on_graph("width", self._graph(request, echo))

    def certify(self, request: RequestModel, echo: Dict[str, Any]) -> Any:
        return self.run_on_graph("certify", self._graph(request, echo))

    def polytope(self, request: RequestModel, echo: Dict[str, Any]) -> Any:
        return self.run_on_graph("polytope", self._graph(request, echo))

    def delzant(self, request: RequestModel, echo: Dict[str, Any]) -> Any:
        return self.run_on_graph("delzant", self._graph(request, echo))

    def nestohedron(self, request: RequestModel, echo: Dict[str, Any]) -> Any:
        b = InputLoader.building_set(request, self.config)
        echo["building_set"] = to_payload(b)
        return to_payload(nestohedron_bounds(b, self.config))

    def family(self, request: RequestModel, echo: Dict[str, Any]) -> Any:
        """Widths of a family for every size up to N against the closed form."""
        if request.family is None:
            raise InputError("The family command needs --family KIND:N")
        kind, size = parse_family_spec(request.family)
        generate_family(kind, size, self.config)
        rows = []
        for current in range(1, size + 1):
            try:
                g = generate_family(kind, current, self.config)
            except InputError:
                continue
            width = gromov_width(g, self.config).width
            expected = expected_width(kind, current)
            if width != expected:
                raise InternalInconsistencyError(f"{kind}:{current} has width {width}, closed form gives {expected}")
            rows.append({"size": current, "width": width, "expected": expected, "matches": True})
        return {"kind": kind, "rows": rows}

    def monotonicity(self, request: RequestModel, echo: Dict[str, Any]) -> Any:
        g = self._graph(request, echo)
        h = InputLoader.subgraph(request, self.config)
        echo["subgraph"] = to_payload(h)
        return to_payload(subgraph_monotonicity(g, h, request.embedding, self.config))

    def nonsqueeze(self, request: RequestModel, echo: Dict[str, Any]) -> Any:
        g = self._graph(request, echo)
        h = InputLoader.subgraph(request, self.config)
        echo["subgraph"] = to_payload(h)
        return to_payload(nonsqueezing_report(g, h, request.m, request.embedding, self.config))

    def permutohedron(self, request: RequestModel, echo: Dict[str, Any]) -> Any:
        return to_payload(permutohedron_width(parse_rational_items(request.c), self.config))


class BatchRunner:
    """Runs a graph command over every block of a batch file, concurrently and in order."""

    def __init__(self, dispatcher: CommandDispatcher):
        self.dispatcher = dispatcher

    def _run_block(self, command: str, first_line: int, text: str) -> Any:
        g = parse_graph_text(text, first_line)
        return {"graph": to_payload(g), "results": self.dispatcher.run_on_graph(command, g)}

    async def run(self, command: str, blocks: List[Tuple[int, str]]) -> Tuple[List[Any], int]:
        tasks = [asyncio.to_thread(self._run_block, command, line, text) for line, text in blocks]
        outcomes = await asyncio.gather(*tasks, return_exceptions=True)
        items = []
        exit_code = 0
        for (line, _), outcome in zip(blocks, outcomes):
            if isinstance(outcome, Exception):
                error = _error_payload(outcome)
                logger.warning(f"Batch item starting at line {line} failed: {error['message']}")
                items.append({"first_line": line, "error": error})
                exit_code = max(exit_code, error["exit_code"])
            else:
                items.append({"first_line": line, **outcome})
        return items, exit_code


def _error_payload(error: Exception) -> Dict[str, Any]:
    if isinstance(error, GraphWidthError):
        return error.to_dict()
    return {"type": type(error).__name__, "message": str(error), "exit_code": 1}


def _echo(request: RequestModel) -> Dict[str, Any]:
    echo = request.model_dump(
        exclude_none=True, exclude={"options", "graph", "building_set", "sub_graph"}
    )
    if request.command not in ("monotonicity", "nonsqueeze"):
        echo.pop("m", None)
    return echo


def run(request: RequestModel, settings: Optional[ConfigModel] = None) -> Tuple[ReportModel, int]:
    """Execute a request.

    Returns:
        Tuple of (report, process exit status); errors are reported inside
        ``results`` rather than raised
    """
    config = apply_overrides(settings or load_config(), request.options)
    dispatcher = CommandDispatcher(config)
    timer = PhaseTimer()
    echo = _echo(request)
    exit_code = 0
    try:
        with timer.phase("compute"):
            if request.batch_path is not None:
                if request.command not in GRAPH_COMMANDS:
                    raise InputError(f"Batch mode supports {', '.join(GRAPH_COMMANDS)}, not {request.command}")
                blocks = read_batch(request.batch_path)
                results, exit_code = asyncio.run(BatchRunner(dispatcher).run(request.command, blocks))
            else:
                results = dispatcher.dispatch(request, echo)
    except GraphWidthError as e:
        logger.error(f"{type(e).__name__}: {e.message}")
        results = {"error": e.to_dict()}
        exit_code = e.exit_code
    except Exception as e:
        logger.error(f"Unexpected error: {str(e)}", exc_info=True)
        results = {"error": _error_payload(e)}
        exit_code = 1
    timing = timer.summary() if request.options.timing else None
    return build_report(request.command, echo, results, timing), exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=TOOL_NAME,
        description="Gromov width of symplectic toric manifolds from graph associahedra",
    )
    parser.add_argument("command", nargs="?", choices=COMMANDS, help="What to compute")
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {__version__}")
    parser.add_argument("--request", metavar="FILE", help="JSON request document")
    parser.add_argument("--config", metavar="FILE", help="Config file (default: $GRAPHWIDTH_CONFIG)")

    source = parser.add_mutually_exclusive_group()
    source.add_argument("--input", metavar="FILE", help="Graph file, or building-set file for nestohedron")
    source.add_argument("--family", metavar="KIND:N", help="complete, path, cycle or star on N vertices")
    source.add_argument("--batch", metavar="FILE", help="Graph blocks separated by blank lines")

    sub = parser.add_mutually_exclusive_group()
    sub.add_argument("--sub-input", metavar="FILE", help="Subgraph file for monotonicity/nonsqueeze")
    sub.add_argument("--sub-family", metavar="KIND:N", help="Subgraph family for monotonicity/nonsqueeze")
    parser.add_argument("--embedding", metavar="I,J,...", help="Vertex of G for each vertex of H")
    parser.add_argument("--m", type=int, default=0, help="Extra R^2 factors for nonsqueeze")
    parser.add_argument("--c", metavar="C1,C2,...", help="Strictly increasing rationals for permutohedron")

    parser.add_argument("--geometry", choices=("on", "off"), help="Enable vertex enumeration checks")
    parser.add_argument("--max-enum", type=int, help="Vertex cap for materializing B(G)")
    parser.add_argument("--max-count", type=int, help="Vertex cap for counting k_i")
    parser.add_argument("--max-dim", type=int, help="Dimension cap for geometry")
    parser.add_argument("--seed", type=int, help="Seed for random support directions")
    parser.add_argument("--output", metavar="FILE", help="Write the report here instead of stdout")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--timing", action="store_true", help="Add per-phase timing to the report")

    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    verbosity.add_argument("--quiet", action="store_true", help="Log warnings and errors only")
    return parser


def load_request(path: str) -> RequestModel:
    """Read and validate a JSON request document.

    Raises:
        InputError: If the file is unreadable, not JSON or fails validation
    """
    try:
        with open(path, "r") as f:
            data = json.load(f)
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e.strerror or e}")
    except json.JSONDecodeError as e:
        raise InputError(f"Invalid JSON: {e.msg}", e.lineno, e.colno)
    try:
        return RequestModel(**data)
    except ValidationError as e:
        raise InputError(f"Invalid request: {e.errors()[0]['msg']}")
    except TypeError:
        raise InputError("Request document must be a JSON object")


def request_from_args(args: argparse.Namespace) -> RequestModel:
    """Build a request from parsed flags.

    Raises:
        InputError: If the flags do not form a valid request
    """
    if args.request:
        return load_request(args.request)
    if not args.command:
        raise InputError("A command or --request FILE is required")
    options = RequestOptions(
        geometry=None if args.geometry is None else args.geometry == "on",
        max_enum=args.max_enum,
        max_count=args.max_count,
        max_dim=args.max_dim,
        seed=args.seed,
        output=args.output,
        format=args.format,
        timing=args.timing,
    )
    try:
        return RequestModel(
            command=args.command,
            input_path=args.input,
            family=args.family,
            batch_path=args.batch,
            sub_input_path=args.sub_input,
            sub_family=args.sub_family,
            embedding=parse_embedding(args.embedding) if args.embedding else None,
            m=args.m,
            c=[args.c] if args.c is not None else None,
            options=options,
        )
    except ValidationError as e:
        raise InputError(f"Invalid request: {e.errors()[0]['msg']}")


def configure_logging(args: argparse.Namespace, settings: ConfigModel) -> None:
    level = settings.log_level
    if args.verbose:
        level = "DEBUG"
    elif args.quiet:
        level = "WARNING"
    logger.setLevel(level)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse flags, run the request and write the report; returns the exit status."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = load_config(args.config)
        configure_logging(args, settings)
        request = request_from_args(args)
    except GraphWidthError as e:
        logger.error(e.message)
        return e.exit_code
    except (OSError, ValueError) as e:
        # unreadable or invalid config file
        logger.error(f"Error loading config: {str(e)}")
        return InputError.exit_code

    report, exit_code = run(request, settings)
    text = dump_report(report, request.options.format)
    if request.options.output:
        with open(request.options.output, "w") as f:
            f.write(text)
        logger.info(f"Report written to {request.options.output}")
    else:
        sys.stdout.write(text)
    return exit_code
