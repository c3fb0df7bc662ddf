"""Report payloads: plain JSON-ready structures with exact rationals as strings."""

import dataclasses
import json
from fractions import Fraction
from typing import Any, Dict, List, Optional

from graphwidth import TOOL_NAME, __version__
from graphwidth.core.building_set import BuildingSet, format_subset
from graphwidth.core.graph import Graph, KVector
from graphwidth.core.polytope import EdgeDescriptor, HalfspaceSystem, Polytope
from graphwidth.models import ReportModel
from graphwidth.utils.digest import results_digest
from graphwidth.utils.rational import render, render_vector

# Python-side names that are keywords or abbreviations in the report
RENAMED_FIELDS = {"lam": "lambda"}


def to_payload(value: Any) -> Any:
    """Convert result objects into dicts, lists, ints, bools and strings."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return render(value)
    if isinstance(value, KVector):
        return list(value.values)
    if isinstance(value, Graph):
        return {"vertex_count": value.vertex_count, "edges": [list(e) for e in value.sorted_edges]}
    if isinstance(value, BuildingSet):
        return {"ground_size": value.ground_size, "members": [list(m) for m in value.member_labels()]}
    if dataclasses.is_dataclass(value):
        payload = {
            RENAMED_FIELDS.get(field.name, field.name): to_payload(getattr(value, field.name))
            for field in dataclasses.fields(value)
        }
        if hasattr(type(value), "passed"):
            payload["passed"] = value.passed
        return payload
    if isinstance(value, dict):
        return {str(k): to_payload(v) for k, v in value.items()}
    if isinstance(value, (frozenset, set)):
        return sorted(to_payload(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [to_payload(v) for v in value]
    raise TypeError(f"Cannot serialize {type(value).__name__}")


def constraint_payload(h: HalfspaceSystem) -> List[Dict[str, Any]]:
    return [
        {
            "label": c.name(),
            "coefficients": list(c.coefficients),
            "sense": c.sense,
            "rhs": render(c.rhs),
        }
        for c in h.constraints
    ]


def polytope_payload(h: HalfspaceSystem, p: Polytope, edge_list: List[EdgeDescriptor]) -> Dict[str, Any]:
    """Dump of constraints, vertices with their facets, and edges, in stable order."""
    return {
        "dimension": p.dimension,
        "constraints": constraint_payload(h),
        "vertices": [
            {
                "point": render_vector(vertex),
                "facets": sorted(
                    (format_subset(h.constraints[c].label) for c in active),
                    key=lambda name: (len(name), name),
                ),
            }
            for vertex, active in zip(p.vertices, p.vertex_facets)
        ],
        "edges": [
            {
                "endpoints": list(edge.endpoints),
                "primitive_direction": list(edge.primitive_direction),
                "affine_length": render(edge.affine_length),
            }
            for edge in edge_list
        ],
    }


def build_report(
    command: str, echo: Dict[str, Any], results: Any, timing: Optional[Dict[str, float]] = None
) -> ReportModel:
    return ReportModel(
        tool=TOOL_NAME,
        version=__version__,
        command=command,
        input=echo,
        results=results,
        results_digest=results_digest(results),
        timing=timing,
    )


def dump_json(report: ReportModel) -> str:
    return json.dumps(report.model_dump(exclude_none=True), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _flatten(prefix: str, value: Any, lines: List[str]) -> None:
    if isinstance(value, dict):
        for key in sorted(value):
            _flatten(f"{prefix}.{key}" if prefix else str(key), value[key], lines)
    elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        for index, item in enumerate(value):
            _flatten(f"{prefix}[{index}]", item, lines)
    else:
        lines.append(f"{prefix}: {json.dumps(value, ensure_ascii=False)}")


def dump_text(report: ReportModel) -> str:
    """One ``dotted.key: value`` line per leaf, sorted like the JSON form."""
    lines: List[str] = []
    _flatten("", report.model_dump(exclude_none=True), lines)
    return "\n".join(lines) + "\n"


def dump_report(report: ReportModel, fmt: str = "json") -> str:
    return dump_text(report) if fmt == "text" else dump_json(report)
