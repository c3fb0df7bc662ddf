from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, StrictInt, model_validator

COMMANDS = (
    "width",
    "certify",
    "polytope",
    "delzant",
    "nestohedron",
    "family",
    "monotonicity",
    "nonsqueeze",
    "permutohedron",
)

Command = Literal[
    "width",
    "certify",
    "polytope",
    "delzant",
    "nestohedron",
    "family",
    "monotonicity",
    "nonsqueeze",
    "permutohedron",
]


class ConfigModel(BaseModel):
    max_enum: int = Field(16, gt=0)
    max_count: int = Field(20, gt=0)
    max_dim: int = Field(8, gt=0)
    geometry: bool = True
    seed: int = Field(0, ge=0)
    random_directions: int = Field(1000, gt=0)
    max_combinations: int = Field(500000, gt=0)
    diamond_search_steps: int = Field(24, gt=0)
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"

    model_config = {
        "extra": "forbid",
        "frozen": True,
    }


class GraphModel(BaseModel):
    vertex_count: int = Field(..., ge=1)
    edges: List[Tuple[int, int]] = []


class BuildingSetModel(BaseModel):
    ground_size: int = Field(..., ge=1)
    members: List[List[int]] = []


class RequestOptions(BaseModel):
    geometry: Optional[bool] = None
    max_enum: Optional[int] = Field(None, gt=0)
    max_count: Optional[int] = Field(None, gt=0)
    max_dim: Optional[int] = Field(None, gt=0)
    seed: Optional[int] = Field(None, ge=0)
    output: Optional[str] = None
    format: Literal["json", "text"] = "json"
    timing: bool = False


class RequestModel(BaseModel):
    """One CLI request; exactly one primary input source unless the command needs none."""

    command: Command
    input_path: Optional[str] = None
    family: Optional[str] = None
    graph: Optional[GraphModel] = None
    building_set: Optional[BuildingSetModel] = None
    batch_path: Optional[str] = None
    sub_input_path: Optional[str] = None
    sub_family: Optional[str] = None
    sub_graph: Optional[GraphModel] = None
    embedding: Optional[List[int]] = None
    m: int = Field(0, ge=0)
    c: Optional[List[Union[StrictInt, str]]] = None
    options: RequestOptions = RequestOptions()

    @model_validator(mode="after")
    def check_sources(self) -> "RequestModel":
        sources = [
            s for s in (self.input_path, self.family, self.graph, self.building_set, self.batch_path)
            if s is not None
        ]
        if self.command == "permutohedron":
            if self.c is None:
                raise ValueError("permutohedron requires the vector c")
            if sources:
                raise ValueError("permutohedron takes no graph input")
            return self
        if len(sources) != 1:
            raise ValueError(f"exactly one input source is required, got {len(sources)}")
        if self.command in ("monotonicity", "nonsqueeze"):
            subs = [s for s in (self.sub_input_path, self.sub_family, self.sub_graph) if s is not None]
            if len(subs) != 1:
                raise ValueError(f"{self.command} requires exactly one subgraph source")
        return self


class ReportModel(BaseModel):
    tool: str
    version: str
    command: str
    input: Dict[str, Any]
    results: Any
    results_digest: str
    timing: Optional[Dict[str, float]] = None
