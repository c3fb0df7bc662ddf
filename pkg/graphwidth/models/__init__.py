"""Data models for configuration, requests and reports."""

from graphwidth.models.width_models import (
    COMMANDS,
    BuildingSetModel,
    ConfigModel,
    GraphModel,
    ReportModel,
    RequestModel,
    RequestOptions,
)
