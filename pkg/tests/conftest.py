"""Shared fixtures: the small graphs and building sets used across the suite."""

import pytest

from graphwidth.core.building_set import BuildingSet
from graphwidth.core.graph import Graph
from graphwidth.models import ConfigModel


@pytest.fixture
def k2() -> Graph:
    return Graph.from_edges(2, [(1, 2)])


@pytest.fixture
def path3() -> Graph:
    return Graph.from_edges(3, [(1, 2), (2, 3)])


@pytest.fixture
def triangle() -> Graph:
    return Graph.from_edges(3, [(1, 2), (2, 3), (1, 3)])


@pytest.fixture
def star4() -> Graph:
    """K_{1,3} with center 1."""
    return Graph.from_edges(4, [(1, 2), (1, 3), (1, 4)])


@pytest.fixture
def cycle4() -> Graph:
    return Graph.from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4)])


@pytest.fixture
def counterexample() -> BuildingSet:
    """Building set whose nestohedron is thinner than min k_i - 1 suggests."""
    return BuildingSet.from_members(4, [[1], [2], [3], [4], [1, 2], [3, 4], [1, 2, 3, 4]])


@pytest.fixture
def no_geometry() -> ConfigModel:
    return ConfigModel(geometry=False)


@pytest.fixture(autouse=True)
def isolated_config(monkeypatch):
    monkeypatch.delenv("GRAPHWIDTH_CONFIG", raising=False)
