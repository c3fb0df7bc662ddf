"""Gromov width of toric manifolds built from graph associahedra and nestohedra."""

__version__ = "1.0.0"

TOOL_NAME = "graphwidth"
