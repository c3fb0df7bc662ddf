"""Parsers, graph families, report rendering and the command-line front end."""
