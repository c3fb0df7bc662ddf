"""Core computations: graphs, building sets, polytopes and width certificates."""
