"""Adjacency labeling schemes, induced-universal graphs, and exact counting
certificates for non-representable graph collections."""

__version__ = "0.1.0"

from .core import (
    BipartiteGraph,
    CanonicalCode,
    Graph,
    SplitMix64,
    canonical_form,
    enumerate_graphs,
    induced_subgraph,
    make_graph,
    parse,
    prng_next,
    sample_bipartite,
    serialize,
)
from .errors import CapExceeded, GraphError, SchemeError

__all__ = [
    "BipartiteGraph",
    "CanonicalCode",
    "CapExceeded",
    "Graph",
    "GraphError",
    "SchemeError",
    "SplitMix64",
    "canonical_form",
    "enumerate_graphs",
    "induced_subgraph",
    "make_graph",
    "parse",
    "prng_next",
    "sample_bipartite",
    "serialize",
]
