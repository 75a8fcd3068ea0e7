"""Spectral analysis of random (d,k)-regular hypergraphs through their bipartite incidence graphs."""

from .errors import HyperspecError
from .hypergraph import (
    BipartiteGraph,
    Hypergraph,
    adjacency_matrix,
    build_hypergraph,
    complete_hypergraph,
    cycle_graph,
    from_bipartite,
    incidence_matrix,
    to_bipartite,
)
from .sampler import SampleConfig, sample_bipartite_biregular, sample_hypergraph, sample_regular_hypergraph
from .spectra import GapReport, adjacency_gap, adjacency_spectrum

__all__ = [
    "BipartiteGraph",
    "GapReport",
    "Hypergraph",
    "HyperspecError",
    "SampleConfig",
    "adjacency_gap",
    "adjacency_matrix",
    "adjacency_spectrum",
    "build_hypergraph",
    "complete_hypergraph",
    "cycle_graph",
    "from_bipartite",
    "incidence_matrix",
    "sample_bipartite_biregular",
    "sample_hypergraph",
    "sample_regular_hypergraph",
    "to_bipartite",
]
__version__ = "0.1.0"
