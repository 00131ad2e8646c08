"""WLAN-log contact tracing, centrality ranking and SEIR simulation."""

from ._core import (
    ContactConfig,
    ContactGraph,
    SeirParams,
    asymmetric_graph,
    centrality,
    derive_seed,
    ensemble,
    env_overlap_duration,
    hybrid_graph,
    merge_graphs,
    overlap_duration,
    rbo,
    simulate,
    symmetric_graph,
    top_k,
)

__all__ = [
    "ContactConfig",
    "ContactGraph",
    "SeirParams",
    "asymmetric_graph",
    "centrality",
    "derive_seed",
    "ensemble",
    "env_overlap_duration",
    "hybrid_graph",
    "merge_graphs",
    "overlap_duration",
    "rbo",
    "simulate",
    "symmetric_graph",
    "top_k",
]
