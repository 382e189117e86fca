"""Clustered hybrid planarity: (k,p)-planar graphs, their bounds, tests and gadgets."""

from __future__ import annotations

from .graph import Clustering, Graph, GraphError, KpConfiguration
from .planarity import is_planar
from .search import Exhausted, check_fixed_clustering, search_kp

__all__ = [
    "Clustering",
    "Exhausted",
    "Graph",
    "GraphError",
    "KpConfiguration",
    "check_fixed_clustering",
    "is_planar",
    "search_kp",
]
__version__ = "0.1.0"
