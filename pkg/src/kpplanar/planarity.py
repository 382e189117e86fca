"""Planarity testing and combinatorial embedding extraction for loop-free multigraphs.

Decisions go through the edge-addition planarity library when it is
installed (it is a C extension and roughly 20x faster than the pure Python
route); embeddings always come from networkx' left-right implementation.
Parallel edges never change planarity of a loop-free graph, so both paths
work on the simple reduction.
"""

from __future__ import annotations

import warnings
from typing import Iterable

import networkx as nx

from .graph import Graph, GraphError, RotationSystem

try:  # pragma: no cover - exercised implicitly
    import planarity as _edge_addition
except ImportError:  # pragma: no cover
    _edge_addition = None


class NotPlanar(GraphError):
    """Raised when an embedding is requested for a non-planar graph."""

    def __init__(self, message: str, kuratowski: list[tuple[int, int]] | None = None):
        super().__init__(message)
        self.kuratowski = kuratowski


def is_planar_pairs(pairs: Iterable[tuple[int, int]]) -> bool:
    """Planarity of the graph spanned by ``pairs`` (duplicates and order ignored).

    Isolated vertices do not matter for planarity, so only edges are passed.
    """
    simple = {(u, v) if u < v else (v, u) for u, v in pairs}
    if len(simple) < 9:
        return True  # the smallest non-planar graph (K3,3) has 9 edges
    if _edge_addition is not None:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return bool(_edge_addition.is_planar(list(simple)))
    return nx.check_planarity(nx.Graph(list(simple)))[0]


def is_planar(g: Graph) -> bool:
    """True iff ``g`` embeds in the plane."""
    return is_planar_pairs((u, v) for _, u, v in g.edges)


def euler_reject(edges: Graph | int, n_s: int) -> bool:
    """True when a simple planar graph on ``n_s`` vertices cannot hold that many edges.

    ``edges`` is either an edge count or a graph whose simple edge count is
    used. The bound m <= 3n - 6 only applies for n >= 3; below that nothing
    is rejected.
    """
    m = len(edges.simple_edges()) if isinstance(edges, Graph) else int(edges)
    if n_s < 3:
        return False
    return m > 3 * n_s - 6


def planar_embedding(g: Graph) -> RotationSystem:
    """A planar rotation system for ``g`` (parallel edges included).

    Each parallel edge is placed next to the representative of its bundle so
    that the pair bounds a 2-gon face.
    """
    simple = g.simplified()
    ok, emb = nx.check_planarity(simple.to_networkx())
    if not ok:
        _, cert = nx.check_planarity(simple.to_networkx(), counterexample=True)
        raise NotPlanar(f"graph with {g.n} vertices and {g.m} edges is not planar",
                        kuratowski=sorted(tuple(sorted(e)) for e in cert.edges()))
    rep = {(min(u, v), max(u, v)): eid for eid, u, v in simple.edges}
    rotation: dict[int, list[int]] = {}
    for v in g.vertices:
        if v in emb and emb.degree(v) > 0:
            rotation[v] = [rep[(min(v, w), max(v, w))] for w in emb.neighbors_cw_order(v)]
        else:
            rotation[v] = []
    kept = {eid for eid, _, _ in simple.edges}
    for eid, u, v in g.edges:
        if eid in kept:
            continue
        r = rep[(min(u, v), max(u, v))]
        ru, rv = rotation[u], rotation[v]
        ru.insert(ru.index(r) + 1, eid)
        rv.insert(rv.index(r), eid)
    return RotationSystem({v: tuple(rot) for v, rot in rotation.items()})


def check_embedding(g: Graph, emb: RotationSystem) -> bool:
    """Euler face-count check of a rotation system on ``g``."""
    return emb.is_planar_embedding(g)
