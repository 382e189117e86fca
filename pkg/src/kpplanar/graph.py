"""Core graph types: multigraphs, clusterings, (k,p) configurations and embeddings.

All types are immutable after construction. Vertex and edge identifiers are
plain integers that stay stable through every transformation in the package,
so crossing pairs and port assignments can refer to them safely.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping


class GraphError(ValueError):
    """Raised when a graph, clustering or configuration violates its invariants."""


Edge = tuple[int, int, int]  # (edge id, u, v)


@dataclass(frozen=True)
class Graph:
    """Undirected loop-free multigraph with stable vertex and edge ids."""

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...] = ()
    labels: Mapping[int, str] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(sorted(set(self.vertices))))
        object.__setattr__(self, "edges", tuple(sorted(tuple(e) for e in self.edges)))
        vset = set(self.vertices)
        seen: set[int] = set()
        for eid, u, v in self.edges:
            if eid in seen:
                raise GraphError(f"duplicate edge id {eid}")
            seen.add(eid)
            if u not in vset or v not in vset:
                raise GraphError(f"edge {eid} has an unknown endpoint ({u}, {v})")
            if u == v:
                raise GraphError(f"edge {eid} is a self-loop at {u}")
        for v in self.labels:
            if v not in vset:
                raise GraphError(f"label for unknown vertex {v}")

    @classmethod
    def from_pairs(
        cls,
        pairs: Iterable[tuple[int, int]],
        vertices: Iterable[int] | None = None,
        labels: Mapping[int, str] | None = None,
    ) -> Graph:
        """Build a graph numbering edges 0.. in iteration order."""
        pairs = list(pairs)
        vs = set(vertices) if vertices is not None else set()
        for u, v in pairs:
            vs.update((u, v))
        edges = tuple((i, u, v) for i, (u, v) in enumerate(pairs))
        return cls(tuple(vs), edges, dict(labels or {}))

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls.from_pairs(itertools.combinations(range(n), 2), vertices=range(n))

    # -- basic queries ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def _edge_map(self) -> dict[int, tuple[int, int]]:
        return {eid: (u, v) for eid, u, v in self.edges}

    @cached_property
    def _incidence(self) -> dict[int, tuple[int, ...]]:
        inc: dict[int, list[int]] = {v: [] for v in self.vertices}
        for eid, u, v in self.edges:
            inc[u].append(eid)
            inc[v].append(eid)
        return {v: tuple(es) for v, es in inc.items()}

    @cached_property
    def _adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for _, u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(ns) for v, ns in adj.items()}

    @cached_property
    def edge_ids(self) -> frozenset[int]:
        return frozenset(self._edge_map)

    def endpoints(self, eid: int) -> tuple[int, int]:
        try:
            return self._edge_map[eid]
        except KeyError:
            raise GraphError(f"unknown edge id {eid}") from None

    def other_end(self, eid: int, v: int) -> int:
        a, b = self.endpoints(eid)
        if v == a:
            return b
        if v == b:
            return a
        raise GraphError(f"vertex {v} is not an endpoint of edge {eid}")

    def incident(self, v: int) -> tuple[int, ...]:
        self._require(v)
        return self._incidence[v]

    def neighbors(self, v: int) -> frozenset[int]:
        self._require(v)
        return self._adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.incident(v))

    def has_vertex(self, v: int) -> bool:
        return v in self._adjacency

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbors(u)

    def _require(self, v: int) -> None:
        if v not in self._adjacency:
            raise GraphError(f"unknown vertex {v}")

    def simple_edges(self) -> set[tuple[int, int]]:
        """Edge set with parallels collapsed, as sorted vertex pairs."""
        return {(min(u, v), max(u, v)) for _, u, v in self.edges}

    def is_simple(self) -> bool:
        return len(self.simple_edges()) == self.m

    def simplified(self) -> Graph:
        """The simple reduction: one edge per adjacent pair, lowest id kept."""
        kept: dict[tuple[int, int], Edge] = {}
        for eid, u, v in self.edges:
            key = (min(u, v), max(u, v))
            if key not in kept:
                kept[key] = (eid, u, v)
        return Graph(self.vertices, tuple(kept.values()), self.labels)

    def next_vertex_id(self) -> int:
        return max(self.vertices, default=-1) + 1

    def next_edge_id(self) -> int:
        return max(self.edge_ids, default=-1) + 1

    # -- derived graphs --------------------------------------------------

    def induced(self, keep: Iterable[int]) -> Graph:
        keep = set(keep)
        edges = tuple(e for e in self.edges if e[1] in keep and e[2] in keep)
        labels = {v: s for v, s in self.labels.items() if v in keep}
        return Graph(tuple(keep), edges, labels)

    def without_edges(self, eids: Iterable[int]) -> Graph:
        drop = set(eids)
        return Graph(self.vertices, tuple(e for e in self.edges if e[0] not in drop), self.labels)

    def with_edges(self, pairs: Iterable[tuple[int, int]]) -> tuple[Graph, list[int]]:
        """Return a new graph with extra edges and the ids given to them."""
        nxt = self.next_edge_id()
        new: list[Edge] = []
        for u, v in pairs:
            new.append((nxt, u, v))
            nxt += 1
        return Graph(self.vertices, self.edges + tuple(new), self.labels), [e[0] for e in new]

    def to_networkx(self, simple: bool = True):
        import networkx as nx

        if simple:
            g = nx.Graph()
            g.add_nodes_from(self.vertices)
            g.add_edges_from(self.simple_edges())
        else:
            g = nx.MultiGraph()
            g.add_nodes_from(self.vertices)
            for eid, u, v in self.edges:
                g.add_edge(u, v, key=eid)
        return g

    def components(self) -> list[set[int]]:
        seen: set[int] = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self._adjacency[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            comps.append(comp)
        return comps


def short_path_count(g: Graph, u: int, v: int) -> int:
    """Number of u-v paths of length at most 2 (edge plus common neighbours)."""
    if u == v:
        raise GraphError("short_path_count needs two distinct vertices")
    nu, nv = g.neighbors(u), g.neighbors(v)
    return (1 if v in nu else 0) + len(nu & nv)


def max_short_path_count(g: Graph) -> int:
    """Largest short_path_count over all vertex pairs (0 for fewer than 2 vertices)."""
    best = 0
    for u, v in itertools.combinations(g.vertices, 2):
        best = max(best, short_path_count(g, u, v))
    return best


# ---------------------------------------------------------------------------
# Clusterings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Clustering:
    """A partition of the vertex set into parts of size at most ``k``."""

    parts: tuple[frozenset[int], ...]
    k: int

    def __post_init__(self) -> None:
        parts = tuple(sorted((frozenset(p) for p in self.parts), key=lambda s: min(s) if s else -1))
        object.__setattr__(self, "parts", parts)
        if self.k < 1:
            raise GraphError("cluster size bound k must be positive")
        seen: set[int] = set()
        for part in parts:
            if not part:
                raise GraphError("empty cluster")
            if len(part) > self.k:
                raise GraphError(f"cluster {sorted(part)} exceeds size bound k={self.k}")
            if seen & part:
                raise GraphError(f"clusters overlap on {sorted(seen & part)}")
            seen |= part

    @classmethod
    def singletons(cls, g: Graph, k: int = 1) -> Clustering:
        return cls(tuple(frozenset([v]) for v in g.vertices), k)

    @classmethod
    def from_parts(cls, parts: Iterable[Iterable[int]], k: int | None = None) -> Clustering:
        parts = [frozenset(p) for p in parts]
        return cls(tuple(parts), k if k is not None else max((len(p) for p in parts), default=1))

    @cached_property
    def cluster_of(self) -> dict[int, int]:
        return {v: i for i, part in enumerate(self.parts) for v in part}

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.cluster_of)

    def validate(self, g: Graph) -> None:
        missing = set(g.vertices) - self.vertices
        extra = self.vertices - set(g.vertices)
        if missing:
            raise GraphError(f"clustering misses vertices {sorted(missing)}")
        if extra:
            raise GraphError(f"clustering names unknown vertices {sorted(extra)}")

    def same_cluster(self, u: int, v: int) -> bool:
        return self.cluster_of[u] == self.cluster_of[v]

    def inter_edges(self, g: Graph) -> list[Edge]:
        return [e for e in g.edges if not self.same_cluster(e[1], e[2])]

    def singleton_count(self) -> int:
        return sum(1 for p in self.parts if len(p) == 1)

    def restrict(self, keep: Iterable[int]) -> Clustering:
        keep = set(keep)
        parts = [p & keep for p in self.parts]
        return Clustering(tuple(p for p in parts if p), self.k)


def graph_of_clusters(g: Graph, c: Clustering) -> Graph:
    """Contract every cluster to one vertex; the result is simple.

    Vertex ``i`` of the result stands for ``c.parts[i]``.
    """
    c.validate(g)
    pairs = set()
    for _, u, v in g.edges:
        a, b = c.cluster_of[u], c.cluster_of[v]
        if a != b:
            pairs.add((min(a, b), max(a, b)))
    return Graph.from_pairs(sorted(pairs), vertices=range(len(c.parts)))


# ---------------------------------------------------------------------------
# (k,p) configurations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KpConfiguration:
    """Combinatorial content of a (k,p) representation.

    ``ports`` maps each vertex to its port ids, ``boundary[i]`` is the cyclic
    order of all ports of cluster ``clustering.parts[i]`` and ``port_assign``
    maps ``(edge id, endpoint)`` of every inter-cluster edge to a port.
    """

    clustering: Clustering
    p: int
    ports: Mapping[int, tuple[int, ...]]
    boundary: tuple[tuple[int, ...], ...]
    port_assign: Mapping[tuple[int, int], int]

    @cached_property
    def owner(self) -> dict[int, int]:
        return {pid: v for v, pids in self.ports.items() for pid in pids}

    @property
    def k(self) -> int:
        return self.clustering.k

    def port_count(self, cluster_index: int) -> int:
        return len(self.boundary[cluster_index])

    def validate(self, g: Graph) -> None:
        c = self.clustering
        c.validate(g)
        if len(self.boundary) != len(c.parts):
            raise GraphError("one boundary sequence per cluster is required")
        owner: dict[int, int] = {}
        for v, pids in self.ports.items():
            if v not in c.cluster_of:
                raise GraphError(f"ports declared for unknown vertex {v}")
            if len(pids) > self.p:
                raise GraphError(f"vertex {v} has {len(pids)} ports, more than p={self.p}")
            for pid in pids:
                if pid in owner:
                    raise GraphError(f"port {pid} owned twice")
                owner[pid] = v
        for i, (part, seq) in enumerate(zip(c.parts, self.boundary)):
            expected = {pid for v in part for pid in self.ports.get(v, ())}
            if len(seq) != len(set(seq)) or set(seq) != expected:
                raise GraphError(f"boundary of cluster {i} is not a cyclic order of its ports")
        for eid, u, v in g.edges:
            if c.same_cluster(u, v):
                continue
            for x in (u, v):
                if not self.ports.get(x):
                    raise GraphError(f"vertex {x} has an inter-cluster edge but no port")
                pid = self.port_assign.get((eid, x))
                if pid is None:
                    raise GraphError(f"endpoint {x} of edge {eid} has no port")
                if owner.get(pid) != x:
                    raise GraphError(f"edge {eid} uses port {pid} not owned by {x}")

    def restrict_to(self, g: Graph) -> KpConfiguration:
        """Restriction to a subgraph: drop vertices, unused ports and edges."""
        c = self.clustering.restrict(g.vertices)
        used: set[int] = set()
        assign = {}
        for eid, u, v in g.edges:
            if c.same_cluster(u, v):
                continue
            for x in (u, v):
                pid = self.port_assign[(eid, x)]
                assign[(eid, x)] = pid
                used.add(pid)
        ports = {v: tuple(q for q in self.ports.get(v, ()) if q in used) for v in g.vertices}
        ports = {v: q for v, q in ports.items() if q}
        boundary = tuple(tuple(q for q in self._boundary_of(part) if q in used) for part in c.parts)
        return KpConfiguration(c, self.p, ports, boundary, assign)

    def _boundary_of(self, part: frozenset[int]) -> tuple[int, ...]:
        any_v = next(iter(part))
        return self.boundary[self.clustering.cluster_of[any_v]]


def singleton_configuration(g: Graph, p: int = 1, k: int = 1) -> KpConfiguration:
    """All-singleton configuration with one port per vertex (port id = vertex id)."""
    c = Clustering.singletons(g, k)
    ports = {v: (v,) for v in g.vertices}
    boundary = tuple((next(iter(part)),) for part in c.parts)
    assign = {}
    for eid, u, v in g.edges:
        assign[(eid, u)] = u
        assign[(eid, v)] = v
    return KpConfiguration(c, p, ports, boundary, assign)


# ---------------------------------------------------------------------------
# Embeddings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RotationSystem:
    """Per-vertex cyclic order of incident edge ids."""

    rotation: Mapping[int, tuple[int, ...]]

    def validate(self, g: Graph) -> None:
        for v in g.vertices:
            rot = self.rotation.get(v, ())
            if sorted(rot) != sorted(g.incident(v)):
                raise GraphError(f"rotation at {v} does not list its incident edges exactly once")
        extra = set(self.rotation) - set(g.vertices)
        if extra:
            raise GraphError(f"rotation for unknown vertices {sorted(extra)}")

    def faces(self, g: Graph) -> list[list[tuple[int, int]]]:
        """Face walks as lists of darts ``(edge id, tail vertex)``.

        The successor of dart (e, u) entering v is the edge following e in
        the rotation at v.
        """
        pos = {v: {e: i for i, e in enumerate(rot)} for v, rot in self.rotation.items()}
        unused = {(eid, x) for eid, u, v in g.edges for x in (u, v)}
        faces = []
        for start in sorted(unused):
            if start not in unused:
                continue
            face = []
            dart = start
            while dart in unused:
                unused.discard(dart)
                face.append(dart)
                eid, tail = dart
                head = g.other_end(eid, tail)
                rot = self.rotation[head]
                nxt = rot[(pos[head][eid] + 1) % len(rot)]
                dart = (nxt, head)
            faces.append(face)
        return faces

    def face_count(self, g: Graph) -> int:
        return len(self.faces(g))

    def is_planar_embedding(self, g: Graph) -> bool:
        """Euler check V - E + F = 2 on every connected component.

        Face walks never span components, so the sum over components is 2C;
        an isolated vertex has no darts and contributes its single face here.
        """
        self.validate(g)
        comps = g.components()
        isolated = sum(1 for comp in comps if len(comp) == 1 and not g.incident(next(iter(comp))))
        faces = self.face_count(g) + isolated
        return g.n - g.m + faces == 2 * len(comps)


@dataclass(frozen=True)
class Planarization:
    """A 1-plane graph with every crossing replaced by a degree-4 dummy vertex."""

    graph: Graph
    rotation: RotationSystem
    dummies: Mapping[int, tuple[int, int]]  # dummy vertex -> crossing pair (e_u, e_v)
    segment_of: Mapping[int, int]  # planarization edge id -> original edge id


@dataclass(frozen=True)
class OnePlaneGraph:
    """A graph with a set of crossing edge pairs and a planarization embedding."""

    graph: Graph
    crossings: frozenset[tuple[int, int]]
    planarization: Planarization
    outer_face: tuple[int, ...] | None = None

    @cached_property
    def partner(self) -> dict[int, int]:
        out = {}
        for a, b in self.crossings:
            out[a] = b
            out[b] = a
        return out


def normalize_crossings(g: Graph, pairs: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    """Validate crossing pairs and return them as sorted tuples."""
    out = set()
    used: set[int] = set()
    for a, b in pairs:
        if a == b:
            raise GraphError(f"edge {a} cannot cross itself")
        ua, va = g.endpoints(a)
        ub, vb = g.endpoints(b)
        if {ua, va} & {ub, vb}:
            raise GraphError(f"crossing edges {a} and {b} share an endpoint")
        for e in (a, b):
            if e in used:
                raise GraphError(f"edge {e} is crossed more than once")
            used.add(e)
        out.add((min(a, b), max(a, b)))
    return frozenset(out)


def planarization_graph(g: Graph, crossings: frozenset[tuple[int, int]]) -> tuple[Graph, dict, dict]:
    """Replace each crossing by a dummy vertex; ids of untouched edges are kept."""
    nv = g.next_vertex_id()
    ne = g.next_edge_id()
    crossed = {e for pair in crossings for e in pair}
    edges: list[Edge] = [e for e in g.edges if e[0] not in crossed]
    segment_of = {e[0]: e[0] for e in edges}
    dummies = {}
    for a, b in sorted(crossings):
        d = nv
        nv += 1
        dummies[d] = (a, b)
        for e in (a, b):
            u, v = g.endpoints(e)
            for x in (u, v):
                edges.append((ne, x, d))
                segment_of[ne] = e
                ne += 1
    return Graph(tuple(g.vertices) + tuple(dummies), tuple(edges)), dummies, segment_of


def iter_pairs(items: Iterable[int]) -> Iterator[tuple[int, int]]:
    return itertools.combinations(sorted(items), 2)


def adjacency_multiset(g: Graph) -> dict[tuple[int, int], int]:
    counts: dict[tuple[int, int], int] = defaultdict(int)
    for _, u, v in g.edges:
        counts[(min(u, v), max(u, v))] += 1
    return dict(counts)
