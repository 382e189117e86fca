"""1-plane graphs: crossing-edge graphs, representative pairs and (2,2) planarization.

A 1-plane graph is stored as a graph plus its set of crossing edge pairs;
the drawing is the rotation system of the planarization, where every
crossing becomes a degree-4 dummy whose rotation alternates between the
two crossing edges.
"""

from __future__ import annotations

import itertools
import random
from collections import defaultdict, deque
from dataclasses import dataclass

from .graph import (
    Clustering,
    Graph,
    GraphError,
    KpConfiguration,
    OnePlaneGraph,
    Planarization,
    RotationSystem,
    normalize_crossings,
    planarization_graph,
)
from .planarity import is_planar, planar_embedding
from .skeleton import wheel_skeleton


class Infeasible(GraphError):
    """The requested structure does not exist for this input."""


# ---------------------------------------------------------------------------
# 1-plane graphs
# ---------------------------------------------------------------------------


def one_plane(g: Graph, crossings, rotation: RotationSystem | None = None,
              outer_face: tuple[int, ...] | None = None) -> OnePlaneGraph:
    """Validate ``crossings`` on ``g`` and attach a planarization drawing.

    Without ``rotation`` a drawing is searched for; it exists iff the
    planarization has an embedding in which every dummy alternates between
    its two edges. Either way such alternation is required, otherwise the
    rotation does not describe a crossing.
    """
    pairs = normalize_crossings(g, crossings)
    pg, dummies, segment_of = planarization_graph(g, pairs)
    if rotation is None:
        rotation = _alternating_embedding(pg, dummies, segment_of)
    else:
        rotation.validate(pg)
        if not rotation.is_planar_embedding(pg):
            raise GraphError("planarization rotation system is not planar")
    for d, (a, b) in dummies.items():
        around = [segment_of[e] for e in rotation.rotation[d]]
        if around not in ([a, b, a, b], [b, a, b, a]):
            raise GraphError(f"edges {a} and {b} touch instead of crossing at dummy {d}")
    return OnePlaneGraph(g, pairs, Planarization(pg, rotation, dummies, segment_of), outer_face)


def _alternating_embedding(pg: Graph, dummies: dict, segment_of: dict) -> RotationSystem:
    """Planar rotation of ``pg`` in which every dummy alternates.

    Each dummy becomes the hub of a wheel whose rim carries its four
    segments in alternating order; a wheel is 3-connected, so every planar
    embedding keeps that order, and the hub's spokes give the dummy rotation.
    """
    nv, ne = pg.next_vertex_id(), pg.next_edge_id()
    edges = [e for e in pg.edges if e[1] not in dummies and e[2] not in dummies]
    spoke_segment: dict[int, int] = {}
    for d, (a, b) in dummies.items():
        segs = pg.incident(d)
        sa = [e for e in segs if segment_of[e] == a]
        sb = [e for e in segs if segment_of[e] == b]
        ring = []
        for e in (sa[0], sb[0], sa[1], sb[1]):
            r, nv = nv, nv + 1
            ring.append(r)
            edges.append((e, pg.other_end(e, d), r))
            edges.append((ne, d, r))
            spoke_segment[ne] = e
            ne += 1
        for i in range(4):
            edges.append((ne, ring[i], ring[(i + 1) % 4]))
            ne += 1
    gadget = Graph(tuple(pg.vertices) + tuple(range(pg.next_vertex_id(), nv)), tuple(edges))
    try:
        emb = planar_embedding(gadget)
    except GraphError:
        raise GraphError("no 1-planar drawing realizes these crossings") from None
    rot = {v: emb.rotation[v] for v in pg.vertices if v not in dummies}
    for d in dummies:
        rot[d] = tuple(spoke_segment[e] for e in emb.rotation[d])
    out = RotationSystem(rot)
    if not out.is_planar_embedding(pg):  # pragma: no cover - contraction keeps planarity
        raise AssertionError("internal error: contracted wheel embedding is not planar")
    return out


def is_one_plane(og: OnePlaneGraph) -> bool:
    """Re-check a 1-plane graph: crossings valid, planarization drawn planarly, crossings alternate."""
    try:
        one_plane(og.graph, og.crossings, og.planarization.rotation)
    except GraphError:
        return False
    return True


# ---------------------------------------------------------------------------
# ce-graph, orientation, ISDR
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CeGraph:
    """Subgraph formed by the crossing edges; ``backref`` maps each edge to its crossing partner."""

    vertices: frozenset[int]
    edges: tuple[tuple[int, int, int], ...]
    backref: dict[int, int]


def ce_graph(og: OnePlaneGraph) -> CeGraph:
    crossed = {e for pair in og.crossings for e in pair}
    edges = tuple(e for e in og.graph.edges if e[0] in crossed)
    vertices = frozenset(x for _, u, v in edges for x in (u, v))
    return CeGraph(vertices, edges, dict(og.partner))


def _components(ce: CeGraph) -> list[tuple[list[int], list[tuple[int, int, int]]]]:
    adj: dict[int, list[tuple[int, int, int]]] = defaultdict(list)
    for e in ce.edges:
        adj[e[1]].append(e)
        adj[e[2]].append(e)
    seen: set[int] = set()
    out = []
    for s in sorted(ce.vertices):
        if s in seen:
            continue
        seen.add(s)
        comp, edges, queue = [s], {}, deque([s])
        while queue:
            v = queue.popleft()
            for e in adj[v]:
                edges[e[0]] = e
                w = e[2] if e[1] == v else e[1]
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        out.append((sorted(comp), sorted(edges.values())))
    return out


def is_pseudoforestal(og: OnePlaneGraph) -> bool:
    """Every ce-graph component has at most one cycle (edges <= vertices)."""
    return all(len(es) <= len(vs) for vs, es in _components(ce_graph(og)))


def orient_in_degree_one(ce: CeGraph) -> dict[int, tuple[int, int]]:
    """Orientation (edge id -> (tail, head)) with every in-degree at most one.

    Trees are oriented away from their lowest vertex. In a unicyclic
    component the cycle is oriented starting from its lowest vertex and the
    hanging trees point away from the cycle.
    """
    out: dict[int, tuple[int, int]] = {}
    for verts, edges in _components(ce):
        if len(edges) > len(verts):
            raise Infeasible(f"ce-graph component on {verts[:6]}... has {len(edges)} edges "
                             f"but {len(verts)} vertices")
        adj: dict[int, list[tuple[int, int, int]]] = defaultdict(list)
        for e in edges:
            adj[e[1]].append(e)
            adj[e[2]].append(e)
        # peel leaves; a unicyclic component leaves its cycle behind
        deg = {v: len(adj[v]) for v in verts}
        alive = set(verts)
        leaves = deque(v for v in verts if deg[v] <= 1)
        while leaves:
            v = leaves.popleft()
            alive.discard(v)
            for e in adj[v]:
                w = e[2] if e[1] == v else e[1]
                if w in alive:
                    deg[w] -= 1
                    if deg[w] == 1:
                        leaves.append(w)
        if alive:
            start = min(alive)
            cur, prev_e = start, None
            while True:
                e = min((e for e in adj[cur] if e[0] != prev_e
                         and (e[1] if e[2] == cur else e[2]) in alive), key=lambda e: e[0])
                w = e[2] if e[1] == cur else e[1]
                out[e[0]] = (cur, w)
                cur, prev_e = w, e[0]
                if cur == start:
                    break
            roots = sorted(alive)
        else:
            roots = [verts[0]]
        seen = set(roots)
        queue = deque(roots)
        while queue:
            v = queue.popleft()
            for e in sorted(adj[v]):
                if e[0] in out:
                    continue
                w = e[2] if e[1] == v else e[1]
                out[e[0]] = (v, w)
                seen.add(w)
                queue.append(w)
    return out


@dataclass(frozen=True)
class Isdr:
    """One representative pair per crossing; ``pairs[i]`` belongs to ``crossings[i]``."""

    crossings: tuple[tuple[int, int], ...]
    pairs: tuple[tuple[int, int], ...]

    def validate(self, og: OnePlaneGraph) -> None:
        if sorted(self.crossings) != sorted(og.crossings):
            raise GraphError("representative pairs do not cover the crossings exactly once")
        used: set[int] = set()
        for (a, b), (u, v) in zip(self.crossings, self.pairs):
            if u not in og.graph.endpoints(a) or v not in og.graph.endpoints(b):
                raise GraphError(f"pair ({u}, {v}) does not represent crossing ({a}, {b})")
            if u in used or v in used:
                raise GraphError(f"vertex of pair ({u}, {v}) is already used by another pair")
            used.update((u, v))


def isdr(og: OnePlaneGraph) -> Isdr:
    """Representative pairs read off an in-degree-one orientation of the ce-graph."""
    ce = ce_graph(og)
    if not all(len(es) <= len(vs) for vs, es in _components(ce)):
        raise Infeasible("graph is not pseudoforestal, so it has no ISDR")
    orient = orient_in_degree_one(ce)
    crossings = tuple(sorted(og.crossings))
    pairs = tuple((orient[a][1], orient[b][1]) for a, b in crossings)
    return Isdr(crossings, pairs)


# ---------------------------------------------------------------------------
# (2,2) planarization
# ---------------------------------------------------------------------------


def planarize_22(og: OnePlaneGraph, pairs: Isdr | None = None) -> tuple[Graph, KpConfiguration]:
    """A (2,2) configuration of a pseudoforestal 1-plane graph.

    For a crossing of e_u = (u1, u2) and e_v = (v1, v2) with representative
    pair <u1, v1>, the cluster {u1, v1} gets the boundary u1, v1', u1', v1
    where the primed ports sit where the crossing was: e_u enters the cluster
    at u1' and e_v at v1'. All other edges keep the main port of their end.
    """
    if pairs is None:
        pairs = isdr(og)
    pairs.validate(og)
    g = og.graph
    port_ids = itertools.count()
    main = {v: next(port_ids) for v in sorted(g.vertices)}
    ports = {v: [main[v]] for v in g.vertices}
    assign: dict[tuple[int, int], int] = {}
    parts: list[frozenset[int]] = []
    boundary_of: dict[frozenset[int], tuple[int, ...]] = {}
    for (a, b), (u1, v1) in zip(pairs.crossings, pairs.pairs):
        cu, cv = next(port_ids), next(port_ids)  # u1' and v1'
        ports[u1].append(cu)
        ports[v1].append(cv)
        assign[(a, u1)] = cu
        assign[(b, v1)] = cv
        part = frozenset((u1, v1))
        parts.append(part)
        boundary_of[part] = (main[u1], cv, cu, main[v1])
    clustered = set().union(*parts) if parts else set()
    parts += [frozenset((v,)) for v in g.vertices if v not in clustered]
    clustering = Clustering.from_parts(parts, k=2)
    boundary = []
    for part in clustering.parts:
        if part in boundary_of:
            boundary.append(boundary_of[part])
        else:
            (v,) = part
            boundary.append((main[v],))
    for eid, u, v in clustering.inter_edges(g):
        for x in (u, v):
            assign.setdefault((eid, x), main[x])
    cfg = KpConfiguration(clustering, 2, {v: tuple(qs) for v, qs in ports.items()},
                          tuple(boundary), assign)
    cfg.validate(g)
    return g, cfg


def planarization_check(g: Graph, cfg: KpConfiguration) -> bool:
    """Skeleton test used to certify a (2,2) planarization."""
    return is_planar(wheel_skeleton(g, cfg))


# ---------------------------------------------------------------------------
# Kite families
# ---------------------------------------------------------------------------


@dataclass
class _KiteBuilder:
    pairs: list[tuple[int, int]]
    crossings: list[tuple[int, int]]

    def kite(self, cycle: tuple[int, int, int, int]) -> None:
        """K4 on ``cycle`` drawn with both diagonals crossing inside the 4-cycle."""
        a, b, c, d = cycle
        for u, v in ((a, b), (b, c), (c, d), (d, a)):
            self.pairs.append((u, v))
        self.pairs.append((a, c))
        self.pairs.append((b, d))
        self.crossings.append((len(self.pairs) - 2, len(self.pairs) - 1))


def _hbar(i: int, vertex_ids) -> tuple[list[tuple[int, int]], list[tuple[int, int]], list[int], list[tuple]]:
    """Edges, crossings, outer boundary and external kites of the kite tower of level ``i``."""
    b = _KiteBuilder([], [])
    first = tuple(next(vertex_ids) for _ in range(4))
    b.kite(first)
    boundary = list(first)
    external = [first]
    for _level in range(2, i + 1):
        r = len(boundary)
        shared = [next(vertex_ids) for _ in range(r)]
        tips = [next(vertex_ids) for _ in range(r)]
        external = []
        for j in range(r):
            # kite j holds old boundary vertex j and sits between shared j and j+1
            cycle = (boundary[j], shared[j], tips[j], shared[(j + 1) % r])
            b.kite(cycle)
            external.append(cycle)
        boundary = [x for j in range(r) for x in (shared[j], tips[j])]
    return b.pairs, b.crossings, boundary, external


def gen_hbar(i: int, reversed: bool = False) -> OnePlaneGraph:
    """Kite tower: one kite, then 2^j kites in a ring around the previous level.

    The canonical drawing has the last ring on the outer face; the reversed
    one has the outer boundary cycle as an inner face instead.
    """
    if i < 1:
        raise GraphError(f"kite tower level must be >= 1 (got {i})")
    pairs, crossings, boundary, _ = _hbar(i, itertools.count())
    g = Graph.from_pairs(pairs)
    og = one_plane(g, crossings)
    return _with_outer_face(og, boundary, inner=reversed)


def _with_outer_face(og: OnePlaneGraph, cycle: list[int], inner: bool) -> OnePlaneGraph:
    """Pick the face bounded by ``cycle`` as outer face (or any other face when ``inner``)."""
    pg = og.planarization.graph
    faces = og.planarization.rotation.faces(pg)
    target = set(cycle)

    def tails(face):
        return tuple(t for _, t in face)

    boundary_faces = [f for f in faces if set(tails(f)) == target and len(f) == len(cycle)]
    if inner:
        rest = [f for f in faces if f not in boundary_faces]
        outer = tails(max(rest, key=lambda f: (len(f), tails(f))))
    else:
        outer = tails(boundary_faces[0]) if boundary_faces else None
    return OnePlaneGraph(og.graph, og.crossings, og.planarization, outer)


def gen_h(h: int) -> OnePlaneGraph:
    """Two kite towers of level ``h`` glued along their external kite rings.

    In each shared kite the attachment vertex of one tower is the outer tip
    of the other, so the second tower sits outside the ring in reversed
    position and the whole graph stays 1-plane. It has 5*2^h - 8 vertices
    and 18*2^h - 36 edges.
    """
    if h <= 2:
        raise GraphError(f"glued kite towers need h > 2 (got {h})")
    ids = itertools.count()
    pairs_c, cross_c, _, ext_c = _hbar(h, ids)
    pairs_r, cross_r, _, ext_r = _hbar(h, ids)
    # kite (a, s, o, s') of the second tower becomes (o, s, a, s') of the first
    ident = {}
    for (a, s, o, s2), (ar, sr, or_, s2r) in zip(ext_c, ext_r):
        ident.update({ar: o, sr: s, or_: a, s2r: s2})
    ext_edges_r = set()
    for cycle in ext_r:
        ext_edges_r |= {frozenset(p) for p in itertools.combinations(cycle, 2)}
    pairs = list(pairs_c)
    keep = {}
    for idx, (u, v) in enumerate(pairs_r):
        if frozenset((u, v)) in ext_edges_r:
            continue
        keep[idx] = len(pairs)
        pairs.append((ident.get(u, u), ident.get(v, v)))
    crossings = list(cross_c) + [(keep[a], keep[b]) for a, b in cross_r if a in keep]
    used = sorted({x for e in pairs for x in e})
    relabel = {v: i for i, v in enumerate(used)}
    g = Graph.from_pairs([(relabel[u], relabel[v]) for u, v in pairs])
    return one_plane(g, crossings)


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------


def _stacked(n: int, rng: random.Random) -> list[tuple[int, int, int]]:
    """Faces of a random stacked triangulation on ``n`` >= 3 vertices."""
    faces = [(0, 1, 2), (0, 1, 2)]
    for v in range(3, n):
        a, b, c = faces.pop(rng.randrange(len(faces)))
        faces += [(a, b, v), (b, c, v), (a, c, v)]
    return faces


def random_one_plane(n: int, max_crossings: int, seed: int, drop: float = 0.0) -> OnePlaneGraph:
    """A random 1-plane graph: a stacked triangulation with some edges turned into kites.

    A chosen edge ab with faces abc and abd gets the new edge cd crossing
    it; no two chosen edges share a face, so every edge is crossed at most
    once. ``drop`` removes a fraction of the uncrossed edges afterwards.
    """
    rng = random.Random(seed)
    faces = _stacked(max(n, 3), rng)
    by_edge: dict[frozenset[int], list[int]] = defaultdict(list)
    for i, f in enumerate(faces):
        for u, v in itertools.combinations(f, 2):
            by_edge[frozenset((u, v))].append(i)
    edges = sorted(by_edge, key=sorted)
    rng.shuffle(edges)
    present = set(edges)
    used_faces: set[int] = set()
    chosen = []
    for e in edges:
        if len(chosen) == max_crossings:
            break
        f1, f2 = by_edge[e]
        if f1 in used_faces or f2 in used_faces:
            continue
        (c,) = set(faces[f1]) - e
        (d,) = set(faces[f2]) - e
        if frozenset((c, d)) in present:
            continue
        present.add(frozenset((c, d)))
        used_faces |= {f1, f2}
        chosen.append((e, frozenset((c, d))))
    crossed = {x for pair in chosen for x in pair}
    pairs = [tuple(sorted(e)) for e in sorted(present, key=sorted)
             if e in crossed or rng.random() >= drop]
    g = Graph.from_pairs(pairs)
    eid = {frozenset((u, v)): i for i, u, v in g.edges}
    crossings = [(eid[a], eid[b]) for a, b in chosen]
    og = one_plane(g, crossings)
    return og


def random_pseudoforestal(seed: int, max_n: int = 12, max_crossings: int = 5) -> OnePlaneGraph:
    """Seeded random pseudoforestal 1-plane graph with at least one crossing."""
    rng = random.Random(seed)
    while True:
        og = random_one_plane(rng.randint(4, max_n), rng.randint(1, max_crossings),
                              rng.randrange(1 << 30))
        if og.crossings and is_pseudoforestal(og):
            return og


def random_non_pseudoforestal(seed: int, max_n: int = 9, max_crossings: int = 8) -> OnePlaneGraph:
    """Seeded random 1-plane graph whose ce-graph has a component with two cycles."""
    rng = random.Random(seed)
    while True:
        og = random_one_plane(rng.randint(5, max_n), max_crossings, rng.randrange(1 << 30))
        if not is_pseudoforestal(og):
            return og
