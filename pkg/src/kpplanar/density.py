"""Edge density of (k,p)-planar graphs.

Contains the closed-form upper bound, the inter-cluster bound it comes from,
the construction that attains the bound when p < k, and the normalization
that pads or removes clusters until every cluster has exactly k vertices.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

import networkx as nx

from .graph import Clustering, Graph, GraphError, KpConfiguration, RotationSystem
from .planarity import is_planar, planar_embedding
from .skeleton import wheel_apexes, wheel_skeleton


class InfeasibleConnection(GraphError):
    """A kp-connection needs kp + 1 <= k^2 distinct vertex pairs, i.e. p < k."""


class NormalizationError(GraphError):
    """A normalization step could not be carried out on the given configuration."""


# ---------------------------------------------------------------------------
# Bounds
# ---------------------------------------------------------------------------


def density_coefficient(k: int, p: int) -> Fraction:
    return p + Fraction(3, k) + Fraction(k, 2) - Fraction(1, 2)


@dataclass(frozen=True)
class DensityBound:
    n: int
    k: int
    p: int
    bound: Fraction
    vacuous: bool
    note: str = ""

    @property
    def value(self) -> int:
        """Largest admissible integer edge count."""
        return self.bound.numerator // self.bound.denominator

    def __int__(self) -> int:
        return self.value


def max_edges(n: int, k: int, p: int) -> DensityBound:
    """Upper bound n(p + 3/k + k/2 - 1/2) - 6 on the edges of an n-vertex (k,p)-planar graph.

    The derivation uses m_S <= 3 n_S - 6 on the skeleton, which needs at
    least three skeleton vertices. Below three graph vertices, or when the
    expression drops below zero, the result is flagged as vacuous.
    """
    if min(n, k, p) < 1:
        raise GraphError("n, k and p must be positive")
    bound = n * density_coefficient(k, p) - 6
    notes = []
    if n < 3:
        notes.append("n < 3: skeleton may have fewer than 3 vertices")
    if bound < 0:
        notes.append("bound is negative")
    return DensityBound(n, k, p, bound, bool(notes), "; ".join(notes))


def inter_cluster_bound(n_s: int, clusters: int, singles: int) -> int:
    """n_S + 3N - 6 - s: inter-cluster edges allowed by planarity of the skeleton."""
    if clusters < 1 or n_s < 1 or not 0 <= singles <= clusters:
        raise GraphError("need N >= 1, n_S >= 1 and 0 <= s <= N")
    return n_s + 3 * clusters - 6 - singles


# ---------------------------------------------------------------------------
# Tight construction
# ---------------------------------------------------------------------------


def connection_pairs(k: int, p: int) -> list[tuple[int, int]]:
    """Port positions (small end, large end) of the kp + 1 edges of a kp-connection.

    Both clusters number their kp ports 0..kp-1 around the boundary. The
    small end uses positions 0..p: each of the first p carries k edges, the
    last one a single edge. The large end uses p(k-1) + 1 consecutive
    positions 0, kp-1, ..., p, read against the boundary orientation, so that
    neighbouring fans share one port.
    """
    if p >= k:
        raise InfeasibleConnection(f"kp-connection needs p < k (got k={k}, p={p})")
    kp = k * p

    def large(t: int) -> int:  # t-th large-end port, t = 0 .. p(k-1)
        return (-t) % kp

    out = []
    for j in range(p):
        for t in range(j * (k - 1), (j + 1) * (k - 1) + 1):
            out.append((j, large(t)))
    out.append((p, large(p * (k - 1))))
    return out


@dataclass(frozen=True)
class KpConnection:
    graph: Graph
    config: KpConfiguration
    small_degrees: tuple[int, ...]
    large_degrees: tuple[int, ...]


def _owner(position: int, k: int) -> int:
    return position % k


def kp_connection(k: int, p: int) -> KpConnection:
    """Two k-clusters joined by exactly kp + 1 inter-cluster edges.

    Cluster 0 (vertices 0..k-1) is the small end, cluster 1 (k..2k-1) the
    large end. Port ``i * kp + x`` is position x of cluster i and belongs to
    member x mod k, which keeps every vertex pair distinct.
    """
    pairs = connection_pairs(k, p)
    kp = k * p
    edges = []
    assign = {}
    for eid, (s, t) in enumerate(pairs):
        u, v = _owner(s, k), k + _owner(t, k)
        edges.append((eid, u, v))
        assign[(eid, u)] = s
        assign[(eid, v)] = kp + t
    g = Graph(tuple(range(2 * k)), tuple(edges))
    cfg = _cyclic_config(2, k, p, assign)
    small = [0] * (p + 1)
    large: dict[int, int] = {}
    for s, t in pairs:
        small[s] += 1
        large[t] = large.get(t, 0) + 1
    order = [(-t) % kp for t in range(p * (k - 1) + 1)]
    return KpConnection(g, cfg, tuple(small), tuple(large[t] for t in order))


def _cyclic_config(clusters: int, k: int, p: int, assign: dict) -> KpConfiguration:
    kp = k * p
    parts = [frozenset(range(i * k, (i + 1) * k)) for i in range(clusters)]
    ports = {i * k + r: tuple(i * kp + x for x in range(kp) if x % k == r)
             for i in range(clusters) for r in range(k)}
    boundary = tuple(tuple(range(i * kp, (i + 1) * kp)) for i in range(clusters))
    return KpConfiguration(Clustering(tuple(parts), k), p, ports, boundary, assign)


def tight_construction(clusters: int, k: int, p: int) -> tuple[Graph, KpConfiguration]:
    """A (k,p)-planar graph on N = ``clusters`` k-cliques with exactly max_edges(Nk, k, p) edges.

    The clusters form a cycle of kp-connections, cluster i being the small
    end towards cluster i+1. Position 0 of every cluster lies on one of the
    two faces of degree N and position p on the other; both are
    triangulated by a fan from cluster 0, giving (kp + 3)N - 6 inter-cluster
    edges in total.
    """
    if p >= k:
        raise InfeasibleConnection(f"tight construction needs p < k (got k={k}, p={p})")
    if clusters < 3:
        raise GraphError("tight construction needs N > 2 clusters")
    kp = k * p
    edges = []
    assign = {}
    eid = 0
    for i in range(clusters):
        base = i * k
        for a in range(k):
            for b in range(a + 1, k):
                edges.append((eid, base + a, base + b))
                eid += 1

    def add(ci: int, x: int, cj: int, y: int) -> None:
        nonlocal eid
        u, v = ci * k + _owner(x, k), cj * k + _owner(y, k)
        edges.append((eid, u, v))
        assign[(eid, u)] = ci * kp + x
        assign[(eid, v)] = cj * kp + y
        eid += 1

    pairs = connection_pairs(k, p)
    for i in range(clusters):
        j = (i + 1) % clusters
        for s, t in pairs:
            add(i, s, j, t)
    for pos in (0, p):
        for j in range(2, clusters - 1):
            add(0, pos, j, pos)
    g = Graph(tuple(range(clusters * k)), tuple(edges))
    cfg = _cyclic_config(clusters, k, p, assign)
    cfg.validate(g)
    return g, cfg


# ---------------------------------------------------------------------------
# Normalization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NormalizationStep:
    kind: str  # "collapse", "triangulate", "pad" or "remove"
    cluster: tuple[int, ...]
    delta_n: int
    delta_m: int
    expected_delta_m: Fraction | None
    planar: bool
    n: int
    m: int
    base_case: bool = False  # removal with fewer than three hole corners


@dataclass
class NormalizationResult:
    graph: Graph
    config: KpConfiguration
    steps: list[NormalizationStep] = field(default_factory=list)
    n_in: int = 0
    m_in: int = 0
    stuck_faces: int = 0

    def claim_holds(self) -> bool:
        """Each step: if the later state meets the density bound, so does the earlier one."""
        k, p = self.config.k, self.config.p
        coeff = density_coefficient(k, p)
        states = [(self.n_in, self.m_in)] + [(s.n, s.m) for s in self.steps]
        for (n0, m0), (n1, m1) in zip(states, states[1:]):
            if m1 <= n1 * coeff - 6 and not m0 <= n0 * coeff - 6:
                return False
        return True


class _State:
    """Mutable configuration plus a maintained planar rotation system of its wheel skeleton.

    Skeleton vertices are port ids and negative apex ids; inter-cluster
    edges share their graph edge id, wheel edges get negative ids. The
    rotation system is updated in place by every step, so faces that were
    triangulated stay triangulated.
    """

    def __init__(self, g: Graph, cfg: KpConfiguration):
        self.k = cfg.k
        self.p = cfg.p
        self.vertices = set(g.vertices)
        self.edges = {eid: (u, v) for eid, u, v in g.edges}
        self.parts = {ci: set(part) for ci, part in enumerate(cfg.clustering.parts)}
        self.ports = {v: list(cfg.ports.get(v, ())) for v in g.vertices}
        self.boundary = {ci: list(seq) for ci, seq in enumerate(cfg.boundary)}
        self.assign = dict(cfg.port_assign)
        self.next_eid = g.next_edge_id()
        self.next_vid = g.next_vertex_id()
        self.next_port = max((q for qs in self.ports.values() for q in qs), default=-1) + 1
        self._wheel_ids = itertools.count(-1, -1)
        self.apex: dict[int, int] = {}
        self.sk_end: dict[int, tuple[int, int]] = {}
        vertices = [q for qs in self.ports.values() for q in qs]
        for eid, (u, v) in self.edges.items():
            if self.cluster_of_vertex(u) != self.cluster_of_vertex(v):
                self.sk_end[eid] = (self.assign[(eid, u)], self.assign[(eid, v)])
        for ci, seq in self.boundary.items():
            if len(seq) >= 2:
                self.apex[ci] = -1 - ci
                vertices.append(self.apex[ci])
                self._add_wheel(ci, seq)
        self.links = {frozenset(ab) for ab in self.sk_end.values()}
        sk = Graph(tuple(vertices), tuple((e, a, b) for e, (a, b) in self.sk_end.items()))
        emb = clean_wheel_embedding(sk, planar_embedding(sk), self.apex.values())
        self.rot = {v: list(emb.rotation.get(v, ())) for v in vertices}

    def _add_wheel(self, ci: int, seq: list[int]) -> None:
        n = len(seq)
        rim = [(seq[0], seq[1])] if n == 2 else [(seq[j], seq[(j + 1) % n]) for j in range(n)]
        for a, b in rim + [(self.apex[ci], q) for q in seq]:
            self.sk_end[next(self._wheel_ids)] = (a, b)

    # -- views -----------------------------------------------------------

    def cluster_of_vertex(self, v: int) -> int:
        return next(ci for ci, part in self.parts.items() if v in part)

    def owner(self) -> dict[int, int]:
        return {q: v for v, qs in self.ports.items() for q in qs}

    def port_cluster(self) -> dict[int, int]:
        cl = {v: ci for ci, part in self.parts.items() for v in part}
        return {q: cl[v] for q, v in self.owner().items()}

    def graph(self) -> Graph:
        return Graph(tuple(self.vertices), tuple((e, u, v) for e, (u, v) in self.edges.items()))

    def config(self) -> KpConfiguration:
        order = sorted(self.parts, key=lambda ci: min(self.parts[ci]))
        c = Clustering(tuple(frozenset(self.parts[ci]) for ci in order), self.k)
        return KpConfiguration(
            c, self.p,
            {v: tuple(qs) for v, qs in self.ports.items() if qs},
            tuple(tuple(self.boundary[ci]) for ci in order),
            dict(self.assign),
        )

    def skeleton_graph(self) -> Graph:
        return Graph(tuple(self.rot), tuple((e, a, b) for e, (a, b) in self.sk_end.items()))

    def embedding_valid(self) -> bool:
        rs = RotationSystem({v: tuple(r) for v, r in self.rot.items()})
        return rs.is_planar_embedding(self.skeleton_graph())

    def faces(self) -> list[list[tuple[int, int]]]:
        pos = {v: {e: i for i, e in enumerate(r)} for v, r in self.rot.items()}
        unused = {(e, x) for e, ends in self.sk_end.items() for x in ends}
        out = []
        for start in sorted(unused):
            if start not in unused:
                continue
            face = []
            dart = start
            while dart in unused:
                unused.discard(dart)
                face.append(dart)
                e, tail = dart
                a, b = self.sk_end[e]
                head = b if tail == a else a
                r = self.rot[head]
                dart = (r[(pos[head][e] + 1) % len(r)], head)
            out.append(face)
        return out

    # -- primitive edits -------------------------------------------------

    def add_inter_edge(self, qa: int, qb: int, owner: dict[int, int]) -> int:
        u, v = owner[qa], owner[qb]
        e = self.next_eid
        self.next_eid += 1
        self.edges[e] = (u, v)
        self.assign[(e, u)] = qa
        self.assign[(e, v)] = qb
        return e

    def insert_chord(self, face: list[tuple[int, int]], i: int, j: int, eid: int):
        """Draw skeleton edge ``eid`` inside ``face`` between corners i < j; return the two new faces."""
        ti, tj = face[i][1], face[j][1]
        for t, incoming in ((ti, face[i - 1][0]), (tj, face[j - 1][0])):
            r = self.rot[t]
            r.insert(r.index(incoming) + 1, eid)
        self.sk_end[eid] = (ti, tj)
        self.links.add(frozenset((ti, tj)))
        return face[i:j] + [(eid, tj)], face[j:] + face[:i] + [(eid, ti)]

    def subdivide(self, eid: int, new_vertex: int) -> int:
        """Split skeleton edge a-b into a-new (same id) and new-b; return the id of new-b."""
        a, b = self.sk_end[eid]
        rest = next(self._wheel_ids)
        self.sk_end[eid] = (a, new_vertex)
        self.sk_end[rest] = (new_vertex, b)
        rb = self.rot[b]
        rb[rb.index(eid)] = rest
        self.rot[new_vertex] = [eid, rest]
        return rest

    def triangulate_face(self, face: list[tuple[int, int]], ok, owner: dict[int, int]) -> bool:
        """Split ``face`` into triangles with new inter-cluster edges; apex corners are skipped."""
        corners = [i for i, (_, t) in enumerate(face) if t >= 0]
        if len(corners) <= 3:
            return True
        verts = [face[i][1] for i in corners]
        plan = _triangulate_polygon(verts, ok)
        if plan is None:
            return False
        x, y = plan[0]
        i, j = sorted((corners[x], corners[y]))
        eid = self.add_inter_edge(face[i][1], face[j][1], owner)
        f1, f2 = self.insert_chord(face, i, j, eid)
        return self.triangulate_face(f1, ok, owner) and self.triangulate_face(f2, ok, owner)


def _move_region_bridges(rot: dict[int, list[int]], sk: Graph, apex: int) -> None:
    """Rotate bridges drawn inside one cluster's wheel out across the adjacent rim edge."""
    spokes = rot[apex]
    r = len(spokes)
    port_of = {e: sk.other_end(e, apex) for e in spokes}

    def rim(a: int, b: int) -> int:
        # ports of one cluster are joined by nothing but their rim edge
        return next(e for e in rot[a] if e not in spokes and sk.other_end(e, a) == b)

    for i, s in enumerate(spokes):
        q = port_of[s]
        succ = port_of[spokes[(i + 1) % r]]
        pred = port_of[spokes[(i - 1) % r]]
        cur = rot[q]
        j = cur.index(s)
        cur = cur[j:] + cur[:j]  # starts with the spoke
        if r == 2:
            e = rim(q, pred)
            if i == 0:  # region face follows the spoke: [s, Y, e, W] -> [s, e, Y, W]
                k = cur.index(e)
                rot[q] = [s, e] + cur[1:k] + cur[k + 1:]
            else:  # region face precedes the spoke: [s, W, e, X] -> [s, W, X, e]
                k = cur.index(e)
                rot[q] = cur[:k] + cur[k + 1:] + [e]
            continue
        e_pred, e_succ = rim(q, pred), rim(q, succ)
        kp, ks = cur.index(e_pred), cur.index(e_succ)
        inside_after = cur[1:kp]  # between spoke and the rim edge towards pred
        outside = cur[kp + 1:ks]
        inside_before = cur[ks + 1:]  # between the rim edge towards succ and the spoke
        rot[q] = [s, e_pred] + inside_after + outside + inside_before + [e_succ]


def clean_wheel_embedding(sk: Graph, emb: RotationSystem, apexes) -> RotationSystem:
    """A planar rotation system of the wheel skeleton in which every cluster region is an empty face.

    Anything a planarity test places inside a cluster wheel is attached to
    at most the two ports of one rim edge, so it can be flipped across that
    edge. Clusters whose flip would break the Euler check keep their
    original rotations.
    """
    rot = {v: list(r) for v, r in emb.rotation.items()}
    for apex in sorted(apexes):
        trial = {v: list(r) for v, r in rot.items()}
        _move_region_bridges(trial, sk, apex)
        candidate = RotationSystem({v: tuple(r) for v, r in trial.items()})
        if candidate.is_planar_embedding(sk):
            rot = trial
    return RotationSystem({v: tuple(r) for v, r in rot.items()})


def _triangulate_polygon(corners: list[int], ok) -> list[tuple[int, int]] | None:
    """Chords triangulating the polygon ``corners`` using only pairs accepted by ``ok``.

    Returns corner index pairs (len(corners) - 3 of them) or None when no
    such triangulation exists. Classic interval dynamic programme.
    """
    n = len(corners)
    if n <= 3:
        return []

    def side(i: int, j: int) -> bool:
        return j == i + 1 or (i == 0 and j == n - 1) or ok(corners[i], corners[j])

    @lru_cache(maxsize=None)
    def solve(i: int, j: int):
        if j - i < 2:
            return ()
        for mid in range(i + 1, j):
            if side(i, mid) and side(mid, j):
                left, right = solve(i, mid), solve(mid, j)
                if left is not None and right is not None:
                    chords = left + right
                    if mid - i > 1:
                        chords += ((i, mid),)
                    if j - mid > 1:
                        chords += ((mid, j),)
                    return chords
        return None

    out = solve(0, n - 1)
    return None if out is None else list(out)


def _record(state: _State, result: NormalizationResult, kind: str, cluster, n0: int, m0: int,
            expected: Fraction | None) -> None:
    n1, m1 = len(state.vertices), len(state.edges)
    g = state.graph()
    planar = is_planar(wheel_skeleton(g, state.config(), validate=False)) and state.embedding_valid()
    result.steps.append(NormalizationStep(kind, tuple(sorted(cluster)), n1 - n0, m1 - m0,
                                          expected, planar, n1, m1))
    if not planar:  # pragma: no cover - each step is planar by construction
        raise NormalizationError(f"{kind} step on cluster {sorted(cluster)} broke skeleton planarity")


def _chord_ok(state: _State):
    """Chord filter: ports of different clusters that are not joined yet."""
    cluster = state.port_cluster()
    return lambda a, b: cluster[a] != cluster[b] and frozenset((a, b)) not in state.links


def _is_region_face(state: _State, face: list[tuple[int, int]]) -> bool:
    if len(face) != 3:
        return False
    tails = [t for _, t in face]
    apexes = [t for t in tails if t < 0]
    if len(apexes) != 1:
        return False
    ci = -1 - apexes[0]
    return all(t in state.boundary[ci] for t in tails if t >= 0)


def _triangulate_faces(state: _State) -> int:
    """Add inter-cluster edges until every face outside the cluster regions is a triangle.

    Returns the number of faces that admit no such triangulation (their
    corners alternate between too few clusters); they are left as they are.
    """
    ok = _chord_ok(state)
    owner = state.owner()
    stuck = 0
    for face in state.faces():
        if not _is_region_face(state, face) and not state.triangulate_face(face, ok, owner):
            stuck += 1
    return stuck


def _remove_singleton(state: _State, ci: int) -> int:
    """Delete a singleton cluster and triangulate the hole; returns the number of hole corners."""
    (v,) = state.parts[ci]
    dead = set(state.ports[v])
    if ci in state.apex:
        dead.add(state.apex[ci])
    dead_edges = {e for e, (a, b) in state.sk_end.items() if a in dead or b in dead}
    anchor = None
    for e in sorted(dead_edges):
        for w in state.sk_end[e]:
            if w in dead:
                continue
            r = state.rot[w]
            alive = [x for x in r if x not in dead_edges]
            if alive:
                idx = r.index(e)
                for step in range(1, len(r) + 1):
                    x = r[(idx - step) % len(r)]
                    if x not in dead_edges:
                        anchor = (w, x)
                        break
            if anchor:
                break
        if anchor:
            break
    owner = state.owner()
    ok = _chord_ok(state)
    for w in list(state.rot):
        if w in dead:
            del state.rot[w]
        else:
            state.rot[w] = [x for x in state.rot[w] if x not in dead_edges]
    for e in dead_edges:
        del state.sk_end[e]
    for e in [e for e, (a, b) in state.edges.items() if v in (a, b)]:
        del state.edges[e]
    state.assign = {key: q for key, q in state.assign.items() if key[1] != v and key[0] in state.edges}
    state.vertices.discard(v)
    del state.ports[v], state.parts[ci], state.boundary[ci]
    state.apex.pop(ci, None)
    if anchor is None:
        return 0
    w, x = anchor
    r = state.rot[w]
    start = (r[(r.index(x) + 1) % len(r)], w)
    hole = next(face for face in state.faces() if start in face)
    corners = sum(1 for _, t in hole if t >= 0)
    if not state.triangulate_face(hole, ok, owner):
        raise NormalizationError(f"hole left by vertex {v} cannot be triangulated with inter-cluster edges")
    return corners


def _pad_cluster(state: _State, ci: int) -> None:
    """Add k - k_i dummies with p ports each on one rim edge and join the new ports outward."""
    h = state.k - len(state.parts[ci])
    seq = state.boundary[ci]
    if len(seq) < 2:
        raise NormalizationError(f"cluster {sorted(state.parts[ci])} has fewer than two ports")
    owner = state.owner()
    pc = state.port_cluster()
    apex = state.apex[ci]
    n = len(seq)
    order = sorted(range(n if n > 2 else 1), key=lambda j: owner[seq[j]] == owner[seq[(j + 1) % n]])
    faces = state.faces()
    face_of = {dart: face for face in faces for dart in face}
    choice = None
    for j in order:
        a, b = seq[j], seq[(j + 1) % n]
        rim = next(e for e, ends in state.sk_end.items() if e < 0 and set(ends) == {a, b})
        for dart in ((rim, a), (rim, b)):
            face = face_of[dart]
            if _is_region_face(state, face):
                continue
            xs = [t for _, t in face if t >= 0 and pc[t] != ci]
            if xs:
                choice = (j, rim, xs[0])
                break
        if choice:
            break
    if choice is None:
        raise NormalizationError(f"cluster {sorted(state.parts[ci])} has no outside corner for padding")
    j, rim, x = choice
    originals = sorted(state.parts[ci])
    dummies = list(range(state.next_vid, state.next_vid + h))
    state.next_vid += h
    new_ports: list[int] = []
    for d in dummies:
        state.vertices.add(d)
        qs = list(range(state.next_port, state.next_port + state.p))
        state.next_port += state.p
        state.ports[d] = qs
        new_ports.extend(qs)
    state.parts[ci] |= set(dummies)
    a = seq[j]
    forward = state.sk_end[rim][0] == a
    state.boundary[ci] = seq[: j + 1] + new_ports + seq[j + 1:]
    # subdivide the rim edge from a towards b
    current = rim
    for q in new_ports:
        if forward:
            current = state.subdivide(current, q)
        else:
            state.subdivide(current, q)  # keeps id ``current`` on the b side
    for i, d in enumerate(dummies):
        for u in originals:
            state.edges[state.next_eid] = (u, d)
            state.next_eid += 1
        for d2 in dummies[i + 1:]:
            state.edges[state.next_eid] = (d, d2)
            state.next_eid += 1
    owner = state.owner()
    for q in new_ports:
        _connect_in_common_face(state, apex, q, next(state._wheel_ids))
        eid = state.add_inter_edge(q, x, owner)
        _connect_in_common_face(state, q, x, eid)


def _connect_in_common_face(state: _State, u: int, v: int, eid: int) -> None:
    for face in state.faces():
        tails = [t for _, t in face]
        if u in tails and v in tails:
            i, j = sorted((tails.index(u), tails.index(v)))
            state.insert_chord(face, i, j, eid)
            return
    raise NormalizationError(f"no face contains both {u} and {v}")  # pragma: no cover


def collapse_singletons(cfg: KpConfiguration) -> KpConfiguration:
    """Merge all ports of every single-vertex cluster into its first port.

    Contracting the cluster's wheel keeps the skeleton planar, and the
    singleton becomes the plain vertex the edge counting treats it as.
    """
    merge = {}
    for part, seq in zip(cfg.clustering.parts, cfg.boundary):
        if len(part) == 1 and len(seq) > 1:
            for q in seq[1:]:
                merge[q] = seq[0]
    if not merge:
        return cfg
    ports = {v: tuple(q for q in qs if q not in merge) for v, qs in cfg.ports.items()}
    boundary = tuple(tuple(q for q in seq if q not in merge) for seq in cfg.boundary)
    assign = {key: merge.get(q, q) for key, q in cfg.port_assign.items()}
    return KpConfiguration(cfg.clustering, cfg.p, ports, boundary, assign)


def padding_delta(k: int, p: int, h: int) -> Fraction:
    """Edges added when a cluster is padded with h dummy vertices."""
    return p * h + h * k - Fraction(h * h, 2) - Fraction(h, 2)


def normalize(g: Graph, cfg: KpConfiguration) -> NormalizationResult:
    """Turn a configuration with a planar wheel skeleton into one whose clusters all have k vertices.

    Singletons with several ports are first collapsed to one port. Then
    the faces outside the cluster regions are triangulated with new
    inter-cluster edges. Every cluster with 1 < k_i < k vertices then
    receives h = k - k_i dummies with p ports each, and every singleton is
    removed with its hole retriangulated (3 edges fewer when the hole has
    as many corners as the singleton has edges). Each step is recorded with
    its edge delta and re-checked for skeleton planarity.
    """
    cfg.validate(g)
    if not is_planar(wheel_skeleton(g, cfg, validate=False)):
        raise GraphError("configuration skeleton is not planar")
    result = NormalizationResult(g, cfg, n_in=g.n, m_in=g.m)
    collapsed = collapse_singletons(cfg)
    state = _State(g, collapsed)
    if collapsed is not cfg:
        _record(state, result, "collapse", (), g.n, g.m, Fraction(0))
    n0, m0 = len(state.vertices), len(state.edges)
    result.stuck_faces = _triangulate_faces(state)
    _record(state, result, "triangulate", (), n0, m0, None)
    for ci in sorted(state.parts, key=lambda c: min(state.parts[c])):
        members = sorted(state.parts[ci])
        if len(members) in (1, state.k):
            continue
        n0, m0 = len(state.vertices), len(state.edges)
        h = state.k - len(members)
        _pad_cluster(state, ci)
        _record(state, result, "pad", members, n0, m0, padding_delta(state.k, state.p, h))
    for ci in sorted(state.parts, key=lambda c: min(state.parts[c])):
        if len(state.parts[ci]) != 1:
            continue
        members = sorted(state.parts[ci])
        n0, m0 = len(state.vertices), len(state.edges)
        corners = _remove_singleton(state, ci)
        # a hole with fewer than three corners means the rest of the skeleton is
        # too small to surround the vertex; nothing can be re-added there
        expected = Fraction(-3) if corners >= 3 else Fraction(-(m0 - len(state.edges)))
        _record(state, result, "remove", members, n0, m0, expected)
        result.steps[-1] = replace(result.steps[-1], base_case=corners < 3)
    result.graph = state.graph()
    result.config = state.config()
    result.config.validate(result.graph)
    return result


# ---------------------------------------------------------------------------
# Random configurations
# ---------------------------------------------------------------------------


def _stacked_triangulation(size: int, rng: random.Random) -> nx.Graph:
    t = nx.Graph([(0, 1), (1, 2), (0, 2)])
    faces = [(0, 1, 2), (0, 1, 2)]  # inner and outer face
    for v in range(3, size):
        a, b, c = faces.pop(rng.randrange(len(faces)))
        t.add_edges_from([(v, a), (v, b), (v, c)])
        faces.extend([(a, b, v), (b, c, v), (a, c, v)])
    return t


def random_configuration(k: int, p: int, regions: int, seed: int,
                         intra_prob: float = 0.7) -> tuple[Graph, KpConfiguration]:
    """A random configuration with a planar wheel skeleton.

    A stacked triangulation supplies the regions; each region becomes a
    cluster of random size <= k whose boundary is the region's rotation cut
    into contiguous port runs, each run given to one member.
    """
    rng = random.Random(seed)
    t = _stacked_triangulation(max(regions, 3), rng)
    _, emb = nx.check_planarity(t)
    next_v = 0
    next_port = 0
    parts = []
    ports: dict[int, list[int]] = {}
    boundary = []
    port_of_dart: dict[tuple[int, int], tuple[int, int]] = {}  # (region, neighbour) -> (vertex, port)
    intra = []
    for r in sorted(t.nodes):
        rot = list(emb.neighbors_cw_order(r))
        d = len(rot)
        # two clusters of size >= 2 keep at least three other ports around
        # the last singleton, so every removal leaves a hole to triangulate
        size = min(rng.randint(2 if r < 2 else 1, k), d)
        members = list(range(next_v, next_v + size))
        next_v += size
        runs = rng.randint(size, min(d, size * p))
        cuts = sorted(rng.sample(range(1, d), runs - 1))
        bounds = [0] + cuts + [d]
        owners = list(members)
        for _ in range(runs - size):
            owners.append(rng.choice([v for v in members if owners.count(v) < p]))
        rng.shuffle(owners)
        seq = []
        for idx in range(runs):
            v = owners[idx]
            q = next_port
            next_port += 1
            ports.setdefault(v, []).append(q)
            seq.append(q)
            for w in rot[bounds[idx]:bounds[idx + 1]]:
                port_of_dart[(r, w)] = (v, q)
        parts.append(frozenset(members))
        boundary.append(tuple(seq))
        for a in range(size):
            for b in range(a + 1, size):
                if rng.random() < intra_prob:
                    intra.append((members[a], members[b]))
    edges = []
    assign = {}
    for eid, (a, b) in enumerate(sorted(t.edges)):
        (u, qu), (v, qv) = port_of_dart[(a, b)], port_of_dart[(b, a)]
        edges.append((eid, u, v))
        assign[(eid, u)] = qu
        assign[(eid, v)] = qv
    base = len(edges)
    for i, (u, v) in enumerate(intra):
        edges.append((base + i, u, v))
    g = Graph(tuple(range(next_v)), tuple(edges))
    cfg = KpConfiguration(Clustering(tuple(parts), k), p,
                          {v: tuple(qs) for v, qs in ports.items()}, tuple(boundary), assign)
    cfg.validate(g)
    return g, cfg
