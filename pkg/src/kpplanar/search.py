"""Exact (k,p)-planarity decisions for small graphs.

A configuration is accepted when its wheel skeleton is planar. For a fixed
clustering the search picks, cluster by cluster, a cyclic port pattern and
then a port for every inter-cluster edge end. Every partial state is pruned
with a planarity test on a minor that any completion must contain: clusters
not reached yet are contracted to their apex, and so are the ports of
vertices whose edges are not assigned yet.

The instance is first split along the blocks of the graph formed by the
inter-cluster edges together with a clique on every cluster. Solutions on
different blocks meet in single skeleton vertices, so the skeletons form a
1-sum and the blocks can be decided independently.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import networkx as nx

from .graph import Clustering, Graph, GraphError, KpConfiguration, max_short_path_count
from .planarity import is_planar, is_planar_pairs
from .skeleton import wheel_skeleton

DEFAULT_BUDGET = 10**8


class Exhausted(RuntimeError):
    """The enumeration budget ran out before a decision was reached."""

    def __init__(self, used: int, limit: int):
        super().__init__(f"search budget exhausted after {used} steps (limit {limit})")
        self.used = used
        self.limit = limit


class Budget:
    def __init__(self, limit: int = DEFAULT_BUDGET):
        self.limit = limit
        self.used = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise Exhausted(self.used, self.limit)


def _as_budget(budget: Budget | int | None) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(DEFAULT_BUDGET if budget is None else budget)


# ---------------------------------------------------------------------------
# Boundary patterns
# ---------------------------------------------------------------------------


def _dihedral_images(seq: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    n = len(seq)
    for r in range(n):
        rot = seq[r:] + seq[:r]
        yield rot
        yield tuple(reversed(rot))


def boundary_patterns(caps: dict[int, int]) -> list[tuple[int, ...]]:
    """Cyclic owner sequences for one cluster, up to rotation and reflection.

    ``caps[v]`` is the largest number of ports vertex ``v`` may receive.
    Every vertex appears at least once and no two cyclically consecutive
    ports share an owner (two such ports can always be merged into one).
    """
    members = sorted(caps)
    if not members:
        return [()]
    if len(members) == 1:
        return [(members[0],)]
    first = members[0]
    total_cap = sum(caps.values())
    found: set[tuple[int, ...]] = set()

    def extend(seq: list[int], used: dict[int, int]) -> Iterator[tuple[int, ...]]:
        if all(used[v] >= 1 for v in members) and seq[-1] != seq[0]:
            yield tuple(seq)
        if len(seq) == total_cap:
            return
        for v in members:
            if v != seq[-1] and used[v] < caps[v]:
                used[v] += 1
                seq.append(v)
                yield from extend(seq, used)
                seq.pop()
                used[v] -= 1

    used = {v: 0 for v in members}
    used[first] = 1
    for seq in extend([first], used):
        canon = min(_dihedral_images(seq))
        found.add(canon)
    return sorted(found, key=lambda s: (len(s), s))


def _stabilizer(seq: tuple[int, ...]) -> list[list[int]]:
    """Non-identity dihedral position permutations preserving the owner sequence."""
    n = len(seq)
    out = []
    for r in range(n):
        for refl in (False, True):
            perm = [((r - i) % n) if refl else ((i + r) % n) for i in range(n)]
            if perm == list(range(n)):
                continue
            if all(seq[perm[i]] == seq[i] for i in range(n)):
                out.append(perm)
    return out


# ---------------------------------------------------------------------------
# Block solver
# ---------------------------------------------------------------------------


@dataclass
class BlockSolution:
    ports: dict[int, tuple[int, ...]]
    boundary: dict[int, tuple[int, ...]]  # part index -> ports
    assign: dict[tuple[int, int], int]


class _BlockSolver:
    """Port-pattern and edge-end search for one block."""

    def __init__(self, parts: list[tuple[int, ...]], edges: list[tuple[int, int, int]],
                 p: int, budget: Budget):
        self.p = p
        self.budget = budget
        self.edges = edges
        self.part_of = {v: i for i, part in enumerate(parts) for v in part}
        ends: dict[int, list[int]] = {v: [] for part in parts for v in part}
        for eid, u, v in edges:
            ends[u].append(eid)
            ends[v].append(eid)
        self.other = {}
        for eid, u, v in edges:
            self.other[(eid, u)] = v
            self.other[(eid, v)] = u
        for v, es in ends.items():
            es.sort(key=lambda e: (self.part_of[self.other[(e, v)]], self.other[(e, v)], e))
        self.ends = ends
        self.caps = {v: min(p, len(es)) for v, es in ends.items() if es}
        active = []
        for part in parts:
            act = sorted((v for v in part if ends[v]), key=lambda v: (-len(ends[v]), v))
            active.append(act)
        self.active = active
        order = [i for i in range(len(parts)) if active[i]]
        order.sort(key=lambda i: (-sum(len(ends[v]) for v in active[i]), i))
        self.order = order
        self.n_parts = len(parts)
        self.max_len = [sum(self.caps[v] for v in act) for act in active]
        base = self.n_parts
        self.port_base = []
        for i in range(self.n_parts):
            self.port_base.append(base)
            base += max(self.max_len[i], 1)
        self.m_simple = len({(min(u, v), max(u, v)) for _, u, v in edges})
        # search state
        self.seq: dict[int, tuple[int, ...]] = {}  # part -> owner pattern
        self.port_ids: dict[int, list[int]] = {}  # part -> port ids along the boundary
        self.vports: dict[int, list[int]] = {}  # vertex -> its port ids
        self.started: set[int] = set()
        self.assign: dict[tuple[int, int], int] = {}
        self.stab: dict[int, list[dict[int, int]]] = {}

    # -- relaxation ------------------------------------------------------

    def _point(self, v: int) -> int | None:
        """Skeleton vertex standing in for ``v`` when it has at most one port."""
        i = self.part_of[v]
        if i not in self.seq or v not in self.started and len(self.vports[v]) > 1:
            return i
        if len(self.vports[v]) == 1:
            return i if len(self.port_ids[i]) == 1 else self.vports[v][0]
        return None

    def _end(self, eid: int, v: int) -> int | None:
        pt = self._point(v)
        if pt is not None:
            return pt
        return self.assign.get((eid, v))

    def _port_vertex(self, i: int, q: int, owner: int) -> int:
        if len(self.vports[owner]) > 1 and owner not in self.started:
            return i
        return q

    def _relaxation_planar(self) -> bool:
        self.budget.spend()
        pairs = []
        for i, seq in self.seq.items():
            ids = self.port_ids[i]
            if len(ids) < 2:
                continue
            mapped = [self._port_vertex(i, q, o) for q, o in zip(ids, seq)]
            n = len(mapped)
            rim = [(mapped[0], mapped[1])] if n == 2 else [(mapped[j], mapped[(j + 1) % n]) for j in range(n)]
            for a, b in rim:
                if a != b:
                    pairs.append((a, b))
            for q in mapped:
                if q != i:
                    pairs.append((i, q))
        for eid, u, v in self.edges:
            a = self._end(eid, u)
            if a is None:
                continue
            b = self._end(eid, v)
            if b is None:
                continue
            pairs.append((a, b))
        return is_planar_pairs(pairs)

    def _euler_ok(self) -> bool:
        n_s = 0
        single = 0
        parts = 0
        for i in range(self.n_parts):
            if not self.active[i]:
                continue
            parts += 1
            length = len(self.seq[i]) if i in self.seq else self.max_len[i]
            n_s += length
            if length == 1:
                single += 1
        if n_s < 3:
            return True
        return self.m_simple <= n_s + 3 * parts - 6 - single

    # -- search ----------------------------------------------------------

    def solve(self) -> BlockSolution | None:
        if not self._euler_ok() or not self._relaxation_planar():
            return None
        if self._choose_pattern(0):
            return self._solution()
        return None

    def _choose_pattern(self, pos: int) -> bool:
        if pos == len(self.order):
            return True
        i = self.order[pos]
        caps = {v: self.caps[v] for v in self.active[i]}
        for seq in boundary_patterns(caps):
            self.budget.spend()
            base = self.port_base[i]
            ids = list(range(base, base + len(seq)))
            self.seq[i] = seq
            self.port_ids[i] = ids
            for v in self.active[i]:
                self.vports[v] = [q for q, o in zip(ids, seq) if o == v]
            self.stab[i] = [{ids[j]: ids[perm[j]] for j in range(len(seq))} for perm in _stabilizer(seq)]
            if self._euler_ok() and self._relaxation_planar():
                multi = [v for v in self.active[i] if len(self.vports[v]) > 1]
                if self._assign_vertex(pos, multi, 0):
                    return True
            del self.seq[i], self.port_ids[i], self.stab[i]
            for v in self.active[i]:
                self.vports.pop(v, None)
        return False

    def _assign_vertex(self, pos: int, multi: list[int], idx: int) -> bool:
        if idx == len(multi):
            return self._choose_pattern(pos + 1)
        v = multi[idx]
        self.started.add(v)
        if self._assign_end(pos, multi, idx, 0, set()):
            return True
        self.started.discard(v)
        return False

    def _lex_ok(self, i: int) -> bool:
        """Lex-leader test of the part's assigned ends against its symmetries."""
        if not self.stab[i]:
            return True
        seq_vals = []
        for v in self.active[i]:
            if len(self.vports[v]) > 1 and v in self.started:
                for eid in self.ends[v]:
                    q = self.assign.get((eid, v))
                    if q is None:
                        break
                    seq_vals.append(q)
        for g in self.stab[i]:
            for q in seq_vals:
                gq = g[q]
                if gq != q:
                    if gq < q:
                        return False
                    break
        return True

    def _assign_end(self, pos: int, multi: list[int], idx: int, j: int, used: set[int]) -> bool:
        v = multi[idx]
        ends = self.ends[v]
        ports = self.vports[v]
        if j == len(ends):
            return self._assign_vertex(pos, multi, idx + 1)
        remaining = len(ends) - j
        i = self.part_of[v]
        for q in ports:
            if q not in used and len(ports) - len(used) - 1 > remaining - 1:
                continue
            if q in used and len(ports) - len(used) > remaining - 1:
                continue
            eid = ends[j]
            self.assign[(eid, v)] = q
            fresh = q not in used
            if fresh:
                used.add(q)
            if self._lex_ok(i) and self._relaxation_planar():
                if self._assign_end(pos, multi, idx, j + 1, used):
                    return True
            if fresh:
                used.discard(q)
            del self.assign[(eid, v)]
        return False

    def _solution(self) -> BlockSolution:
        ports = {v: tuple(qs) for v, qs in self.vports.items()}
        boundary = {i: tuple(self.port_ids[i]) for i in self.seq}
        assign = {}
        for eid, u, v in self.edges:
            for x in (u, v):
                qs = self.vports[x]
                assign[(eid, x)] = qs[0] if len(qs) == 1 else self.assign[(eid, x)]
        return BlockSolution(ports, boundary, assign)


# ---------------------------------------------------------------------------
# Fixed clustering
# ---------------------------------------------------------------------------


def _cluster_blocks(vertices: Iterable[int], inter: list[tuple[int, int, int]],
                    c: Clustering) -> list[set[int]]:
    h = nx.Graph()
    h.add_nodes_from(vertices)
    h.add_edges_from((u, v) for _, u, v in inter)
    for part in c.parts:
        h.add_edges_from(itertools.combinations(sorted(part), 2))
    return [set(b) for b in nx.biconnected_components(h)]


class FixedClusteringChecker:
    """Decides fixed clusterings of one graph, caching per-block verdicts.

    The cache key is the block's vertex set together with the clusters that
    live inside it, so a checker can be reused across many clusterings of
    the same graph (as the clustering search does).
    """

    def __init__(self, g: Graph, p: int, budget: Budget | int | None = None):
        self.g = g
        self.p = p
        self.budget = _as_budget(budget)
        self.cache: dict[tuple, BlockSolution | None] = {}

    def block_key(self, block: set[int], c: Clustering) -> tuple:
        parts = tuple(sorted(tuple(sorted(part)) for part in c.parts
                             if len(part) > 1 and part <= block))
        return (frozenset(block), parts)

    def solve_block(self, block: set[int], c: Clustering, g: Graph | None = None) -> BlockSolution | None:
        g = self.g if g is None else g
        key = self.block_key(block, c)
        if key in self.cache:
            return self.cache[key]
        inner = [part for part in c.parts if len(part) > 1 and part <= block]
        covered = set().union(*inner) if inner else set()
        parts = [tuple(sorted(part)) for part in inner] + [(v,) for v in sorted(block - covered)]
        edges = [(eid, u, v) for eid, u, v in g.edges
                 if u in block and v in block and not c.same_cluster(u, v)]
        sol = _BlockSolver(parts, edges, self.p, self.budget).solve()
        if sol is not None:
            # re-key boundary by cluster vertex tuple so the caller can map it back
            sol = BlockSolution(sol.ports,
                                {parts[i]: b for i, b in sol.boundary.items()},
                                sol.assign)
        self.cache[key] = sol
        return sol

    def blocks(self, c: Clustering, g: Graph | None = None) -> list[set[int]]:
        g = self.g if g is None else g
        return _cluster_blocks(g.vertices, c.inter_edges(g), c)

    def feasible(self, c: Clustering, g: Graph | None = None) -> bool:
        """Verdict only; ``g`` may be an induced subgraph of the checker's graph."""
        for block in self.blocks(c, g):
            if self.solve_block(block, c, g) is None:
                return False
        return True

    def check(self, c: Clustering) -> KpConfiguration | None:
        g = self.g
        c.validate(g)
        solutions = []
        for block in self.blocks(c):
            sol = self.solve_block(block, c)
            if sol is None:
                return None
            solutions.append((block, sol))
        return _assemble(g, c, self.p, solutions)


def _assemble(g: Graph, c: Clustering, p: int,
              solutions: list[tuple[set[int], BlockSolution]]) -> KpConfiguration:
    counter = itertools.count()
    ports: dict[int, list[int]] = {v: [] for v in g.vertices}
    boundary: dict[int, list[int]] = {i: [] for i in range(len(c.parts))}
    assign: dict[tuple[int, int], int] = {}
    home: dict[int, int] = {}  # vertex -> a global port id to hang foreign blocks on
    deferred: list[tuple[int, int]] = []  # (edge id, vertex) ends waiting for a home port

    # clusters with two or more vertices are solved inside exactly one block
    for block, sol in solutions:
        local_parts = [key for key in sol.boundary if len(key) > 1]
        remap = {}
        for key in local_parts:
            ci = c.cluster_of[key[0]]
            for q in sol.boundary[key]:
                remap[q] = next(counter)
                boundary[ci].append(remap[q])
        for v, qs in sol.ports.items():
            if len(c.parts[c.cluster_of[v]]) > 1 and c.parts[c.cluster_of[v]] <= block:
                ports[v].extend(remap[q] for q in qs)
        for (eid, v), q in sol.assign.items():
            if q in remap:
                assign[(eid, v)] = remap[q]
            else:
                deferred.append((eid, v))
    for v in g.vertices:
        if ports[v]:
            home[v] = ports[v][0]
    for eid, v in deferred:
        if v not in home:
            q = next(counter)
            ports[v].append(q)
            boundary[c.cluster_of[v]].append(q)
            home[v] = q
        assign[(eid, v)] = home[v]
    if any(len(qs) > p for qs in ports.values()):  # pragma: no cover - guarded by construction
        raise GraphError("assembled configuration exceeds the port bound")
    cfg = KpConfiguration(
        clustering=c,
        p=p,
        ports={v: tuple(qs) for v, qs in ports.items() if qs},
        boundary=tuple(tuple(boundary[i]) for i in range(len(c.parts))),
        port_assign=assign,
    )
    return cfg


def configuration_is_planar(g: Graph, cfg: KpConfiguration) -> bool:
    """Independent acceptance test: validate ``cfg`` and test its wheel skeleton."""
    cfg.validate(g)
    return is_planar(wheel_skeleton(g, cfg, validate=False))


def check_fixed_clustering(g: Graph, c: Clustering, p: int,
                           budget: Budget | int | None = None) -> KpConfiguration | None:
    """A witness configuration for clustering ``c`` with at most ``p`` ports per vertex, or None.

    Raises Exhausted when the budget runs out first.
    """
    if p < 1:
        raise GraphError("p must be positive")
    c.validate(g)
    cfg = FixedClusteringChecker(g, p, budget).check(c)
    if cfg is not None and not configuration_is_planar(g, cfg):  # pragma: no cover - soundness guard
        raise AssertionError("internal error: assembled witness fails the skeleton test")
    return cfg


# ---------------------------------------------------------------------------
# Clustering search
# ---------------------------------------------------------------------------


def bounded_partitions(items: list[int], k: int) -> Iterator[list[tuple[int, ...]]]:
    """All set partitions of ``items`` into parts of size at most ``k``.

    The part containing the first remaining item is chosen first, so every
    partition is produced exactly once.
    """
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for size in range(0, min(k - 1, len(rest)) + 1):
        for mates in itertools.combinations(rest, size):
            remaining = [x for x in rest if x not in mates]
            for tail in bounded_partitions(remaining, k):
                yield [(first,) + mates] + tail


def _vertex_order(g: Graph) -> list[int]:
    """Vertices grouped by biconnected block, smallest blocks first."""
    blocks = sorted((sorted(b) for b in nx.biconnected_components(g.to_networkx())),
                    key=lambda b: (len(b), b))
    order: list[int] = []
    seen: set[int] = set()
    for block in blocks:
        for v in block:
            if v not in seen:
                seen.add(v)
                order.append(v)
    for v in g.vertices:
        if v not in seen:
            order.append(v)
    return order


def _candidate_parts(g: Graph, v: int, free: list[int], k: int, rank: dict[int, int]) -> list[tuple[int, ...]]:
    """Parts containing ``v`` drawn from ``free``: neighbour groups, then the singleton, then the rest."""
    nbrs = [w for w in free if g.has_edge(v, w)]
    others = [w for w in free if not g.has_edge(v, w)]
    out: list[tuple[int, ...]] = []
    for size in range(1, k):
        for mates in itertools.combinations(nbrs, size):
            out.append((v,) + mates)
    out.append((v,))
    for size in range(1, k):
        for mates in itertools.combinations(nbrs + others, size):
            if any(w in others for w in mates):
                out.append((v,) + mates)
    return out


def search_kp(g: Graph, k: int, p: int, budget: Budget | int | None = None
              ) -> tuple[Clustering, KpConfiguration] | None:
    """Exhaustive search for a clustering into parts of size <= k admitting a (k,p) witness.

    Clusterings are built vertex by vertex. Whenever a set of vertices has
    all its clusters fixed, the induced subgraph must already admit a
    witness (restricting a representation to an induced subgraph keeps it
    valid), which prunes the enumeration without losing completeness.
    Raises Exhausted when the budget runs out.
    """
    if k < 1 or p < 1:
        raise GraphError("k and p must be positive")
    budget = _as_budget(budget)
    checker = FixedClusteringChecker(g, p, budget)
    order = _vertex_order(g)
    rank = {v: i for i, v in enumerate(order)}
    assigned: dict[int, tuple[int, ...]] = {}

    def closed_ok() -> bool:
        closed = sorted(assigned)
        sub = g.induced(closed)
        c = Clustering.from_parts({assigned[v] for v in closed}, k)
        return checker.feasible(c, sub)

    def dfs(idx: int) -> bool:
        while idx < len(order) and order[idx] in assigned:
            idx += 1
        if idx == len(order):
            return True
        v = order[idx]
        free = [w for w in order[idx + 1:] if w not in assigned]
        for part in _candidate_parts(g, v, free, k, rank):
            budget.spend()
            for w in part:
                assigned[w] = part
            if closed_ok() and dfs(idx + 1):
                return True
            for w in part:
                del assigned[w]
        return False

    if not dfs(0):
        return None
    c = Clustering.from_parts({part for part in assigned.values()}, k)
    cfg = checker.check(c)
    if cfg is None or not configuration_is_planar(g, cfg):  # pragma: no cover - soundness guard
        raise AssertionError("internal error: search witness fails the skeleton test")
    return c, cfg


# ---------------------------------------------------------------------------
# Special cases
# ---------------------------------------------------------------------------


def test_k1(g: Graph, k: int) -> bool:
    """(k,1)-planarity for k <= 3, which coincides with planarity."""
    if k not in (1, 2, 3):
        raise GraphError("test_k1 covers k in {1, 2, 3}; use search_kp or test_41")
    return is_planar(g)


test_k1.__test__ = False  # keep pytest from collecting it


def ic_planar_crossings(g: Graph, budget: Budget | int | None = None) -> list[tuple[int, int]] | None:
    """Brute-force IC-planarity: a set of vertex-disjoint crossing pairs whose planarization is planar.

    Returns the crossing pairs (possibly empty) or None. Sets are tried by
    increasing size; a crossing touches four vertices, so at most n // 4 are
    needed, and an IC-planar graph has at most 13n/4 - 6 edges.
    """
    budget = _as_budget(budget)
    simple = g.simplified()
    if is_planar(simple):
        return []
    n = simple.n
    if 4 * len(simple.edges) > 13 * n - 24:
        return None
    edges = list(simple.edges)
    candidates = []
    for (e1, a, b), (e2, c, d) in itertools.combinations(edges, 2):
        if len({a, b, c, d}) == 4:
            candidates.append((e1, e2, frozenset((a, b, c, d))))
    for size in range(1, n // 4 + 1):
        for combo in itertools.combinations(candidates, size):
            budget.spend()
            touched: set[int] = set()
            ok = True
            for _, _, vs in combo:
                if touched & vs:
                    ok = False
                    break
                touched |= vs
            if not ok:
                continue
            if _planarization_planar(simple, [(e1, e2) for e1, e2, _ in combo]):
                return [(e1, e2) for e1, e2, _ in combo]
    return None


def _planarization_planar(g: Graph, pairs: list[tuple[int, int]]) -> bool:
    crossed = {e for pair in pairs for e in pair}
    out = [(u, v) for eid, u, v in g.edges if eid not in crossed]
    dummy = g.next_vertex_id()
    for e1, e2 in pairs:
        for e in (e1, e2):
            u, v = g.endpoints(e)
            out.append((u, dummy))
            out.append((v, dummy))
        dummy += 1
    return is_planar_pairs(out)


def test_41(g: Graph, budget: Budget | int | None = None) -> bool:
    """(4,1)-planarity, decided as IC-planarity by brute force."""
    return ic_planar_crossings(g, budget) is not None


test_41.__test__ = False


@dataclass(frozen=True)
class Certificate:
    """Counting argument that no clustering into pairs has a planar graph of clusters."""

    n: int
    m: int
    max_short_paths: int
    q_min: int
    max_pairs: int

    def __str__(self) -> str:
        return f"not (2,p)-planar, q_min={self.q_min} > {self.max_pairs}"


def counting_certificate(g: Graph) -> Certificate | None:
    """Pair-contraction counting certificate against (2,p)-planarity for every p.

    Contracting q disjoint pairs removes one vertex per pair and, per the
    counting argument, at most ``c`` edges per pair, where ``c`` is the
    largest number of paths of length <= 2 between two vertices. Planarity
    of the graph of clusters then forces q >= (m - 3n + 6) / (c - 3); if
    that exceeds floor(n / 2) no clustering works. For c <= 3 the bound
    q >= m - 3n + 6 (the c = 4 case) is used.
    """
    n, m = g.n, len(g.simple_edges())
    excess = m - 3 * n + 6
    if excess <= 0:
        return None
    c = max_short_path_count(g)
    q_min = math.ceil(excess / (c - 3)) if c > 3 else excess
    if q_min > n // 2:
        return Certificate(n=n, m=m, max_short_paths=c, q_min=q_min, max_pairs=n // 2)
    return None
