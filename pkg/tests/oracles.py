"""Slow, independent reference implementations used to cross-check the library."""

from __future__ import annotations

import itertools
from functools import lru_cache

import networkx as nx

from kpplanar.graph import Clustering
from kpplanar.reduction import forward_witness

Pair = tuple[int, int]


# -- planarity via Wagner minors ---------------------------------------------


def _norm(edges) -> frozenset[Pair]:
    return frozenset((min(u, v), max(u, v)) for u, v in edges if u != v)


def _has_k5_or_k33_subgraph(edges: frozenset[Pair]) -> bool:
    verts = sorted({x for e in edges for x in e})
    adj = {v: set() for v in verts}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    cand = [v for v in verts if len(adj[v]) >= 3]
    for five in itertools.combinations([v for v in cand if len(adj[v]) >= 4], 5):
        if all(b in adj[a] for a, b in itertools.combinations(five, 2)):
            return True
    for six in itertools.combinations(cand, 6):
        first = six[0]
        for rest in itertools.combinations(six[1:], 2):
            left = (first,) + rest
            right = [v for v in six if v not in left]
            if all(b in adj[a] for a in left for b in right):
                return True
    return False


@lru_cache(maxsize=None)
def _has_minor(edges: frozenset[Pair]) -> bool:
    if len(edges) < 9:
        return False
    if _has_k5_or_k33_subgraph(edges):
        return True
    verts = {x for e in edges for x in e}
    if len(verts) <= 5:
        return False
    for a, b in edges:
        merged = _norm((a if u == b else u, a if v == b else v) for u, v in edges)
        if _has_minor(merged):
            return True
    return any(_has_minor(_norm(e for e in edges if v not in e)) for v in verts)


def planar_by_minors(pairs) -> bool:
    """Wagner: planar iff no K5 or K3,3 minor. Exponential; meant for n <= 7."""
    return not _has_minor(_norm(pairs))


# -- fixed clustering by exhaustive configuration enumeration -----------------


def _restricted_growth(length: int, cap: int):
    """Port labels for ``length`` edge ends, up to relabelling, at most ``cap`` distinct."""
    def rec(prefix, top):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for x in range(min(top + 1, cap)):
            yield from rec(prefix + [x], max(top, x + 1))
    yield from rec([], 0)


def _wheel_pairs(boundaries, inter) -> list[Pair]:
    out = list(inter)
    for i, seq in enumerate(boundaries):
        n = len(seq)
        if n < 2:
            continue
        apex = ("apex", i)
        out += [(seq[0], seq[1])] if n == 2 else [(seq[j], seq[(j + 1) % n]) for j in range(n)]
        out += [(apex, q) for q in seq]
    return out


def fixed_clustering_feasible(edges, parts, p: int) -> bool:
    """Try every port grouping of edge ends and every cyclic boundary order."""
    where = {v: i for i, part in enumerate(parts) for v in part}
    inter = [(e, u, v) for e, (u, v) in enumerate(edges) if where[u] != where[v]]
    ends: dict[int, list[tuple[int, int]]] = {}
    for e, u, v in inter:
        ends.setdefault(u, []).append((e, u))
        ends.setdefault(v, []).append((e, v))
    verts = sorted(ends)
    groupings = [list(_restricted_growth(len(ends[v]), p)) for v in verts]
    for choice in itertools.product(*groupings):
        port = {}
        for v, labels in zip(verts, choice):
            for end, lab in zip(ends[v], labels):
                port[end] = (v, lab)
        cluster_ports = [sorted({q for q in port.values() if where[q[0]] == i}) for i in range(len(parts))]
        orders = []
        for qs in cluster_ports:
            if len(qs) <= 3:
                orders.append([qs])
            else:
                orders.append([[qs[0], *perm] for perm in itertools.permutations(qs[1:])])
        links = [(port[(e, u)], port[(e, v)]) for e, u, v in inter]
        for bounds in itertools.product(*orders):
            g = nx.Graph(_wheel_pairs(bounds, links))
            if nx.check_planarity(g)[0]:
                return True
    return False


# -- ISDR by exhaustive search -------------------------------------------------


def isdr_exists(edge_ends: dict[int, tuple[int, int]], crossings) -> bool:
    """Pick one endpoint of each crossing edge so that all picks are distinct."""
    crossings = list(crossings)

    def rec(i: int, used: frozenset[int]) -> bool:
        if i == len(crossings):
            return True
        a, b = crossings[i]
        for u in edge_ends[a]:
            for v in edge_ends[b]:
                if u != v and u not in used and v not in used and rec(i + 1, used | {u, v}):
                    return True
        return False

    return rec(0, frozenset())


# -- clusterings dictated by a truth assignment --------------------------------


def assignment_clustering(phi, gadget, assignment) -> Clustering:
    """Clustering read off an assignment with every false literal on its boundary.

    For an unsatisfied clause no literal can join ``open``, which leaves
    the clause K5 spread over five clusters.
    """
    if phi.satisfied_by(assignment):
        return forward_witness(phi, assignment, gadget)
    names = gadget.names
    parts = []
    for v, att in gadget.k_vertices.items():
        parts += [(v, att[0]), (att[1], att[2]), (att[3], att[4]), (att[5], att[6])]
    spare = {x: [names[f"b{x},{t}"] for t in range(1, max(pq) + 1)] for x, pq in phi.occurrences().items()}
    for cl in phi.clauses:
        for t, x in enumerate(cl.variables, 1):
            if assignment[x] != cl.positive:
                parts.append((names[f"l{cl.id},{t}"], spare[x].pop(0)))
    used = {v for part in parts for v in part}
    parts += [(v,) for v in gadget.graph.vertices if v not in used]
    return Clustering.from_parts(parts, k=2)
