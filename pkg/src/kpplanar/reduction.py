"""Compiler from planar monotone 3-SAT to (2,2)-planarity, its forward witness and the K-vertex oracle.

Every K-vertex carries a private copy of K8 minus two adjacent edges and
is forced to pair up inside it. Variables sit on a cycle of K-vertices,
each variable owns a false-literal boundary path of ordinary vertices, and
each clause is a K5 on three literal vertices, ``open`` and a K-vertex
``closed``. Clauses hang off ``plus`` / ``minus`` in two nesting trees.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .graph import Clustering, Graph, GraphError
from .search import Budget, bounded_partitions, check_fixed_clustering


class Unsatisfied(GraphError):
    """The assignment falsifies at least one clause."""


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Clause:
    id: str
    positive: bool
    variables: tuple[int, int, int]  # left to right
    parent: str | None = None


@dataclass(frozen=True)
class SatInstance:
    """Monotone 3-SAT with a rectilinear layout given by variable order and clause nesting."""

    variable_order: tuple[int, ...]
    clauses: tuple[Clause, ...] = ()

    @property
    def by_id(self) -> dict[str, Clause]:
        return {c.id: c for c in self.clauses}

    def children(self, cid: str) -> list[Clause]:
        pos = {v: i for i, v in enumerate(self.variable_order)}
        kids = [c for c in self.clauses if c.parent == cid]
        return sorted(kids, key=lambda c: pos[c.variables[0]])

    def span(self, c: Clause) -> tuple[int, int]:
        pos = {v: i for i, v in enumerate(self.variable_order)}
        return pos[c.variables[0]], pos[c.variables[-1]]

    def gap(self, child: Clause) -> int:
        """Index g such that ``child`` nests between literals g and g+1 of its parent."""
        pos = {v: i for i, v in enumerate(self.variable_order)}
        parent = self.by_id[child.parent]
        s, e = self.span(child)
        for g in range(2):
            a, b = pos[parent.variables[g]], pos[parent.variables[g + 1]]
            if a <= s and e <= b:
                return g
        raise GraphError(f"clause {child.id} does not fit between two literals of {parent.id}")

    def validate(self) -> None:
        order = self.variable_order
        if len(set(order)) != len(order):
            raise GraphError("variable order repeats a variable")
        pos = {v: i for i, v in enumerate(order)}
        ids = [c.id for c in self.clauses]
        if len(set(ids)) != len(ids):
            raise GraphError("clause ids repeat")
        by_id = self.by_id
        for c in self.clauses:
            if len(c.variables) != 3:
                raise GraphError(f"clause {c.id} needs exactly three literals")
            for v in c.variables:
                if v not in pos:
                    raise GraphError(f"clause {c.id} uses unknown variable {v}")
            ps = [pos[v] for v in c.variables]
            if not ps[0] < ps[1] < ps[2]:
                raise GraphError(f"clause {c.id} must list distinct variables left to right")
            if c.parent is not None:
                if c.parent not in by_id:
                    raise GraphError(f"clause {c.id} has unknown parent {c.parent}")
                if by_id[c.parent].positive != c.positive:
                    raise GraphError(f"clause {c.id} nests under a clause of the other sign")
                self.gap(c)
        for c in self.clauses:  # parent chains end at a root
            seen, cur = set(), c
            while cur.parent is not None:
                if cur.id in seen:
                    raise GraphError(f"clause nesting has a cycle through {cur.id}")
                seen.add(cur.id)
                cur = by_id[cur.parent]
        for a in self.clauses:
            for b in self.clauses:
                if a.id >= b.id or a.positive != b.positive:
                    continue
                (sa, ea), (sb, eb) = self.span(a), self.span(b)
                if ea <= sb or eb <= sa:
                    continue
                inner, outer = (a, b) if sb <= sa and ea <= eb else (b, a)
                si, ei = self.span(inner)
                so, eo = self.span(outer)
                if not (so <= si and ei <= eo):
                    raise GraphError(f"clauses {a.id} and {b.id} overlap without nesting")
                if not self._descends(inner, outer):
                    raise GraphError(f"clause {inner.id} lies under {outer.id} but does not nest in it")

    def _descends(self, c: Clause, ancestor: Clause) -> bool:
        by_id = self.by_id
        while c.parent is not None:
            c = by_id[c.parent]
            if c.id == ancestor.id:
                return True
        return False

    def satisfied_by(self, assignment: Mapping[int, bool]) -> bool:
        return all(any(assignment[v] == c.positive for v in c.variables) for c in self.clauses)

    def occurrences(self) -> dict[int, tuple[int, int]]:
        """Variable -> (positive clause count, negative clause count)."""
        pos, neg = Counter(), Counter()
        for c in self.clauses:
            for v in c.variables:
                (pos if c.positive else neg)[v] += 1
        return {v: (pos[v], neg[v]) for v in self.variable_order}


_CLAUSE = re.compile(r"^(pclause|nclause)\s+(\S+)\s+(-?\d+)\s+(-?\d+)\s+(-?\d+)\s+parent\s+(\S+)$")


def parse_sat(text: str) -> SatInstance:
    """Read ``vars <n>`` and ``pclause|nclause <id> <v1> <v2> <v3> parent <id|root>`` lines.

    Variables are 1..n in left-to-right order; ``#`` starts a comment.
    """
    n = None
    clauses = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vars"):
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise GraphError(f"line {lineno}: expected 'vars <n>'")
            n = int(parts[1])
            continue
        m = _CLAUSE.match(line)
        if not m:
            raise GraphError(f"line {lineno}: cannot parse {raw.strip()!r}")
        kind, cid, a, b, c, parent = m.groups()
        clauses.append(Clause(cid, kind == "pclause", (int(a), int(b), int(c)),
                              None if parent == "root" else parent))
    if n is None:
        raise GraphError("missing 'vars <n>' line")
    phi = SatInstance(tuple(range(1, n + 1)), tuple(clauses))
    try:
        phi.validate()
    except GraphError as exc:
        raise GraphError(f"invalid instance: {exc}") from None
    return phi


def format_sat(phi: SatInstance) -> str:
    lines = [f"vars {len(phi.variable_order)}"]
    for c in phi.clauses:
        kind = "pclause" if c.positive else "nclause"
        lines.append(f"{kind} {c.id} {' '.join(map(str, c.variables))} parent {c.parent or 'root'}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Gadgets
# ---------------------------------------------------------------------------


def attach_k8minus(g: Graph, v: int) -> Graph:
    """Hang K8 minus two adjacent edges on ``v``, with ``v`` at the degree-5 position."""
    return _attach(g, v)[0]


def _attach(g: Graph, v: int) -> tuple[Graph, list[int]]:
    if not g.has_vertex(v):
        raise GraphError(f"unknown vertex {v}")
    base = g.next_vertex_id()
    new = list(range(base, base + 7))
    pairs = [(v, w) for w in new[:5]]
    pairs += [(a, b) for i, a in enumerate(new) for b in new[i + 1:]]
    eid = g.next_edge_id()
    edges = g.edges + tuple((eid + i, a, b) for i, (a, b) in enumerate(pairs))
    return Graph(g.vertices + tuple(new), edges, g.labels), new


def is_k8minus_attachment(g: Graph, v: int, members: Iterable[int]) -> bool:
    """Structural check: ``v`` plus ``members`` induce K8 minus two adjacent edges, ``v`` of degree 5."""
    members = list(members)
    if len(members) != 7:
        return False
    sub = g.induced([v, *members])
    if sub.m != 26 or not sub.is_simple():
        return False
    if sub.degree(v) != 5:
        return False
    return all(sub.degree(w) in (6, 7) for w in members)


@dataclass
class GadgetGraph:
    graph: Graph
    k_vertices: dict[int, tuple[int, ...]]  # K-vertex -> its 7 attachment vertices
    roles: dict[int, str]
    names: dict[str, int] = field(default_factory=dict)

    def role_counts(self) -> Counter:
        return Counter(self.roles.values())


class _Builder:
    def __init__(self) -> None:
        self.n = 0
        self.pairs: list[tuple[int, int]] = []
        self.roles: dict[int, str] = {}
        self.names: dict[str, int] = {}
        self.k: list[int] = []

    def vertex(self, name: str, role: str, k: bool = False) -> int:
        v = self.n
        self.n += 1
        self.roles[v] = role
        self.names[name] = v
        if k:
            self.k.append(v)
        return v

    def edge(self, a: int, b: int) -> None:
        self.pairs.append((a, b))

    def split(self, a: int, b: int, name: str, role: str) -> int:
        """Replace edge ab by a path through a new K-vertex."""
        self.pairs.remove((a, b))
        s = self.vertex(name, role, k=True)
        self.edge(a, s)
        self.edge(s, b)
        return s


def build_reduction(phi: SatInstance) -> GadgetGraph:
    """The gadget graph that is (2,2)-planar exactly when ``phi`` is satisfiable."""
    phi.validate()
    b = _Builder()
    order = phi.variable_order
    n = len(order)
    var = {x: b.vertex(f"v{x}", "variable", k=True) for x in order}
    c = [b.vertex(f"c{i},{i + 1}", "c-splitter", k=True) for i in range(n + 1)]
    plus = b.vertex("plus", "plus", k=True)
    minus = b.vertex("minus", "minus", k=True)
    for i, x in enumerate(order):
        b.edge(c[i], var[x])
        b.edge(var[x], c[i + 1])
    for s in (plus, minus):
        b.edge(c[0], s)
        b.edge(s, c[n])
    occ = phi.occurrences()
    for i, x in enumerate(order):
        length = max(occ[x])
        path = [c[i]] + [b.vertex(f"b{x},{t}", "boundary") for t in range(1, length + 1)] + [c[i + 1]]
        for u, w in zip(path, path[1:]):
            b.edge(u, w)
    lits: dict[str, list[int]] = {}
    for cl in phi.clauses:
        ls = [b.vertex(f"l{cl.id},{t}", "literal") for t in (1, 2, 3)]
        op = b.vertex(f"open{cl.id}", "open")
        cv = b.vertex(f"closed{cl.id}", "closed", k=True)
        gadget = ls + [op, cv]
        for i, u in enumerate(gadget):
            for w in gadget[i + 1:]:
                b.edge(u, w)
        for l, x in zip(ls, cl.variables):
            b.edge(l, var[x])
        lits[cl.id] = ls
    up = {}
    for cl in phi.clauses:
        l1, _, l3 = lits[cl.id]
        up[cl.id] = b.split(l1, l3, f"t{cl.id}", "tree-splitter")
    for cl in phi.clauses:
        if cl.parent is None:
            b.edge(up[cl.id], plus if cl.positive else minus)
    for parent in phi.clauses:
        for g in range(2):
            kids = [k for k in phi.children(parent.id) if phi.gap(k) == g]
            left = lits[parent.id][g]
            right = lits[parent.id][g + 1]
            for kid in kids:  # consecutive children subdivide the same edge left to right
                s = b.split(left, right, f"s{parent.id},{kid.id}", "tree-splitter")
                b.edge(s, up[kid.id])
                left = s
    g = Graph.from_pairs(b.pairs, vertices=range(b.n))
    k_vertices = {}
    roles = dict(b.roles)
    for v in b.k:
        g, new = _attach(g, v)
        k_vertices[v] = tuple(new)
        for w in new:
            roles[w] = "attachment"
    return GadgetGraph(g, k_vertices, roles, b.names)


def reduction_size(phi: SatInstance) -> tuple[int, int]:
    """Closed-form (vertex, edge) counts of ``build_reduction(phi)``."""
    n = len(phi.variable_order)
    cl = len(phi.clauses)
    nested = sum(1 for c in phi.clauses if c.parent is not None)
    boundary = sum(max(pq) for pq in phi.occurrences().values())
    k_count = n + (n + 1) + 2 + cl + cl + nested
    vertices = 8 * k_count + boundary + 4 * cl
    edges = (2 * n + 4) + (boundary + n) + cl * (10 + 1 + 3) + (cl - nested) + 2 * nested + 26 * k_count
    return vertices, edges


# ---------------------------------------------------------------------------
# Forward witness
# ---------------------------------------------------------------------------


def forward_witness(phi: SatInstance, assignment: Mapping[int, bool],
                    gadget: GadgetGraph | None = None) -> Clustering:
    """A (2,2) clustering of the gadget graph built from a satisfying assignment.

    Each K-vertex pairs with an attachment vertex and the other six pair
    among themselves. In every clause one literal whose variable agrees with
    the clause sign joins ``open``; every false literal joins a fresh vertex
    of its variable's false-literal boundary and the remaining true literals
    stay alone.
    """
    if set(assignment) != set(phi.variable_order):
        raise GraphError("assignment must give a value to every variable")
    if not phi.satisfied_by(assignment):
        raise Unsatisfied("assignment falsifies a clause")
    gadget = gadget or build_reduction(phi)
    names = gadget.names
    parts: list[tuple[int, ...]] = []
    for v, att in gadget.k_vertices.items():
        parts += [(v, att[0]), (att[1], att[2]), (att[3], att[4]), (att[5], att[6])]
    spare = {x: [names[f"b{x},{t}"] for t in range(1, max(pq) + 1)]
             for x, pq in phi.occurrences().items()}
    for cl in phi.clauses:
        lits = [names[f"l{cl.id},{t}"] for t in (1, 2, 3)]
        true_at = next(t for t, x in enumerate(cl.variables) if assignment[x] == cl.positive)
        for t, (l, x) in enumerate(zip(lits, cl.variables)):
            if t == true_at:
                parts.append((l, names[f"open{cl.id}"]))
            elif assignment[x] != cl.positive:  # only false literals cross the boundary
                parts.append((l, spare[x].pop(0)))
    clustered = {v for part in parts for v in part}
    parts += [(v,) for v in gadget.graph.vertices if v not in clustered]
    return Clustering.from_parts(parts, k=2)


# ---------------------------------------------------------------------------
# K-vertex oracle
# ---------------------------------------------------------------------------


@dataclass
class KVertexReport:
    partitions: int
    accepted: list[list[tuple[int, ...]]]
    all_accepted_internal: bool
    apex_unpaired_rejected: bool
    three_pairs_min_inter: int
    three_pairs_bound: int
    three_pairs_rejected: bool

    def ok(self) -> bool:
        return (self.partitions == 764 and bool(self.accepted) and self.all_accepted_internal
                and self.apex_unpaired_rejected and self.three_pairs_rejected
                and self.three_pairs_min_inter > self.three_pairs_bound)


def k_vertex_oracle(budget: Budget | int | None = None) -> KVertexReport:
    """Check every partition of K8 minus two adjacent edges into parts of size <= 2 with p = 2.

    Vertex 0 is the degree-5 vertex. A clustering that leaves it alone
    stands for pairing it outside the gadget. Accepted clusterings must be
    perfect pairings; the three-pairs-plus-two-singletons case is also
    measured against the skeleton edge bound.
    """
    g = attach_k8minus(Graph((0,), ()), 0)
    p = 2
    accepted, count = [], 0
    apex_ok = True
    three_min, three_bound, three_rejected = None, None, True
    for parts in bounded_partitions(list(g.vertices), 2):
        count += 1
        c = Clustering.from_parts(parts, k=2)
        ok = check_fixed_clustering(g, c, p, budget) is not None
        if ok:
            accepted.append(sorted(parts))
        if any(len(part) == 1 and 0 in part for part in parts) and ok:
            apex_ok = False
        pairs = [part for part in parts if len(part) == 2]
        if len(pairs) == 3:
            inter = len(c.inter_edges(g))
            n_s = p * 2 * len(pairs) + (len(parts) - len(pairs))
            bound = n_s + 3 * len(parts) - 6 - (len(parts) - len(pairs))
            three_min = inter if three_min is None else min(three_min, inter)
            three_bound = bound
            three_rejected &= not ok
    internal = all(all(len(part) == 2 for part in parts) for parts in accepted)
    return KVertexReport(count, accepted, internal, apex_ok, three_min, three_bound, three_rejected)
