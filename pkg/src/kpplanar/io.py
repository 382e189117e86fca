"""Line-oriented text format for graphs, clusterings, configurations, crossings and rotations.

Directives, one per line, ``#`` starts a comment::

    n <count>                 vertices 0..count-1
    e <eid> <u> <v>           edge
    k <k>                     maximum cluster size (defaults to the largest part)
    c <cid> <v...>            cluster part
    p <p>                     port bound of a configuration
    port <v> <q...>           ports owned by vertex v
    b <cid> <q...>            cyclic boundary of cluster cid
    a <eid> <v> <q>           edge eid leaves vertex v at port q
    x <eid1> <eid2>           crossing pair
    rot <v> <eid...>          rotation at v

They must appear in this order. With crossings present, ``rot`` lines
describe the planarization (dummy vertices and segment ids as produced by
the planarization builder).
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Clustering, Graph, GraphError, KpConfiguration, OnePlaneGraph, RotationSystem
from .oneplanar import one_plane

_ORDER = ["n", "e", "k", "c", "p", "port", "b", "a", "x", "rot"]


class ParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass
class Document:
    graph: Graph
    clustering: Clustering | None = None
    config: KpConfiguration | None = None
    crossings: tuple[tuple[int, int], ...] = ()
    rotation: RotationSystem | None = None

    def one_plane(self) -> OnePlaneGraph:
        return one_plane(self.graph, self.crossings, self.rotation)


def parse(text: str) -> Document:
    n = None
    edges: list[tuple[int, int, int]] = []
    k = None
    parts: dict[int, tuple[int, ...]] = {}
    p = None
    ports: dict[int, tuple[int, ...]] = {}
    boundary: dict[int, tuple[int, ...]] = {}
    assign: dict[tuple[int, int], int] = {}
    crossings: list[tuple[int, int]] = []
    rotation: dict[int, tuple[int, ...]] = {}
    seen_ids: set[int] = set()
    stage = 0
    lineno = 1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        key, args = line[0], line[1:]
        if key not in _ORDER:
            raise ParseError(lineno, f"unknown directive {key!r}")
        rank = _ORDER.index(key)
        if rank < stage:
            raise ParseError(lineno, f"directive {key!r} out of order (expected order: {', '.join(_ORDER)})")
        stage = rank
        try:
            nums = [int(a) for a in args]
        except ValueError:
            raise ParseError(lineno, f"non-integer argument in {raw.strip()!r}") from None

        def need(count: int, exact: bool = True) -> None:
            if (len(nums) != count) if exact else (len(nums) < count):
                raise ParseError(lineno, f"{key!r} expects {'' if exact else 'at least '}{count} argument(s)")

        if key == "n":
            need(1)
            if n is not None:
                raise ParseError(lineno, "duplicate 'n' line")
            if nums[0] < 0:
                raise ParseError(lineno, "vertex count must be non-negative")
            n = nums[0]
        elif key == "e":
            need(3)
            eid, u, v = nums
            if n is None:
                raise ParseError(lineno, "'e' before 'n'")
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(lineno, f"edge {eid} has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ParseError(lineno, f"edge {eid} is a self-loop")
            if eid in seen_ids:
                raise ParseError(lineno, f"duplicate edge id {eid}")
            seen_ids.add(eid)
            edges.append((eid, u, v))
        elif key == "k":
            need(1)
            k = nums[0]
        elif key == "c":
            need(2, exact=False)
            if nums[0] in parts:
                raise ParseError(lineno, f"duplicate cluster id {nums[0]}")
            parts[nums[0]] = tuple(nums[1:])
        elif key == "p":
            need(1)
            p = nums[0]
        elif key == "port":
            need(1, exact=False)
            ports[nums[0]] = tuple(nums[1:])
        elif key == "b":
            need(2, exact=False)
            boundary[nums[0]] = tuple(nums[1:])
        elif key == "a":
            need(3)
            assign[(nums[0], nums[1])] = nums[2]
        elif key == "x":
            need(2)
            crossings.append((nums[0], nums[1]))
        elif key == "rot":
            need(1, exact=False)
            rotation[nums[0]] = tuple(nums[1:])
    if n is None:
        raise ParseError(1, "missing 'n' line")
    try:
        g = Graph(tuple(range(n)), tuple(edges))
        clustering = None
        if parts:
            order = sorted(parts)
            size = max(len(parts[c]) for c in order)
            clustering = Clustering.from_parts([parts[c] for c in order], k=k or size)
            clustering.validate(g)
        config = None
        if p is not None:
            if clustering is None:
                raise GraphError("a configuration needs 'c' lines")
            by_part = {frozenset(parts[c]): boundary.get(c, ()) for c in parts}
            cfg_boundary = tuple(by_part[part] for part in clustering.parts)
            config = KpConfiguration(clustering, p, ports, cfg_boundary, assign)
            config.validate(g)
        rot = RotationSystem(rotation) if rotation else None
        if rot is not None and not crossings:
            rot.validate(g)
    except GraphError as exc:
        raise ParseError(lineno, str(exc)) from None
    return Document(g, clustering, config, tuple(crossings), rot)


def format_document(doc: Document) -> str:
    g = doc.graph
    order = sorted(g.vertices)
    if order != list(range(len(order))):
        raise GraphError("text format needs vertices numbered 0..n-1")
    lines = [f"n {g.n}"]
    lines += [f"e {eid} {u} {v}" for eid, u, v in sorted(g.edges)]
    clustering = doc.config.clustering if doc.config is not None else doc.clustering
    if clustering is not None:
        lines.append(f"k {clustering.k}")
        lines += [f"c {i} {' '.join(map(str, sorted(part)))}" for i, part in enumerate(clustering.parts)]
    if doc.config is not None:
        cfg = doc.config
        lines.append(f"p {cfg.p}")
        lines += [f"port {v} {' '.join(map(str, qs))}" for v, qs in sorted(cfg.ports.items()) if qs]
        lines += [f"b {i} {' '.join(map(str, seq))}" for i, seq in enumerate(cfg.boundary) if seq]
        lines += [f"a {e} {v} {q}" for (e, v), q in sorted(cfg.port_assign.items())]
    lines += [f"x {a} {b}" for a, b in sorted(doc.crossings)]
    if doc.rotation is not None:
        lines += [f"rot {v} {' '.join(map(str, r))}".rstrip() for v, r in sorted(doc.rotation.rotation.items())]
    return "\n".join(lines) + "\n"


def from_one_plane(og: OnePlaneGraph) -> Document:
    return Document(og.graph, crossings=tuple(sorted(og.crossings)), rotation=og.planarization.rotation)
