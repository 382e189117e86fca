"""DOT and SVG export.

The SVG drawing is a straight-line planar layout of the graph (or of the
wheel skeleton of a configuration) computed from a rotation system by the
Chrobak-Payne grid algorithm. Cluster regions are drawn as polygons through
their ports in boundary order; two-port regions as thick strokes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from html import escape

import networkx as nx

from .graph import Graph, GraphError, KpConfiguration, RotationSystem
from .planarity import planar_embedding
from .skeleton import wheel_apexes, wheel_skeleton

Point = tuple[float, float]


def to_dot(g: Graph, cfg: KpConfiguration | None = None, clustering=None) -> str:
    """DOT text; clusters become ``subgraph cluster_i`` groups."""
    clustering = cfg.clustering if cfg is not None else clustering
    lines = ["graph G {", "  node [shape=circle];"]
    if clustering is not None:
        for i, part in enumerate(clustering.parts):
            lines.append(f"  subgraph cluster_{i} {{")
            lines.append('    style=filled; color="#dde6f5";')
            lines.append("    " + " ".join(f"{v};" for v in sorted(part)))
            lines.append("  }")
    else:
        lines += [f"  {v};" for v in sorted(g.vertices)]
    for eid, u, v in sorted(g.edges):
        lines.append(f'  {u} -- {v} [id="e{eid}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass
class Layout:
    pos: dict[int, Point]
    segments: list[tuple[int, int, str]]  # (a, b, kind) with kind "edge" or "rim"
    regions: dict[int, list[int]] = field(default_factory=dict)  # cluster index -> ports in order
    names: dict[int, str] = field(default_factory=dict)


def _straight_line(g: Graph, rot: RotationSystem, first: int | None = None, shift: int = 0,
                   mirror: bool = False) -> dict[int, Point]:
    """Grid drawing; the largest face (first one found on ties) becomes the outer face.

    ``first``, ``shift`` and ``mirror`` steer which face is found first.
    """
    order: dict[int, list[int]] = {}
    for v in g.vertices:
        seen: list[int] = []
        for e in rot.rotation.get(v, ()):
            w = g.other_end(e, v)
            if w not in seen:
                seen.append(w)
        order[v] = seen[::-1] if mirror else seen
    if first is not None and order[first]:
        r = order[first]
        order[first] = r[shift % len(r):] + r[:shift % len(r)]
    nodes = sorted(g.vertices, key=lambda v: (v != first, v))
    emb = nx.PlanarEmbedding()
    emb.add_nodes_from(nodes)
    emb.set_data({v: order[v] for v in nodes})
    emb.check_structure()
    raw = nx.combinatorial_embedding_to_pos(emb, fully_triangulate=False)
    return {v: (float(x), float(y)) for v, (x, y) in raw.items()}


def layout(g: Graph, cfg: KpConfiguration | None = None, emb: RotationSystem | None = None) -> Layout:
    """Planar straight-line layout of ``g`` or of the wheel skeleton of ``cfg``."""
    if cfg is None:
        if emb is None:
            emb = planar_embedding(g)
        elif not emb.is_planar_embedding(g):
            raise GraphError("rotation system does not match the graph or is not planar")
        pos = _straight_line(g, emb)
        return Layout(pos, [(u, v, "edge") for _, u, v in sorted(g.edges)],
                      names={v: str(v) for v in g.vertices})
    from .density import clean_wheel_embedding

    sk = wheel_skeleton(g, cfg)
    apexes = wheel_apexes(cfg)
    if emb is None:
        emb = clean_wheel_embedding(sk, planar_embedding(sk), apexes.values())
    elif not emb.is_planar_embedding(sk):
        raise GraphError("rotation system does not match the wheel skeleton or is not planar")
    apex_set = set(apexes.values())
    inter = {eid for eid, _, _ in cfg.clustering.inter_edges(g)}
    segments = []
    for eid, a, b in sorted(sk.edges):
        if a in apex_set or b in apex_set:
            continue
        segments.append((a, b, "edge" if eid in inter else "rim"))
    owner = cfg.owner
    names = {q: str(owner[q]) for q in owner}
    regions = {i: list(seq) for i, seq in enumerate(cfg.boundary)}
    best = None
    # a cluster's own wheel face must not become the outer face; try a few starts
    for mirror in (False, True):
        for first in sorted(owner)[:8]:
            for shift in range(max(1, len(emb.rotation.get(first, ())))):
                pos = _straight_line(sk, emb, first, shift, mirror)
                for q in apex_set:
                    pos.pop(q, None)
                lay = Layout(pos, segments, regions, names)
                if region_intrusions(lay) == 0:
                    return lay
                best = best or lay
    return best if best is not None else Layout({}, segments, regions, names)


def to_svg(lay: Layout, size: int = 480) -> str:
    """Deterministic SVG text for a layout."""
    xs = [p[0] for p in lay.pos.values()] or [0.0]
    ys = [p[1] for p in lay.pos.values()] or [0.0]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    margin = 24.0
    scale = (size - 2 * margin) / span

    def at(v: int) -> Point:
        x, y = lay.pos[v]
        return margin + (x - min(xs)) * scale, size - margin - (y - min(ys)) * scale

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">']
    for i, ports in sorted(lay.regions.items()):
        pts = [at(q) for q in ports]
        if len(pts) >= 3:
            coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
            out.append(f'<polygon class="region" data-cluster="{i}" points="{coords}" '
                       'fill="#dde6f5" stroke="#5b7db8" stroke-width="2"/>')
        elif len(pts) == 2:
            (x1, y1), (x2, y2) = pts
            out.append(f'<line class="region" data-cluster="{i}" x1="{x1:.2f}" y1="{y1:.2f}" '
                       f'x2="{x2:.2f}" y2="{y2:.2f}" stroke="#dde6f5" stroke-width="14" '
                       'stroke-linecap="round"/>')
    for a, b, kind in lay.segments:
        if kind == "rim" and any(len(ps) == 2 and {a, b} == set(ps) for ps in lay.regions.values()):
            continue
        (x1, y1), (x2, y2) = at(a), at(b)
        colour = "#222" if kind == "edge" else "#5b7db8"
        out.append(f'<line class="{kind}" x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                   f'stroke="{colour}" stroke-width="1.2"/>')
    for v in sorted(lay.pos):
        x, y = at(v)
        out.append(f'<circle class="node" cx="{x:.2f}" cy="{y:.2f}" r="5" fill="white" stroke="#222"/>')
        out.append(f'<text x="{x + 6:.2f}" y="{y - 6:.2f}" font-size="10">{escape(lay.names.get(v, str(v)))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def export_svg(g: Graph, cfg: KpConfiguration | None = None, emb: RotationSystem | None = None) -> str:
    return to_svg(layout(g, cfg, emb))


# -- geometric post-checks ------------------------------------------------


def _orient(a: Point, b: Point, c: Point) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _proper_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    d1, d2 = _orient(c, d, a), _orient(c, d, b)
    d3, d4 = _orient(a, b, c), _orient(a, b, d)
    return d1 * d2 < 0 and d3 * d4 < 0


def _inside(pt: Point, poly: list[Point]) -> bool:
    """Strictly inside (boundary points count as outside)."""
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        if _orient(a, b, pt) == 0 and min(a[0], b[0]) <= pt[0] <= max(a[0], b[0]) \
                and min(a[1], b[1]) <= pt[1] <= max(a[1], b[1]):
            return False
    inside = False
    for i in range(n):
        (x1, y1), (x2, y2) = poly[i], poly[(i + 1) % n]
        if (y1 > pt[1]) != (y2 > pt[1]):
            x = x1 + (pt[1] - y1) * (x2 - x1) / (y2 - y1)
            if x > pt[0]:
                inside = not inside
    return inside


def region_intrusions(lay: Layout) -> int:
    """Count inter-cluster segments or nodes that enter a cluster region's interior."""
    bad = 0
    for ports in lay.regions.values():
        if len(ports) < 3:
            continue
        poly = [lay.pos[q] for q in ports]
        own = set(ports)
        for v, pt in lay.pos.items():
            if v not in own and _inside(pt, poly):
                bad += 1
        for a, b, kind in lay.segments:
            if kind != "edge":
                continue
            pa, pb = lay.pos[a], lay.pos[b]
            mid = ((pa[0] + pb[0]) / 2, (pa[1] + pb[1]) / 2)
            if _inside(mid, poly) or any(
                    _proper_cross(pa, pb, poly[i], poly[(i + 1) % len(poly)]) for i in range(len(poly))):
                bad += 1
    return bad


def segment_crossings(lay: Layout) -> int:
    """Number of properly crossing segment pairs (zero for a planar drawing)."""
    segs = [(lay.pos[a], lay.pos[b]) for a, b, _ in lay.segments]
    return sum(1 for i in range(len(segs)) for j in range(i + 1, len(segs))
               if _proper_cross(*segs[i], *segs[j]))
