from __future__ import annotations

import re

from kpplanar.density import tight_construction
from kpplanar.export import export_svg, layout, region_intrusions, segment_crossings, to_dot, to_svg
from kpplanar.graph import Graph
from kpplanar.search import search_kp


def test_dot_lists_clusters_and_edges():
    g, cfg = tight_construction(3, 2, 1)
    dot = to_dot(g, cfg)
    assert dot.startswith("graph G {") and dot.rstrip().endswith("}")
    assert dot.count("subgraph cluster_") == 3
    assert dot.count(" -- ") == g.m


def test_triangle_svg():
    g = Graph.complete(3)
    svg = export_svg(g)
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert svg.count('class="node"') == 3
    assert svg.count('class="edge"') == 3


def test_svg_is_deterministic():
    g, cfg = tight_construction(4, 3, 2)
    assert export_svg(g, cfg) == export_svg(g, cfg)


def test_k7_witness_layout_is_clean(k7):
    _, cfg = search_kp(k7, 2, 2)
    lay = layout(k7, cfg)
    assert region_intrusions(lay) == 0
    assert segment_crossings(lay) == 0


def test_tight_layout_regions():
    g, cfg = tight_construction(5, 5, 3)
    lay = layout(g, cfg)
    assert region_intrusions(lay) == 0 and segment_crossings(lay) == 0
    assert all(len(ports) == 15 for ports in lay.regions.values())
    svg = to_svg(lay)
    assert len(re.findall(r'<polygon class="region"', svg)) == 5
