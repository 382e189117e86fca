from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kpplanar import io
from kpplanar.density import tight_construction
from kpplanar.graph import Clustering, Graph
from kpplanar.oneplanar import gen_h
from kpplanar.search import bounded_partitions


@st.composite
def clustered(draw):
    n = draw(st.integers(1, 7))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                          .filter(lambda e: e[0] != e[1]), max_size=15))
    parts = draw(st.sampled_from(list(bounded_partitions(list(range(n)), 2))))
    g = Graph.from_pairs(pairs, vertices=range(n))
    return g, Clustering.from_parts(parts, k=2)


@given(clustered())
@settings(max_examples=60, deadline=None)
def test_roundtrip_graph_and_clustering(gc):
    g, c = gc
    doc = io.parse(io.format_document(io.Document(g, clustering=c)))
    assert doc.graph == g
    assert doc.clustering == c


def test_roundtrip_configuration():
    g, cfg = tight_construction(4, 3, 2)
    doc = io.parse(io.format_document(io.Document(g, config=cfg)))
    assert doc.graph == g
    assert doc.config.boundary == cfg.boundary
    assert dict(doc.config.port_assign) == dict(cfg.port_assign)


def test_roundtrip_one_plane():
    og = gen_h(3)
    doc = io.parse(io.format_document(io.from_one_plane(og)))
    back = doc.one_plane()
    assert back.graph == og.graph and back.crossings == og.crossings


@pytest.mark.parametrize("text,line", [
    ("e 0 0 1\n", 1),
    ("n 2\ne 0 0 5\n", 2),
    ("n 2\ne 0 0 0\n", 2),
    ("n 3\ne 0 0 1\ne 0 1 2\n", 3),
    ("n 2\nfoo 1\n", 2),
    ("n 2\ne 0 0 1\nc 0 0\nn 3\n", 4),
    ("n 2\ne 0 x 1\n", 2),
    ("# empty\n", 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(io.ParseError) as err:
        io.parse(text)
    assert err.value.lineno == line


def test_invalid_configuration_is_reported():
    text = "n 2\ne 0 0 1\nc 0 0\nc 1 1\np 1\nport 0 0\nport 1 1\nb 0 0\nb 1 1\na 0 0 0\n"
    with pytest.raises(io.ParseError):
        io.parse(text)
    doc = io.parse(text + "a 0 1 1\n")
    assert doc.config is not None and doc.config.p == 1


def test_comments_and_blank_lines():
    doc = io.parse("# triangle\n\nn 3  # three vertices\ne 0 0 1\ne 1 1 2\ne 2 2 0\n")
    assert (doc.graph.n, doc.graph.m) == (3, 3)
