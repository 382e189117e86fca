from __future__ import annotations

import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import atlas_graphs
from oracles import planar_by_minors
from kpplanar.graph import Graph
from kpplanar.planarity import check_embedding, euler_reject, is_planar, planar_embedding


def k33() -> Graph:
    return Graph.from_pairs([(a, b) for a in range(3) for b in range(3, 6)])


def cube() -> Graph:
    return Graph.from_pairs([(u, u ^ (1 << i)) for u in range(8) for i in range(3) if u < u ^ (1 << i)])


def test_kuratowski_graphs():
    assert not is_planar(Graph.complete(5))
    assert not is_planar(k33())
    assert is_planar(Graph.complete(4))


def test_cube_embedding_has_six_faces():
    g = cube()
    emb = planar_embedding(g)
    assert check_embedding(g, emb)
    assert emb.face_count(g) == 6


def test_parallel_edges_do_not_change_planarity():
    g = Graph.from_pairs([(0, 1), (0, 1), (1, 2), (2, 0)])
    assert is_planar(g)
    assert planar_embedding(g).face_count(g) == 3


def test_euler_reject():
    assert euler_reject(Graph.complete(5), 5)
    assert not euler_reject(Graph.complete(4), 4)
    assert not euler_reject(5, 2)


def test_agrees_with_minor_oracle_up_to_six_vertices():
    for g in atlas_graphs(6):
        assert is_planar(g) == planar_by_minors((u, v) for _, u, v in g.edges)


@st.composite
def edge_sets(draw):
    n = draw(st.integers(3, 9))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return Graph.from_pairs(chosen, vertices=range(n))


@given(edge_sets(), st.data())
@settings(max_examples=80, deadline=None)
def test_deleting_an_edge_keeps_planarity(g, data):
    if not g.edges or not is_planar(g):
        return
    eid = data.draw(st.sampled_from(sorted(g.edge_ids)))
    assert is_planar(g.without_edges([eid]))


@given(edge_sets())
@settings(max_examples=80, deadline=None)
def test_embedding_satisfies_euler(g):
    if not is_planar(g):
        return
    emb = planar_embedding(g)
    assert check_embedding(g, emb)
    # faces are traced per component; isolated vertices carry none
    iso = sum(1 for v in g.vertices if g.degree(v) == 0)
    comps = len(g.components()) - iso
    assert (g.n - iso) - g.m + emb.face_count(g) == 2 * comps
