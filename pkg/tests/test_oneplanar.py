from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import isdr_exists
from kpplanar.graph import Graph, GraphError, RotationSystem, max_short_path_count
from kpplanar.oneplanar import (
    Infeasible,
    Isdr,
    ce_graph,
    gen_h,
    gen_hbar,
    is_one_plane,
    is_pseudoforestal,
    isdr,
    one_plane,
    orient_in_degree_one,
    planarization_check,
    planarize_22,
    random_non_pseudoforestal,
    random_one_plane,
    random_pseudoforestal,
)


def kite() -> Graph:
    # 4-cycle 0-1-2-3 with crossing diagonals 0-2 and 1-3
    return Graph.from_pairs([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)])


def ends(og):
    return {eid: (u, v) for eid, u, v in og.graph.edges}


def test_kite_is_one_plane():
    og = one_plane(kite(), [(4, 5)])
    assert is_one_plane(og) and is_pseudoforestal(og)
    ce = ce_graph(og)
    assert len(ce.vertices) == 4 and len(ce.edges) == 2


def test_adjacent_edges_cannot_cross():
    with pytest.raises(GraphError):
        one_plane(kite(), [(0, 1)])


def test_edge_crossed_twice_rejected():
    g = Graph.from_pairs([(0, 1), (2, 3), (4, 5)])
    with pytest.raises(GraphError):
        one_plane(g, [(0, 1), (0, 2)])


def test_bad_rotation_rejected():
    og = one_plane(kite(), [(4, 5)])
    rot = dict(og.planarization.rotation.rotation)
    dummy = max(rot)
    rot[dummy] = tuple(sorted(rot[dummy]))  # segments no longer alternate
    if rot[dummy] == og.planarization.rotation.rotation[dummy]:
        rot[dummy] = rot[dummy][1:] + rot[dummy][:1]
    with pytest.raises(GraphError):
        one_plane(kite(), [(4, 5)], RotationSystem(rot))


@pytest.mark.parametrize("i", [1, 2, 3, 4])
def test_hbar_counts(i):
    og = gen_hbar(i)
    assert og.graph.n == 2 ** (i + 2) - 4
    assert og.graph.m == 12 * 2 ** i - 18
    assert len(og.crossings) == 2 ** (i + 1) - 3
    assert is_one_plane(og)
    rev = gen_hbar(i, reversed=True)
    assert (rev.graph.n, rev.graph.m) == (og.graph.n, og.graph.m)


@pytest.mark.parametrize("h,n,m", [(3, 32, 108), (4, 72, 252)])
def test_h_family(h, n, m):
    og = gen_h(h)
    assert (og.graph.n, og.graph.m) == (n, m)
    assert og.graph.is_simple() and is_one_plane(og)
    assert max_short_path_count(og.graph) == 4
    assert not is_pseudoforestal(og)


def test_h_needs_three_levels():
    with pytest.raises(GraphError):
        gen_h(2)


def test_orientation_has_in_degree_at_most_one():
    og = random_pseudoforestal(7)
    ce = ce_graph(og)
    orient = orient_in_degree_one(ce)
    heads = [head for _, head in orient.values()]
    assert len(heads) == len(set(heads))
    assert set(orient) == {eid for eid, _, _ in ce.edges}


@given(st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_pseudoforestal_instances_planarize(seed):
    og = random_pseudoforestal(seed)
    rep = isdr(og)
    rep.validate(og)
    g, cfg = planarize_22(og, rep)
    assert cfg.k == 2 and cfg.p == 2
    assert all(len(cfg.ports.get(v, ())) <= 2 for v in g.vertices)
    assert planarization_check(g, cfg)


@given(st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_isdr_existence_matches_brute_force(seed):
    og = random_one_plane(8, 6, seed)
    exists = isdr_exists(ends(og), sorted(og.crossings))
    assert exists == is_pseudoforestal(og)
    if not exists:
        with pytest.raises(Infeasible):
            isdr(og)


@given(st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_non_pseudoforestal_has_no_isdr(seed):
    og = random_non_pseudoforestal(seed)
    with pytest.raises(Infeasible):
        isdr(og)
    assert not isdr_exists(ends(og), sorted(og.crossings))


def test_isdr_validation_catches_shared_vertex():
    og = gen_hbar(2)
    rep = isdr(og)
    a = rep.pairs[0]
    broken = Isdr(rep.crossings, (a,) + tuple((a[0], v) for _, v in rep.pairs[1:]))
    with pytest.raises(GraphError):
        broken.validate(og)


def test_hbar3_outer_boundary():
    og = gen_hbar(3)
    assert len(og.outer_face) == 16


def test_isdr_avoids_shared_vertex():
    # edges 0-1 and 0-2 share vertex 0; each is crossed by its own edge
    g = Graph.from_pairs([(0, 1), (2, 3), (0, 4), (1, 5)])
    og = one_plane(g, [(0, 1), (2, 3)])
    rep = isdr(og)
    rep.validate(og)
    used = [v for pair in rep.pairs for v in pair]
    assert len(used) == len(set(used))


def test_single_kite_gives_one_pair():
    og = one_plane(kite(), [(4, 5)])
    g, cfg = planarize_22(og)
    assert sorted(map(len, cfg.clustering.parts)) == [1, 1, 2]
    assert planarization_check(g, cfg)
