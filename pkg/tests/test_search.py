from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import kpplanar.search as search
from oracles import fixed_clustering_feasible
from kpplanar.graph import Clustering, Graph, GraphError
from kpplanar.oneplanar import gen_h
from kpplanar.planarity import is_planar
from kpplanar.search import (
    Budget,
    Exhausted,
    bounded_partitions,
    check_fixed_clustering,
    configuration_is_planar,
    counting_certificate,
    search_kp,
)

K33 = Graph.from_pairs([(a, b) for a in range(3) for b in range(3, 6)])


def pairs_of(g: Graph) -> list[tuple[int, int]]:
    return [(u, v) for _, u, v in g.edges]


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 4), (4, 10), (5, 26), (6, 76), (8, 764)])
def test_partition_counts(n, count):
    parts = list(bounded_partitions(list(range(n)), 2))
    assert len(parts) == count
    assert len({frozenset(map(frozenset, p)) for p in parts}) == count


def test_partitions_respect_size_bound():
    for parts in bounded_partitions(list(range(6)), 3):
        assert max(map(len, parts)) <= 3
        assert sorted(v for part in parts for v in part) == list(range(6))


def test_k5_with_one_pair_fits_two_ports():
    k5 = Graph.complete(5)
    c = Clustering.from_parts([(0, 1), (2,), (3,), (4,)], k=2)
    cfg = check_fixed_clustering(k5, c, 2)
    assert cfg is not None and configuration_is_planar(k5, cfg)
    assert check_fixed_clustering(k5, c, 1) is None


def test_k33_with_singletons_rejected():
    c = Clustering.from_parts([(v,) for v in range(6)], k=2)
    assert check_fixed_clustering(K33, c, 2) is None
    assert not fixed_clustering_feasible(pairs_of(K33), [(v,) for v in range(6)], 2)


@st.composite
def small_instances(draw, max_n: int, max_m: int):
    n = draw(st.integers(3, max_n))
    all_pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(all_pairs), unique=True, min_size=1,
                           max_size=min(max_m, len(all_pairs))))
    parts = draw(st.sampled_from(list(bounded_partitions(list(range(n)), 2))))
    return Graph.from_pairs(chosen, vertices=range(n)), parts


@given(small_instances(7, 15))
@settings(max_examples=120, deadline=None)
def test_fixed_clustering_matches_oracle_p1(inst):
    g, parts = inst
    got = check_fixed_clustering(g, Clustering.from_parts(parts, k=2), 1) is not None
    assert got == fixed_clustering_feasible(pairs_of(g), parts, 1)


@given(small_instances(5, 8))
@settings(max_examples=40, deadline=None)
def test_fixed_clustering_matches_oracle_p2(inst):
    g, parts = inst
    got = check_fixed_clustering(g, Clustering.from_parts(parts, k=2), 2) is not None
    assert got == fixed_clustering_feasible(pairs_of(g), parts, 2)


@given(small_instances(7, 16), st.integers(1, 2))
@settings(max_examples=60, deadline=None)
def test_witnesses_are_sound_and_monotone_in_p(inst, p):
    g, parts = inst
    c = Clustering.from_parts(parts, k=2)
    cfg = check_fixed_clustering(g, c, p)
    if cfg is None:
        return
    cfg.validate(g)
    assert cfg.p == p and configuration_is_planar(g, cfg)
    assert check_fixed_clustering(g, c, p + 1) is not None


def test_search_finds_k7_witness_shape(k7):
    found = search_kp(k7, 2, 2)
    assert found is not None
    c, cfg = found
    cfg.validate(k7)
    assert configuration_is_planar(k7, cfg)
    assert max(map(len, c.parts)) <= 2


def test_search_rejects_k6_at_p1():
    assert search_kp(Graph.complete(6), 2, 1) is None


def test_k1_equivalence_examples():
    assert search.test_k1(Graph.complete(4), 3)
    assert not search.test_k1(K33, 2)
    with pytest.raises(GraphError):
        search.test_k1(K33, 4)


def test_ic_planarity_examples(k7):
    assert search.test_41(Graph.complete(5))
    assert search.test_41(K33)
    assert not search.test_41(k7)
    assert search.ic_planar_crossings(Graph.complete(4)) == []


def test_budget_exhaustion(k7):
    with pytest.raises(Exhausted):
        search_kp(k7, 2, 1, Budget(3))


def test_certificate_does_not_fire_on_k7(k7):
    assert counting_certificate(k7) is None
    assert counting_certificate(Graph.complete(4)) is None


def test_certificate_on_h3():
    cert = counting_certificate(gen_h(3).graph)
    assert cert is not None
    assert (cert.n, cert.m, cert.max_short_paths) == (32, 108, 4)
    # excess 108 - 96 + 6 = 18 pairs needed at one edge each, only 16 available
    assert cert.q_min == 18 and cert.max_pairs == 16


@given(st.randoms(use_true_random=False), st.integers(0, 16))
@settings(max_examples=60, deadline=None)
def test_certificate_agrees_with_sampled_contractions(rng, pairs):
    g = gen_h(3).graph
    verts = list(g.vertices)
    rng.shuffle(verts)
    parts = [verts[2 * i:2 * i + 2] for i in range(pairs)] + [[v] for v in verts[2 * pairs:]]
    c = Clustering.from_parts(parts, k=2)
    q = {(min(a, b), max(a, b)) for _, u, v in g.edges
         for a, b in [(c.cluster_of[u], c.cluster_of[v])] if a != b}
    assert not is_planar(Graph.from_pairs(sorted(q)))


def test_k5_singletons_rejected_for_any_p():
    c = Clustering.from_parts([(v,) for v in range(5)], k=1)
    for p in (1, 2, 3):
        assert check_fixed_clustering(Graph.complete(5), c, p) is None


def test_k8minus_is_not_ic_planar():
    from kpplanar.reduction import attach_k8minus

    g = attach_k8minus(Graph((0,), ()), 0)
    assert not is_planar(g)
    assert not search.test_41(g)
