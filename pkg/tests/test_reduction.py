from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kpplanar.graph import Graph, GraphError
from kpplanar.reduction import (
    Unsatisfied,
    attach_k8minus,
    build_reduction,
    format_sat,
    forward_witness,
    is_k8minus_attachment,
    k_vertex_oracle,
    parse_sat,
    reduction_size,
)
from kpplanar.search import check_fixed_clustering
from oracles import assignment_clustering

NESTED = """\
vars 6
pclause A 1 2 6 parent root
pclause B 3 4 5 parent A   # sits between literals 2 and 6 of A
nclause C 1 3 6 parent root
"""


def assignments(n: int):
    for bits in itertools.product([False, True], repeat=n):
        yield dict(zip(range(1, n + 1), bits))


def test_attachment_shape():
    g = attach_k8minus(Graph((0,), ()), 0)
    assert (g.n, g.m) == (8, 26)
    assert g.degree(0) == 5
    assert sorted(g.degree(v) for v in g.vertices) == [5, 6, 6, 7, 7, 7, 7, 7]
    assert is_k8minus_attachment(g, 0, range(1, 8))


def test_two_adjacent_k_vertices():
    g = attach_k8minus(attach_k8minus(Graph.from_pairs([(0, 1)]), 0), 1)
    assert (g.n, g.m) == (16, 53)


def test_attach_unknown_vertex():
    with pytest.raises(GraphError):
        attach_k8minus(Graph((0,), ()), 3)


def test_k_vertex_oracle():
    rep = k_vertex_oracle()
    assert rep.partitions == 764
    assert rep.accepted and rep.all_accepted_internal and rep.apex_unpaired_rejected
    assert (rep.three_pairs_min_inter, rep.three_pairs_bound) == (23, 21)
    assert rep.ok()


@pytest.mark.parametrize("text", [
    "pclause A 1 2 3 parent root\n",
    "vars 3\npclause A 1 2 parent root\n",
    "vars 3\npclause A 1 2 3 parent X\n",
    "vars 3\npclause A 3 2 1 parent root\n",
    "vars 4\npclause A 1 2 3 parent root\npclause B 2 3 4 parent root\n",
    "vars 6\npclause A 1 2 6 parent root\nnclause B 3 4 5 parent A\n",
])
def test_parser_rejects(text):
    with pytest.raises(GraphError):
        parse_sat(text)


def test_format_roundtrip():
    phi = parse_sat(NESTED)
    assert parse_sat(format_sat(phi)) == phi


@pytest.mark.parametrize("text", [
    "vars 3\npclause A 1 2 3 parent root\n",
    "vars 3\nnclause A 1 2 3 parent root\n",
    NESTED,
    "vars 9\npclause A 1 2 9 parent root\npclause B 3 4 5 parent A\npclause D 6 7 8 parent A\n"
    "nclause C 1 5 9 parent root\n",
])
def test_sizes_match_closed_form(text):
    phi = parse_sat(text)
    gadget = build_reduction(phi)
    assert (gadget.graph.n, gadget.graph.m) == reduction_size(phi)
    assert gadget.role_counts()["attachment"] == 7 * len(gadget.k_vertices)


def test_single_clause_counts():
    assert reduction_size(parse_sat("vars 3\npclause A 1 2 3 parent root\n")) == (95, 317)


def test_unsatisfying_assignment_raises():
    phi = parse_sat("vars 3\npclause A 1 2 3 parent root\n")
    with pytest.raises(Unsatisfied):
        forward_witness(phi, {1: False, 2: False, 3: False})
    with pytest.raises(GraphError):
        forward_witness(phi, {1: True})


def test_nested_instance_accepts_exactly_the_satisfying_assignments():
    phi = parse_sat(NESTED)
    gadget = build_reduction(phi)
    for a in itertools.islice(assignments(6), 0, 64, 3):
        c = assignment_clustering(phi, gadget, a)
        accepted = check_fixed_clustering(gadget.graph, c, 2) is not None
        assert accepted == phi.satisfied_by(a), a


@given(st.booleans(), st.lists(st.booleans(), min_size=3, max_size=3))
@settings(max_examples=16, deadline=None)
def test_witness_properties(positive, bits):
    kind = "pclause" if positive else "nclause"
    phi = parse_sat(f"vars 3\n{kind} A 1 2 3 parent root\n")
    a = dict(zip((1, 2, 3), bits))
    if not phi.satisfied_by(a):
        return
    gadget = build_reduction(phi)
    c = forward_witness(phi, a, gadget)
    c.validate(gadget.graph)
    # every K-vertex pairs inside its own attachment
    for v, att in gadget.k_vertices.items():
        part = c.parts[c.cluster_of[v]]
        assert len(part) == 2 and part <= {v, *att}
    open_part = c.parts[c.cluster_of[gadget.names["openA"]]]
    assert len(open_part) == 2


def test_variable_cycle_only():
    phi = parse_sat("vars 1\n")
    gadget = build_reduction(phi)
    assert (gadget.graph.n, gadget.graph.m) == reduction_size(phi)
    assert gadget.role_counts()["literal"] == 0
    # v1, c01, c12, plus, minus
    assert len(gadget.k_vertices) == 5


def test_single_clause_gadget_roles():
    gadget = build_reduction(parse_sat("vars 3\npclause A 1 2 3 parent root\n"))
    roles = gadget.role_counts()
    assert roles["literal"] == 3 and roles["open"] == 1 and roles["closed"] == 1
    names = gadget.names
    five = [names[x] for x in ("lA,1", "lA,2", "lA,3", "openA", "closedA")]
    missing = [(a, b) for a, b in itertools.combinations(five, 2) if not gadget.graph.has_edge(a, b)]
    # the l1-l3 edge is subdivided by the tree K-vertex towards plus
    assert missing == [(names["lA,1"], names["lA,3"])]
    t = names["tA"]
    assert gadget.graph.has_edge(names["lA,1"], t) and gadget.graph.has_edge(t, names["lA,3"])
    assert gadget.graph.has_edge(t, names["plus"])
