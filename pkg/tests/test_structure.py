import random

import pytest
from hypothesis import given

from spanstar.corpus import random_pattern
from spanstar.graph import Graph, complete_graph, cycle_graph, path_graph, spider, star_graph
from spanstar.structure import (
    BoundedCoreStar,
    CertificateError,
    EndEdgeMatching,
    ReductionStalled,
    StepKind,
    SuspendedPath,
    check_reduction_bounds,
    core_bound,
    count_low_degree,
    reduce_k,
    reduce_once,
    replay_backward,
    replay_forward,
    trichotomy,
)

from .conftest import connected_graphs


def test_trichotomy_examples():
    assert isinstance(trichotomy(path_graph(50), 10, 3), SuspendedPath)
    cert = trichotomy(star_graph(9), 4, 3)
    assert isinstance(cert, BoundedCoreStar)
    assert cert.params.gamma == 3 and cert.core_vertices == frozenset({0})
    assert len(cert.star_leaves) == 9 and cert.params.star_bound(10) == 4
    cert = trichotomy(spider(3, 2), 4, 3)
    assert isinstance(cert, EndEdgeMatching) and len(cert.edges) == 3


def test_core_bound_formula():
    assert core_bound(4, 3, -1) == 3
    assert core_bound(6, 2, 1) == 4 * 5 + 1


def test_trichotomy_argument_errors():
    with pytest.raises(ValueError):
        trichotomy(path_graph(5), 2, 3)
    with pytest.raises(ValueError):
        trichotomy(Graph(4, [(0, 1), (2, 3)]), 3, 2)
    with pytest.raises(ValueError):
        trichotomy(path_graph(3), 4, 2)


def test_certificate_verifiers_reject_forgeries():
    g = spider(3, 2)
    good = trichotomy(g, 4, 3)
    bad = EndEdgeMatching(good.params, good.edges[:2] + ((good.edges[0][0], good.edges[0][1]),))
    with pytest.raises(CertificateError):
        bad.verify(g)
    path = SuspendedPath(good.params, (1, 0, 3, 4))
    with pytest.raises(CertificateError):
        path.verify(g)


@given(connected_graphs(min_n=4, max_n=16, extra_max=3))
def test_trichotomy_certificate_verifies(g):
    for q, s in ((3, 2), (4, 3), (6, 2)):
        if g.vertex_count >= q:
            trichotomy(g, q, s).verify(g)


def test_trichotomy_fuzz_sparse():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randint(8, 40)
        g = random_pattern(n, n + rng.randint(-1, 2), rng)
        trichotomy(g, 6, 2).verify(g)


def test_count_low_degree():
    house = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 4)])
    assert count_low_degree(house) == 3
    assert count_low_degree(complete_graph(4)) == 0
    assert count_low_degree(path_graph(2)) == 2


def test_reduction_examples():
    reduced, step = reduce_once(path_graph(4))
    assert step.kind is StepKind.DEGREE1 and reduced.graph == path_graph(3)
    reduced, step = reduce_once(cycle_graph(4))
    assert step.kind is StepKind.DEGREE2_NONCUT
    assert reduced.graph.edge_count == 2 and reduced.graph.is_connected()
    reduced, trace = reduce_k(path_graph(10), 3)
    assert reduced.graph == path_graph(7)
    assert [s.kind for s in trace] == [StepKind.DEGREE1] * 3
    reduced, trace = reduce_k(cycle_graph(10), 2)
    assert reduced.graph == path_graph(8)
    with pytest.raises(ReductionStalled):
        reduce_k(complete_graph(4), 1)


def test_degree2_cut_step():
    # two K_4's joined through the degree-2 cut vertex 8
    edges = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    edges += [(a, b) for a in range(4, 8) for b in range(a + 1, 8)]
    edges += [(3, 8), (8, 4)]
    g = Graph(9, edges)
    reduced, step = reduce_once(g)
    assert step.kind is StepKind.DEGREE2_CUT and step.removed_vertex == 8
    assert step.added_edge == (3, 4)
    assert reduced.graph.edge_count == g.edge_count - 1
    assert reduced.graph.is_connected()


@given(connected_graphs(min_n=4, max_n=14, extra_max=3))
def test_reduction_replay(g):
    k = 2
    try:
        reduced, trace = reduce_k(g, k)
    except ReductionStalled:
        return
    assert replay_forward(g, trace).graph == reduced.graph
    assert replay_backward(reduced, trace) == g
    assert check_reduction_bounds(g, reduced.graph, k)
