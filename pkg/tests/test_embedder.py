import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spanstar.coloring import StarPack, TwoColoring
from spanstar.corpus import host_with_packing, random_tree, sparse_pattern, star_free_host
from spanstar.embedder import (
    EmbedResult,
    Embedding,
    PreconditionError,
    _upgrade_star,
    embed_minus_vertex,
    embed_sparse,
    embed_spanning,
    embed_tree,
    embed_vs_multistar,
    plan_sparse,
    required_order_minus_vertex,
    spanning_order,
)
from spanstar.graph import Graph, cycle_graph, path_graph, star_graph, to_mask
from spanstar.invariants import alpha_prime

from .conftest import connected_graphs


def matching_complement(order: int, extra: list[tuple[int, int]] = ()) -> TwoColoring:
    blue = [(2 * i, 2 * i + 1) for i in range(order // 2)]
    return TwoColoring.from_blue_edges(order, blue + list(extra))


def check(res: EmbedResult, col: TwoColoring, g: Graph, k: int, t: int = 1) -> None:
    """Independent re-check of either outcome."""
    if res.is_red:
        m = res.embedding.mapping
        assert len(set(m)) == g.vertex_count
        for u, v in g.edges():
            assert col.is_red(m[u], m[v])
    else:
        assert len(res.pack) >= t
        used = set()
        for c, leaves in res.pack.stars:
            assert len(leaves) == k
            for x in leaves:
                assert col.is_blue(c, x)
            assert not used & {c, *leaves}
            used |= {c, *leaves}


# -- trees ------------------------------------------------------------------


def test_embed_tree_examples():
    col = TwoColoring.all_red(10)
    res = embed_tree(col, path_graph(10), 2)
    assert res.is_red
    check(res, col, path_graph(10), 2)
    col = TwoColoring.from_blue_edges(10, [(9, v) for v in range(9)])
    res = embed_tree(col, path_graph(10), 3)
    assert not res.is_red and res.pack.stars[0][0] == 9
    check(res, col, path_graph(10), 3)
    assert embed_tree(TwoColoring.all_red(1), Graph(1), 1).is_red


def test_embed_tree_preconditions():
    with pytest.raises(PreconditionError):
        embed_tree(TwoColoring.all_red(3), path_graph(4), 2)
    with pytest.raises(PreconditionError):
        embed_tree(TwoColoring.all_red(5), cycle_graph(4), 2)


@given(st.integers(1, 14), st.integers(1, 4), st.integers(0, 10**6))
def test_embed_tree_dichotomy(n, k, seed):
    rng = random.Random(seed)
    t = random_tree(n, rng)
    order = n + k - 1
    col = TwoColoring.from_blue_edges(
        order, [(u, v) for u in range(order) for v in range(u + 1, order) if rng.random() < 0.3]
    )
    res = embed_tree(col, t, k)
    res.verify(col)
    check(res, col, t, k)


# -- one vertex removed -----------------------------------------------------------


def test_embed_minus_vertex_examples():
    col = TwoColoring.all_red(5)
    assert embed_minus_vertex(col, star_graph(3), 0, 1).is_red
    g = Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    col = TwoColoring.all_red(6)
    res = embed_minus_vertex(col, g, 3, 2)
    assert res.is_red
    check(res, col, g, 2)
    col = TwoColoring.from_blue_edges(6, [(0, 1), (0, 2)])
    res = embed_minus_vertex(col, cycle_graph(4), 0, 2)
    res.verify(col)
    check(res, col, cycle_graph(4), 2)


def test_required_order_minus_vertex():
    assert required_order_minus_vertex(star_graph(3), 0, 2) == 3 + 1
    assert required_order_minus_vertex(Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)]), 3, 2) == 3 + 2


@given(connected_graphs(min_n=3, max_n=9, extra_max=1), st.integers(2, 3), st.integers(0, 10**6))
def test_embed_minus_vertex_dichotomy(g, k, seed):
    rng = random.Random(seed)
    u = rng.randrange(g.vertex_count)
    try:
        need = required_order_minus_vertex(g, u, k)
    except PreconditionError:
        return
    col = star_free_host(need + k, k, rng) if rng.random() < 0.5 else host_with_packing(need + k, k, 1, rng)
    res = embed_minus_vertex(col, g, u, k)
    res.verify(col)
    check(res, col, g, k)


# -- sparse -----------------------------------------------------------------


def test_embed_sparse_examples():
    col = matching_complement(50)
    res = embed_sparse(col, path_graph(48), 2)
    assert res.is_red
    check(res, col, path_graph(48), 2)
    g = cycle_graph(6).with_edges([(0, 3)])
    res = embed_sparse(TwoColoring.all_red(8), g, 2)
    assert res.is_red
    with pytest.raises(PreconditionError):
        embed_sparse(TwoColoring.all_red(10), cycle_graph(6).with_edges([(0, 3), (1, 4)]), 2)
    with pytest.raises(PreconditionError):
        embed_sparse(TwoColoring.all_red(49), path_graph(48), 2)


@given(st.integers(6, 20), st.integers(2, 3), st.integers(0, 10**6))
def test_embed_sparse_star_free_hosts_are_red(n, k, seed):
    rng = random.Random(seed)
    g = sparse_pattern(n, 2 * k + 1, rng)
    col = star_free_host(n + 2 * k - 2, k, rng)
    res = plan_sparse(g, k).embed(col)
    assert res.is_red
    check(res, col, g, k)


@given(st.integers(6, 20), st.integers(2, 3), st.integers(0, 10**6))
def test_embed_sparse_dichotomy(n, k, seed):
    rng = random.Random(seed)
    g = sparse_pattern(n, 2 * k + 1, rng)
    order = n + 2 * k - 2
    col = TwoColoring.from_blue_edges(
        order, [(u, v) for u in range(order) for v in range(u + 1, order) if rng.random() < 0.15]
    )
    res = embed_sparse(col, g, k)
    res.verify(col)
    check(res, col, g, k)


# -- spanning -----------------------------------------------------------------


def test_spanning_order_and_preconditions():
    p = path_graph(48)
    # G - N[v] is two paths with 45 or 46 vertices in total
    by_formula = min(-(-max(i - 1, 0) // 2) - (-max(46 - i, 0) // 2) for i in range(48))
    assert alpha_prime(p).alpha_prime == by_formula == 23
    assert spanning_order(p, 2) == 48
    assert spanning_order(star_graph(47), 2) == 49
    with pytest.raises(PreconditionError, match="host order"):
        embed_spanning(TwoColoring.all_red(48), star_graph(47), 2)
    with pytest.raises(PreconditionError, match="6k"):
        embed_spanning(TwoColoring.all_red(47), path_graph(47), 2)
    dense = path_graph(48).with_edges([(0, 2), (4, 6), (8, 10)])
    with pytest.raises(PreconditionError, match="exceeds"):
        embed_spanning(TwoColoring.all_red(48), dense, 2)


def test_spanning_path_on_red_hosts():
    rng = random.Random(5)
    g = path_graph(48)
    for _ in range(20):
        col = star_free_host(48, 2, rng)
        res = embed_spanning(col, g, 2)
        assert res.is_red
        check(res, col, g, 2)


def test_spanning_spider_with_many_leaves():
    # 20 legs of length 2 plus 7 pendant leaves at the centre
    edges = []
    for i in range(20):
        edges += [(0, 1 + 2 * i), (1 + 2 * i, 2 + 2 * i)]
    edges += [(0, 41 + j) for j in range(7)]
    g = Graph(48, edges)
    assert g.edge_count <= 49 and alpha_prime(g).alpha_prime >= 1
    col = matching_complement(48)
    res = embed_spanning(col, g, 2)
    assert res.is_red
    check(res, col, g, 2)


def test_spanning_blue_is_a_legal_outcome():
    rng = random.Random(9)
    g = path_graph(48)
    for _ in range(5):
        col = host_with_packing(48, 2, 3, rng)
        res = embed_spanning(col, g, 2)
        res.verify(col)
        check(res, col, g, 2)


@pytest.mark.parametrize("family", ["tree_plus", "long_path", "hub", "caterpillar"])
def test_spanning_families(family):
    rng = random.Random(family)
    for _ in range(6):
        g = sparse_pattern(48, 36, rng, family=family)
        col = star_free_host(spanning_order(g, 2), 2, rng)
        res = embed_spanning(col, g, 2)
        assert res.is_red
        check(res, col, g, 2)


def test_embedding_verify_rejects_bad_maps():
    col = TwoColoring.from_blue_edges(3, [(0, 1)])
    with pytest.raises(ValueError):
        Embedding(path_graph(2), col, (0, 1)).verify()
    with pytest.raises(ValueError):
        Embedding(path_graph(2), col, (0, 0)).verify()
    with pytest.raises(ValueError):
        Embedding(path_graph(2), col, (0, 5)).verify()
    Embedding(path_graph(2), col, (0, 2)).verify()
    with pytest.raises(ValueError):
        EmbedResult(k=1).verify(col)


# -- multistar ------------------------------------------------------------------


def test_multistar_t1_delegates():
    rng = random.Random(2)
    g = sparse_pattern(48, 36, rng)
    col = star_free_host(spanning_order(g, 2), 2, rng)
    assert embed_vs_multistar(col, g, 2, 1) == embed_spanning(col, g, 2)


def test_multistar_path_896():
    g = path_graph(896)
    col = TwoColoring.all_red(897)
    assert embed_vs_multistar(col, g, 2, 2).is_red
    rng = random.Random(4)
    for _ in range(3):
        perm = list(range(897))
        rng.shuffle(perm)
        blue = [(perm[2 * i], perm[2 * i + 1]) for i in range(447)]
        blue += [(perm[894], perm[895]), (perm[894], perm[896])]
        col = TwoColoring.from_blue_edges(897, blue)
        res = embed_vs_multistar(col, g, 2, 2)
        res.verify(col)
        check(res, col, g, 2, 2)
        assert res.is_red


def test_multistar_preconditions():
    with pytest.raises(PreconditionError, match="28t"):
        embed_vs_multistar(TwoColoring.all_red(500), path_graph(448), 2, 2)
    with pytest.raises(PreconditionError, match="host order"):
        embed_vs_multistar(TwoColoring.all_red(896), path_graph(896), 2, 2)


def test_upgrade_star_splits_a_star():
    # packed star 0 -> (1, 2); vertices 0 and 1 each see two further blue vertices
    blue = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6)]
    col = TwoColoring.from_blue_edges(8, blue)
    outside = to_mask(range(3, 8))
    out = _upgrade_star(col, [(0, (1, 2))], outside, 2)
    assert out is not None and len(out) == 2
    StarPack(tuple(out)).verify(col, 2, 2)


def test_upgrade_star_shares_common_neighbours():
    blue = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (0, 5), (1, 6)]
    col = TwoColoring.from_blue_edges(7, blue)
    out = _upgrade_star(col, [(0, (1, 2))], to_mask(range(3, 7)), 2)
    assert out is not None
    StarPack(tuple(out)).verify(col, 2, 2)


def test_upgrade_star_infeasible():
    blue = [(0, 1), (0, 2), (0, 3), (1, 3)]
    col = TwoColoring.from_blue_edges(5, blue)
    assert _upgrade_star(col, [(0, (1, 2))], to_mask([3, 4]), 2) is None
