"""Constructive embeddings of sparse connected graphs into red/blue colourings.

Every public entry point returns an :class:`EmbedResult` holding either a
red copy of the pattern or blue stars. Red copies are checked edge by edge,
and blue ones as vertex-disjoint blue ``K_{1,k}``. The routines follow the
inductive arguments for

* trees (greedy breadth-first placement),
* graphs with at most ``n(1 + 1/(2k+1))`` edges (reduce by ``k`` low-degree
  vertices, embed the rest, put the removed vertices back),
* spanning copies in hosts of order ``max(n, n + k - 1 - alpha')``
  (suspended path / end-edge matching / pendant star), and
* the version against ``t`` disjoint blue stars.

Whenever a step cannot be completed, the routine exhibits the blue star
that makes the step impossible. If a hypothesis fails silently, a global
greedy search for the blue target serves as the last resort, and an
:class:`EmbeddingError` is raised only when that search also comes up empty.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations

from .coloring import StarPack, TwoColoring, pack_blue_stars, red_matching_or_blue_biclique, RedMatching
from .graph import Graph, adjacency_dict, bridges, graph_from_dict, iter_bits, to_mask
from .invariants import (
    capped_alpha_prime,
    edge_budget_ok,
    maximum_independent_set,
    multistar_denominator,
    small_denominator,
    spanning_denominator,
)
from .structure import (
    BoundedCoreStar,
    EndEdgeMatching,
    ReductionStalled,
    StepKind,
    SuspendedPath,
    reduce_dict,
    trichotomy,
)

log = logging.getLogger(__name__)

Adj = dict[int, set[int]]
Star = tuple[int, tuple[int, ...]]


class PreconditionError(ValueError):
    """An input violates a stated hypothesis; the message names the inequality."""


class EmbeddingError(RuntimeError):
    """Neither a red copy nor the blue target could be produced."""


class _BlueFound(Exception):
    def __init__(self, stars: list[Star]):
        super().__init__(f"{len(stars)} blue star(s)")
        self.stars = stars


class _ProofGap(Exception):
    pass


# -- result types ------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """Injective map of ``pattern`` into the red graph of ``host``."""

    pattern: Graph
    host: TwoColoring
    mapping: tuple[int, ...]

    def verify(self) -> None:
        if len(self.mapping) != self.pattern.vertex_count:
            raise ValueError("mapping must assign every pattern vertex")
        if len(set(self.mapping)) != len(self.mapping):
            raise ValueError("mapping is not injective")
        order = self.host.order
        for h in self.mapping:
            if not 0 <= h < order:
                raise ValueError(f"image {h} outside the host")
        mp = self.mapping
        red = self.host.red_masks
        for u, v in self.pattern.edge_tuple:
            if not (red[mp[u]] >> mp[v]) & 1:
                raise ValueError(f"pattern edge ({u}, {v}) maps to a blue edge")


@dataclass(frozen=True)
class EmbedResult:
    """Either a red embedding or a blue ``tK_{1,k}``."""

    embedding: Embedding | None = None
    pack: StarPack | None = None
    k: int = 1
    t: int = 1
    notes: tuple[str, ...] = field(default=())

    @property
    def is_red(self) -> bool:
        return self.embedding is not None

    @property
    def variant(self) -> str:
        return "red" if self.is_red else "blue"

    def verify(self, host: TwoColoring | None = None) -> None:
        if (self.embedding is None) == (self.pack is None):
            raise ValueError("exactly one of embedding and pack must be set")
        if self.embedding is not None:
            self.embedding.verify()
        else:
            if host is None:
                raise ValueError("verifying a blue result needs the host colouring")
            self.pack.verify(host, self.k, self.t)


# -- small helpers ---------------------------------------------------------------


def _low(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _first(mask: int, count: int) -> list[int]:
    out = []
    for v in iter_bits(mask):
        if len(out) == count:
            break
        out.append(v)
    return out


def _blue_at(col: TwoColoring, v: int, among: int, k: int) -> None:
    """Raise a blue star centred at ``v`` if it has ``k`` blue neighbours in ``among``."""
    nb = col.blue_mask(v) & among
    if nb.bit_count() >= k:
        raise _BlueFound([(v, tuple(_first(nb, k)))])


def _edge_total(adj: Adj) -> int:
    return sum(len(nb) for nb in adj.values()) // 2


def _copy(adj: Adj) -> Adj:
    return {v: set(nb) for v, nb in adj.items()}


def _without(adj: Adj, drop) -> Adj:
    drop = set(drop)
    return {v: nb - drop for v, nb in adj.items() if v not in drop}


def _images(mapping: dict[int, int]) -> int:
    return to_mask(mapping.values())


def _components(adj: Adj) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for s in sorted(adj):
        if s in seen:
            continue
        seen.add(s)
        comp, stack = [s], [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def _is_forest(adj: Adj) -> bool:
    return _edge_total(adj) == len(adj) - len(_components(adj))


def _cycle_vertices(adj: Adj) -> list[int]:
    """Vertices of the 2-core (for a unicyclic graph: its cycle)."""
    work = _copy(adj)
    leaves = [v for v, nb in work.items() if len(nb) <= 1]
    while leaves:
        v = leaves.pop()
        if v not in work:
            continue
        for w in work.pop(v):
            work[w].discard(v)
            if len(work[w]) <= 1:
                leaves.append(w)
    return sorted(work)


def _tree_completion(adj: Adj) -> Adj:
    """A spanning tree containing the forest ``adj`` (components chained by their minima)."""
    tree = _copy(adj)
    comps = _components(adj)
    for a, b in zip(comps, comps[1:]):
        tree[a[0]].add(b[0])
        tree[b[0]].add(a[0])
    return tree


# -- trees and vertex deletion -----------------------------------------------------


def _bfs_pairs(adj: Adj) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Root (smallest label) and ``(child, parent)`` pairs of a tree in breadth-first order."""
    root = min(adj)
    seen = {root}
    pairs = []
    queue = [root]
    head = 0
    while head < len(queue):
        p = queue[head]
        head += 1
        for c in sorted(adj[p]):
            if c not in seen:
                seen.add(c)
                pairs.append((c, p))
                queue.append(c)
    return root, tuple(pairs)


def _place_tree(
    col: TwoColoring, root: int, pairs: tuple[tuple[int, int], ...], pool: int, k: int
) -> dict[int, int]:
    """Greedy placement: each child goes to the lowest free red neighbour of its parent's image."""
    if pool.bit_count() < len(pairs) + 1:
        raise _ProofGap("pool smaller than the tree")
    h = pool & -pool
    mapping = {root: h.bit_length() - 1}
    free = pool & ~h
    red = col.red_mask
    for c, p in pairs:
        x = mapping[p]
        cand = red(x) & free
        if not cand:
            _blue_at(col, x, free, k)
            raise _ProofGap(f"host vertex {x} has neither a free red neighbour nor {k} blue ones")
        h = cand & -cand
        mapping[c] = h.bit_length() - 1
        free &= ~h
    return mapping


def _embed_tree(col: TwoColoring, adj: Adj, pool: int, k: int) -> dict[int, int]:
    """Greedy breadth-first placement of a tree inside ``pool``."""
    if not adj:
        return {}
    return _place_tree(col, *_bfs_pairs(adj), pool, k)


def _embed_minus_vertex(col: TwoColoring, adj: Adj, u: int, pool: int, k: int) -> dict[int, int]:
    """Embed ``G - u`` inside the red neighbourhood of one host vertex ``w``, then send ``u`` to ``w``."""
    w = _low(pool)
    _blue_at(col, w, pool, k)
    inner = col.red_mask(w) & pool
    rest = _without(adj, [u])
    mapping = _embed_any(col, rest, inner, k)
    mapping[u] = w
    return mapping


def _embed_any(col: TwoColoring, adj: Adj, pool: int, k: int) -> dict[int, int]:
    if not adj:
        return {}
    if _is_forest(adj):
        return _embed_tree(col, _tree_completion(adj), pool, k)
    if len(_components(adj)) == 1:
        return _embed_sparse(col, adj, pool, k)
    raise _ProofGap("disconnected non-forest remainder")


def _embed_all_red(col: TwoColoring, adj: Adj, pool: int) -> dict[int, int]:
    """k = 1: with no blue edge at all, any placement works; otherwise show a blue edge."""
    order = sorted(adj)
    slots = _first(pool, len(order))
    if len(slots) < len(order):
        raise _ProofGap("pool smaller than the pattern")
    mapping = dict(zip(order, slots))
    for a in order:
        for b in adj[a]:
            if not col.is_red(mapping[a], mapping[b]):
                raise _BlueFound([(mapping[a], (mapping[b],))])
    return mapping


# -- sparse graphs: reduce, embed, rebuild ----------------------------------------------


@dataclass(frozen=True)
class SparsePlan:
    """Colouring-independent part of the sparse embedding of one pattern.

    ``frames`` lists, outermost first, either ``("rebuild", steps)`` with the
    ``(removed_vertex, neighbours)`` pairs of one reduction round, or
    ``("reattach", a)`` when an over-full reduced graph lost a non-bridge
    edge at ``a``. ``base`` describes the final small graph: a tree given by
    ``(root, pairs)``, or a unicyclic graph with cycle vertex ``u`` whose
    remaining forest is completed to the tree ``(root, pairs)``.
    """

    k: int
    vertices: tuple[int, ...]
    frames: tuple[tuple, ...]
    base_kind: str
    base_u: int | None
    base_root: int | None
    base_pairs: tuple[tuple[int, int], ...]


def _sparse_plan(adj: Adj, k: int) -> SparsePlan:
    den = small_denominator(k)
    frames: list[tuple] = []
    work = _copy(adj)
    while len(work) > 2 * k:
        try:
            trace = reduce_dict(work, k)
        except ReductionStalled as exc:
            raise _ProofGap(str(exc)) from exc
        frames.append(("rebuild", tuple((st.removed_vertex, st.neighbors) for st in trace)))
        if not edge_budget_ok(len(work), _edge_total(work), den):
            cut_edges = bridges(work)
            spare = sorted((a, b) for a in work for b in work[a] if a < b and frozenset((a, b)) not in cut_edges)
            if not spare:
                raise _ProofGap("over-full reduced graph without a non-bridge edge")
            a, b = spare[0]
            frames.append(("reattach", a))
            work[a].discard(b)
            work[b].discard(a)
    m = _edge_total(work)
    if m == len(work) - 1:
        root, pairs = _bfs_pairs(work)
        return SparsePlan(k, tuple(sorted(adj)), tuple(frames), "tree", None, root, pairs)
    if m == len(work):
        u = _cycle_vertices(work)[0]
        rest = _without(work, [u])
        root, pairs = _bfs_pairs(_tree_completion(rest)) if rest else (None, ())
        return SparsePlan(k, tuple(sorted(adj)), tuple(frames), "unicyclic", u, root, pairs)
    raise _ProofGap(f"base graph on {len(work)} vertices has {m} edges")


def _run_sparse_plan(col: TwoColoring, plan: SparsePlan, pool: int) -> dict[int, int]:
    k = plan.k
    red = col.red_mask
    level_pools = []
    reattached = []
    cur = pool
    for frame in plan.frames:
        if frame[0] == "rebuild":
            level_pools.append(cur)
        else:
            w = _low(cur)
            _blue_at(col, w, cur, k)
            reattached.append(w)
            cur = red(w) & cur
    if plan.base_kind == "tree":
        mapping = _place_tree(col, plan.base_root, plan.base_pairs, cur, k)
    else:
        w = _low(cur)
        _blue_at(col, w, cur, k)
        inner = red(w) & cur
        mapping = _place_tree(col, plan.base_root, plan.base_pairs, inner, k) if plan.base_root is not None else {}
        mapping[plan.base_u] = w

    used = _images(mapping)
    for frame in reversed(plan.frames):
        if frame[0] == "reattach":
            a = frame[1]
            w = reattached.pop()
            used &= ~(1 << mapping[a])
            mapping[a] = w
            used |= 1 << w
            continue
        level_pool = level_pools.pop()
        for removed, nbrs in reversed(frame[1]):
            free = level_pool & ~used
            cand = free
            for x in nbrs:
                cand &= red(mapping[x])
            if not cand:
                for x in nbrs:
                    _blue_at(col, mapping[x], free, k)
                raise _ProofGap(f"cannot restore vertex {removed}")
            h = cand & -cand
            mapping[removed] = h.bit_length() - 1
            used |= h
    return mapping


def _embed_sparse(col: TwoColoring, adj: Adj, pool: int, k: int) -> dict[int, int]:
    """Red copy of a connected graph with at most ``n(1 + 1/(2k+1))`` edges.

    Needs ``|pool| >= n + 2k - 2``. The reduction chain is run iteratively;
    each level either recurses on ``G_k`` directly or, when ``G_k`` carries
    one edge too many, drops a non-bridge edge ``ab`` and embeds ``G_k - ab``
    inside the red neighbourhood of a host vertex that later takes ``a``.
    """
    if k == 1:
        return _embed_all_red(col, adj, pool)
    return _run_sparse_plan(col, _sparse_plan(adj, k), pool)


# -- spanning copies -------------------------------------------------------------------


def _as_graph(adj: Adj) -> tuple[Graph, tuple[int, ...]]:
    g, labels = graph_from_dict(adj)
    return g, labels


def _shorten(adj: Adj, path: list[int], by: int) -> Adj:
    """Drop ``by`` interior vertices after ``path[0]`` and join ``path[0]`` to the next one."""
    h = _without(adj, path[1 : by + 1])
    a, b = path[0], path[by + 1]
    h[a].add(b)
    h[b].add(a)
    return h


def _lengthen(col: TwoColoring, seq: list[int], used: int, pool: int, extra: int) -> tuple[list[int], int] | int:
    """Insert ``extra`` host vertices into the red host path ``seq``.

    Returns ``(seq, used)`` on success, or the bitmask of still-free vertices
    when no free vertex is red to two consecutive path vertices.
    """
    seq = list(seq)
    for _ in range(extra):
        free = pool & ~used
        for j in range(len(seq) - 1):
            cand = col.red_mask(seq[j]) & col.red_mask(seq[j + 1]) & free
            if cand:
                h = _low(cand)
                seq.insert(j + 1, h)
                used |= 1 << h
                break
        else:
            return free
    return seq, used


def _attach_independent(
    col: TwoColoring,
    adj: Adj,
    mapping: dict[int, int],
    center: int,
    blue_side: list[int],
    notes: list[str],
    original: Adj,
) -> None:
    """Move an independent set of ``H - N[center]`` onto the vertices of ``blue_side``."""
    closed = adj[center] | {center}
    far = [v for v in adj if v not in closed]
    original_far = {v for v in original if v not in original[center] and v != center}
    if set(far) != original_far:
        raise _ProofGap("H - N[v] differs from G - N[v]")
    notes.append("checked: alpha(H'_u) = alpha(G_v) (identical vertex sets)")
    if not blue_side or not far:
        return
    sub, labels = _as_graph({v: adj[v] & set(far) for v in far})
    ind = maximum_independent_set(sub, limit=len(blue_side))
    for host_v, idx in zip(blue_side, ind):
        mapping[labels[idx]] = host_v


def _embed_spanning(col: TwoColoring, adj: Adj, pool: int, k: int, notes: list[str]) -> dict[int, int]:
    """Spanning-order embedding (pool of size ``max(n, n + k - 1 - alpha')``)."""
    if k == 1:
        notes.append("k = 1: all-red placement")
        return _embed_all_red(col, adj, pool)
    g, labels = _as_graph(adj)
    cert = trichotomy(g, 4 * k - 2, 2 * k - 2)
    if isinstance(cert, SuspendedPath):
        notes.append("case: suspended path")
        path = [labels[i] for i in cert.path]
        h = _shorten(adj, path, 2 * k - 2)
        mapping = _embed_sparse(col, h, pool, k)
        seq = [mapping[path[0]]] + [mapping[p] for p in path[2 * k - 1 :]]
        got = _lengthen(col, seq, _images(mapping), pool, 2 * k - 2)
        if isinstance(got, int):
            w = _low(got)
            _blue_at(col, w, to_mask(seq), k)
            raise _ProofGap("path could not be lengthened")
        seq, _ = got
        for p, h_v in zip(path, seq):
            mapping[p] = h_v
        return mapping
    if isinstance(cert, EndEdgeMatching):
        notes.append("case: end-edge matching")
        pairs = [(labels[a], labels[b]) for a, b in cert.edges[: 2 * k - 2]]
        h = _without(adj, [leaf for leaf, _ in pairs])
        mapping = _embed_sparse(col, h, pool, k)
        x = [mapping[s] for _, s in pairs]
        y = _first(pool & ~_images(mapping), len(x))
        if len(y) < len(x):
            raise _ProofGap("not enough free host vertices for the matching")
        out = red_matching_or_blue_biclique(col, x, y)
        if isinstance(out, RedMatching):
            partner = dict(out.edges)
            for (leaf, _), xv in zip(pairs, x):
                mapping[leaf] = partner[xv]
            return mapping
        if len(out.x_side) >= k:
            raise _BlueFound([(out.y_side[0], tuple(out.x_side[:k]))])
        if len(out.y_side) >= k:
            raise _BlueFound([(out.x_side[0], tuple(out.y_side[:k]))])
        raise _ProofGap("Hall violator too small for a blue star")
    assert isinstance(cert, BoundedCoreStar)
    notes.append("case: pendant star")
    v = labels[cert.star_center]
    leaves = [labels[i] for i in cert.star_leaves]
    if len(leaves) < k * k:
        raise _ProofGap(f"pendant star has {len(leaves)} leaves, need {k * k}")
    dropped = leaves[: k * k]
    h = _without(adj, dropped)
    u = max(iter_bits(pool), key=lambda c: ((col.red_mask(c) & pool).bit_count(), -c))
    _blue_at(col, u, pool, k)
    nb = col.blue_mask(u) & pool
    nr = col.red_mask(u) & pool
    a_mask = nr
    for b in iter_bits(nb):
        bl = col.blue_mask(b) & nr
        if bl.bit_count() >= k - 1:
            raise _BlueFound([(b, tuple([u] + _first(bl, k - 1)))])
        a_mask &= col.red_mask(b)
    mapping = _embed_sparse(col, h, a_mask, k)
    mapping[v] = u
    _attach_independent(col, h, mapping, v, list(iter_bits(nb)), notes, adj)
    avail = col.red_mask(u) & pool & ~_images(mapping)
    if avail.bit_count() < len(dropped):
        raise _ProofGap("centre image lacks free red neighbours for the pendant leaves")
    for leaf, h_v in zip(dropped, iter_bits(avail)):
        mapping[leaf] = h_v
    return mapping


# -- versus t disjoint stars -----------------------------------------------------------------


def _upgrade_star(col: TwoColoring, stars: list[Star], outside: int, k: int) -> list[Star] | None:
    """Split one packed star into two by recentring on two of its vertices."""
    for i, (c, lv) in enumerate(stars):
        for a1, a2 in combinations((c, *lv), 2):
            b1 = col.blue_mask(a1) & outside
            b2 = col.blue_mask(a2) & outside
            only1, only2, both = b1 & ~b2, b2 & ~b1, b1 & b2
            need1 = max(0, k - only1.bit_count())
            need2 = max(0, k - only2.bit_count())
            if need1 + need2 > both.bit_count():
                continue
            common = list(iter_bits(both))
            l1 = _first(only1, k) + common[:need1]
            l2 = _first(only2, k) + common[need1 : need1 + need2]
            return stars[:i] + stars[i + 1 :] + [(a1, tuple(l1)), (a2, tuple(l2))]
    return None


def _stars_mask(stars: list[Star]) -> int:
    return to_mask(v for c, lv in stars for v in (c, *lv))


def _embed_multistar(col: TwoColoring, adj: Adj, pool: int, k: int, t: int, notes: list[str]) -> dict[int, int]:
    if t == 1:
        return _embed_spanning(col, adj, pool, k, notes)
    try:
        return _embed_multistar(col, adj, pool, k, t - 1, notes)
    except _BlueFound as found:
        packed = found.stars
    if len(packed) < t - 1:
        raise _ProofGap("induction returned too few blue stars")
    notes.append(f"t = {t}: induction gave {len(packed)} blue star(s)")
    a_mask = _stars_mask(packed)
    g, labels = _as_graph(adj)
    cert = trichotomy(g, (3 * t - 1) * k, 2 * t * k - 2)

    if isinstance(cert, SuspendedPath):
        notes.append(f"t = {t} case: suspended path")
        path = [labels[i] for i in cert.path]
        extra = (t - 1) * k
        h = _shorten(adj, path, extra)
        greedy = pack_blue_stars(col, k, t, pool=pool)
        if greedy.found:
            raise _BlueFound(list(greedy.pack.stars))
        rest = pool & ~to_mask(greedy.pack.vertex_set)
        mapping = _embed_spanning(col, h, rest, k, notes)
        seq = [mapping[path[0]]] + [mapping[p] for p in path[extra + 1 :]]
        got = _lengthen(col, seq, _images(mapping), pool, extra)
        if isinstance(got, int):
            centres = _first(got, t)
            taken = 0
            stars = []
            on_path = to_mask(seq)
            for w in centres:
                nb = col.blue_mask(w) & on_path & ~taken
                if nb.bit_count() < k:
                    break
                leaves = _first(nb, k)
                taken |= to_mask(leaves)
                stars.append((w, tuple(leaves)))
            if len(stars) == t:
                raise _BlueFound(stars)
            raise _ProofGap("path could not be lengthened and no blue tK_{1,k} on it")
        seq, _ = got
        for p, h_v in zip(path, seq):
            mapping[p] = h_v
        return mapping

    if isinstance(cert, EndEdgeMatching):
        notes.append(f"t = {t} case: end-edge matching")
        pairs = [(labels[a], labels[b]) for a, b in cert.edges[: 2 * t * k - 2]]
        h = _without(adj, [leaf for leaf, _ in pairs])
        try:
            mapping = _embed_spanning(col, h, pool & ~a_mask, k, notes)
        except _BlueFound as extra_star:
            raise _BlueFound(packed + extra_star.stars[:1]) from None
        x = [mapping[s] for _, s in pairs]
        y = list(iter_bits(pool & ~_images(mapping)))
        out = red_matching_or_blue_biclique(col, x, y)
        if isinstance(out, RedMatching):
            partner = dict(out.edges)
            for (leaf, _), xv in zip(pairs, x):
                mapping[leaf] = partner[xv]
            return mapping
        y_out = [b for b in out.y_side if not (a_mask >> b) & 1]
        if len(y_out) >= k:
            raise _BlueFound(packed + [(out.x_side[0], tuple(y_out[:k]))])
        if len(out.y_side) >= t and len(out.x_side) >= t * k:
            raise _BlueFound(
                [(out.y_side[i], tuple(out.x_side[i * k : (i + 1) * k])) for i in range(t)]
            )
        raise _ProofGap("blue biclique too small for tK_{1,k}")

    assert isinstance(cert, BoundedCoreStar)
    notes.append(f"t = {t} case: pendant star")
    v = labels[cert.star_center]
    leaves = [labels[i] for i in cert.star_leaves]
    need = (t - 1) * k + k * k - 2 * k + 2
    if len(leaves) < need:
        raise _ProofGap(f"pendant star has {len(leaves)} leaves, need {need}")
    s_mask = pool & ~a_mask
    x_host = next(
        (c for c in iter_bits(s_mask) if (col.red_mask(c) & a_mask).bit_count() >= (t - 1) * k),
        None,
    )
    if x_host is None:
        upgraded = _upgrade_star(col, packed, s_mask, k)
        if upgraded is not None:
            notes.append("no vertex red to (t-1)k packed vertices: split a packed star")
            raise _BlueFound(upgraded)
        raise _ProofGap("counting claim failed: no candidate vertex and no star upgrade")
    dropped = leaves[:need]
    h = _without(adj, dropped)
    nb = col.blue_mask(x_host) & s_mask
    if nb.bit_count() >= k:
        raise _BlueFound(packed + [(x_host, tuple(_first(nb, k)))])
    nr = col.red_mask(x_host) & s_mask
    u_mask = nr
    for b in iter_bits(nb):
        bl = col.blue_mask(b) & nr
        if bl.bit_count() >= k - 1:
            raise _BlueFound(packed + [(b, tuple([x_host] + _first(bl, k - 1)))])
        u_mask &= col.red_mask(b)
    try:
        mapping = _embed_spanning(col, h, u_mask, k, notes)
    except _BlueFound as extra_star:
        raise _BlueFound(packed + extra_star.stars[:1]) from None
    mapping[v] = x_host
    _attach_independent(col, h, mapping, v, list(iter_bits(nb)), notes, adj)
    avail = col.red_mask(x_host) & pool & ~_images(mapping)
    if avail.bit_count() < len(dropped):
        raise _ProofGap("candidate vertex lacks free red neighbours for the pendant leaves")
    for leaf, h_v in zip(dropped, iter_bits(avail)):
        mapping[leaf] = h_v
    return mapping


# -- public entry points ---------------------------------------------------------------------


def _finish(col: TwoColoring, g: Graph, k: int, t: int, run, notes: list[str]) -> EmbedResult:
    try:
        mapping = run()
    except _BlueFound as found:
        pack = StarPack(tuple(found.stars))
        result = EmbedResult(pack=pack, k=k, t=t, notes=tuple(notes))
        try:
            result.verify(col)
            return result
        except ValueError as exc:
            notes.append(f"internal blue witness rejected: {exc}")
            log.warning("blue witness rejected: %s", exc)
    except _ProofGap as gap:
        notes.append(f"proof step failed: {gap}")
        log.info("falling back to global blue search: %s", gap)
    else:
        emb = Embedding(g, col, tuple(mapping[v] for v in g.vertices()))
        emb.verify()
        return EmbedResult(embedding=emb, k=k, t=t, notes=tuple(notes))
    fallback = pack_blue_stars(col, k, t)
    if fallback.found:
        notes.append("blue target located by global greedy search")
        result = EmbedResult(pack=fallback.pack, k=k, t=t, notes=tuple(notes))
        result.verify(col)
        return result
    raise EmbeddingError("; ".join(notes) or "embedding failed without a blue witness")


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise PreconditionError(message)


def _check_k(k: int) -> None:
    _require(k >= 1, f"k must be at least 1, got {k}")


def embed_tree(col: TwoColoring, tree: Graph, k: int) -> EmbedResult:
    """Red copy of ``tree`` or a blue ``K_{1,k}``; guaranteed when ``order >= n + k - 1``.

    Smaller hosts (down to ``order >= n``) are attempted as well; the result
    is then still verified, but neither outcome is guaranteed.
    """
    _check_k(k)
    _require(tree.is_tree(), "pattern must be a tree")
    _require(col.order >= tree.vertex_count, f"host order {col.order} < tree order {tree.vertex_count}")
    notes: list[str] = []
    adj = adjacency_dict(tree)
    return _finish(col, tree, k, 1, lambda: _embed_tree(col, adj, col.full_mask, k), notes)


def required_order_minus_vertex(g: Graph, u: int, k: int) -> int:
    """Sufficient order for embedding ``G - u`` (tree bound or sparse bound)."""
    rest = g.remove_vertices([u]).graph
    n1 = rest.vertex_count
    if rest.is_forest():
        return max(n1 + k - 1, 1)
    if rest.is_connected() and edge_budget_ok(n1, rest.edge_count, small_denominator(k)):
        return n1 + 2 * k - 2
    raise PreconditionError("G - u is neither a forest nor a connected sparse graph")


def embed_minus_vertex(col: TwoColoring, g: Graph, u: int, k: int) -> EmbedResult:
    """Red ``G`` via a red ``G - u`` inside ``N_R(w)`` for host vertex ``w = 0``, or a blue ``K_{1,k}``.

    The order requirement is checked on ``N_R(w)`` itself: it must hold at
    least ``R(G - u)`` vertices, which is implied by ``order >= R(G - u) + k``.
    """
    _check_k(k)
    _require(0 <= u < g.vertex_count, f"vertex {u} out of range")
    _require(col.order >= 1, "host must be non-empty")
    need = required_order_minus_vertex(g, u, k)
    notes: list[str] = []
    adj = adjacency_dict(g)
    if col.blue_degree(0) < k:
        _require(
            col.red_degree(0) >= need,
            f"|N_R(w)| = {col.red_degree(0)} < R(G - u) = {need} (needs order >= {need + k})",
        )
    return _finish(col, g, k, 1, lambda: _embed_minus_vertex(col, adj, u, col.full_mask, k), notes)


class PreparedSparse:
    """Pattern-side work of :func:`embed_sparse`, reusable across many hosts."""

    def __init__(self, g: Graph, k: int):
        _check_k(k)
        n = g.vertex_count
        _require(n >= 1 and g.is_connected(), "pattern must be connected and non-empty")
        _require(
            edge_budget_ok(n, g.edge_count, small_denominator(k)),
            f"e(G) = {g.edge_count} exceeds n(1 + 1/{small_denominator(k)}) for n = {n}",
        )
        self.pattern = g
        self.k = k
        self.required_order = n + 2 * k - 2
        self._adj = adjacency_dict(g)
        self._plan: SparsePlan | None = None
        self._plan_gap: _ProofGap | None = None
        if k > 1:
            try:
                self._plan = _sparse_plan(self._adj, k)
            except _ProofGap as gap:
                self._plan_gap = gap

    def _core(self, col: TwoColoring) -> dict[int, int]:
        if self.k == 1:
            return _embed_all_red(col, self._adj, col.full_mask)
        if self._plan is None:
            raise self._plan_gap
        return _run_sparse_plan(col, self._plan, col.full_mask)

    def embed(self, col: TwoColoring) -> EmbedResult:
        _require(
            col.order >= self.required_order,
            f"host order {col.order} < n + 2k - 2 = {self.required_order}",
        )
        return _finish(col, self.pattern, self.k, 1, lambda: self._core(col), [])


def plan_sparse(g: Graph, k: int) -> PreparedSparse:
    return PreparedSparse(g, k)


def embed_sparse(col: TwoColoring, g: Graph, k: int) -> EmbedResult:
    """Red copy of a connected ``g`` with at most ``n(1 + 1/(2k+1))`` edges, or a blue ``K_{1,k}``."""
    return PreparedSparse(g, k).embed(col)


def spanning_order(g: Graph, k: int) -> int:
    """``max(n, n + k - 1 - alpha'(g))``."""
    n = g.vertex_count
    return max(n, n + k - 1 - capped_alpha_prime(g, max(k - 1, 0)))


def _check_spanning(g: Graph, k: int) -> None:
    _check_k(k)
    n = g.vertex_count
    _require(n >= 1 and g.is_connected(), "pattern must be connected and non-empty")
    _require(n >= 6 * k**3, f"n = {n} < 6k^3 = {6 * k**3}")
    _require(
        edge_budget_ok(n, g.edge_count, spanning_denominator(k)),
        f"e(G) = {g.edge_count} exceeds n(1 + 1/{spanning_denominator(k)}) for n = {n}",
    )


def embed_spanning(col: TwoColoring, g: Graph, k: int) -> EmbedResult:
    """Red copy of ``g`` in a host of order ``max(n, n + k - 1 - alpha')`` or a blue ``K_{1,k}``."""
    _check_spanning(g, k)
    need = spanning_order(g, k)
    _require(col.order >= need, f"host order {col.order} < max(n, n + k - 1 - alpha') = {need}")
    notes: list[str] = []
    adj = adjacency_dict(g)
    return _finish(col, g, k, 1, lambda: _embed_spanning(col, adj, col.full_mask, k, notes), notes)


def embed_vs_multistar(col: TwoColoring, g: Graph, k: int, t: int) -> EmbedResult:
    """Red copy of ``g`` or a blue ``tK_{1,k}`` in a host of order ``max(n, n + k - 1 - alpha') + t - 1``."""
    _require(t >= 1, f"t must be at least 1, got {t}")
    if t == 1:
        return embed_spanning(col, g, k)
    _check_k(k)
    n = g.vertex_count
    _require(n >= 1 and g.is_connected(), "pattern must be connected and non-empty")
    _require(n >= 28 * t * t * k**3, f"n = {n} < 28t^2k^3 = {28 * t * t * k**3}")
    den = multistar_denominator(k, t)
    _require(
        edge_budget_ok(n, g.edge_count, den),
        f"e(G) = {g.edge_count} exceeds n(1 + 1/{den}) for n = {n}",
    )
    need = spanning_order(g, k) + t - 1
    _require(col.order >= need, f"host order {col.order} < max(n, n + k - 1 - alpha') + t - 1 = {need}")
    notes: list[str] = []
    adj = adjacency_dict(g)
    return _finish(col, g, k, t, lambda: _embed_multistar(col, adj, col.full_mask, k, t, notes), notes)
