"""Structural parameters of a pattern graph.

Independence number (exact branch-and-bound), the local deleted graphs
``G - N[v]`` and their minimum independence number, suspended paths,
end-edge matchings and the sparsity thresholds the embedding theorems use.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, Relabeled, iter_bits
from .matching import maximum_matching


def local_deleted_graph(g: Graph, v: int) -> Relabeled:
    """``G - N[v]`` with its remap table back to ``g``'s labels."""
    if not 0 <= v < g.vertex_count:
        raise IndexError(f"vertex {v} out of range for {g.vertex_count} vertices")
    closed = g.neighbors(v) | {v}
    return g.remove_vertices(closed)


# -- independence number -------------------------------------------------


def _clique_cover_bound(masks: tuple[int, ...], mask: int) -> int:
    """Greedy clique cover size of the subgraph on ``mask``; bounds alpha from above."""
    count = 0
    while mask:
        v = (mask & -mask).bit_length() - 1
        clique = 1 << v
        cand = masks[v] & mask
        while cand:
            w = (cand & -cand).bit_length() - 1
            clique |= 1 << w
            cand &= masks[w]
        mask &= ~clique
        count += 1
    return count


def _greedy_independent(masks: tuple[int, ...], mask: int) -> int:
    chosen = 0
    while mask:
        v = min(iter_bits(mask), key=lambda u: (masks[u] & mask).bit_count())
        chosen |= 1 << v
        mask &= ~((1 << v) | masks[v])
    return chosen


def _cycles_alternate(masks: tuple[int, ...], mask: int) -> int:
    """Maximum independent set of a disjoint union of cycles."""
    chosen = 0
    while mask:
        start = (mask & -mask).bit_length() - 1
        order = [start]
        prev, cur = -1, start
        while True:
            nb = masks[cur] & mask
            nxt = next(w for w in iter_bits(nb) if w != prev)
            if nxt == start:
                break
            order.append(nxt)
            prev, cur = cur, nxt
        for v in order[0 : 2 * (len(order) // 2) : 2]:
            chosen |= 1 << v
        for v in order:
            mask &= ~(1 << v)
    return chosen


def _first_fit_independent(masks: tuple[int, ...], mask: int, limit: int) -> int:
    chosen = 0
    count = 0
    while mask and count < limit:
        v = (mask & -mask).bit_length() - 1
        chosen |= 1 << v
        count += 1
        mask &= ~((1 << v) | masks[v])
    return chosen


def _max_independent_mask(masks: tuple[int, ...], mask: int, limit: int | None = None) -> int:
    if limit is not None:
        quick = _first_fit_independent(masks, mask, limit)
        if quick.bit_count() >= limit:
            return quick
    best = _greedy_independent(masks, mask)
    best_size = best.bit_count()
    if limit is not None and best_size >= limit:
        return best

    def rec(mask: int, cur: int, size: int) -> None:
        nonlocal best, best_size
        # Degree-0 and degree-1 vertices always belong to some maximum set.
        work = list(iter_bits(mask))
        while work:
            v = work.pop()
            if not (mask >> v) & 1:
                continue
            nb = masks[v] & mask
            if nb & (nb - 1) == 0:
                cur |= 1 << v
                size += 1
                mask &= ~(nb | (1 << v))
                if nb:
                    work.extend(iter_bits(masks[nb.bit_length() - 1] & mask))
        if mask == 0:
            if size > best_size:
                best, best_size = cur, size
            return
        if limit is not None and best_size >= limit:
            return
        if size + _clique_cover_bound(masks, mask) <= best_size:
            return
        v, d = max(((u, (masks[u] & mask).bit_count()) for u in iter_bits(mask)), key=lambda p: p[1])
        if d == 2:
            cyc = _cycles_alternate(masks, mask)
            if size + cyc.bit_count() > best_size:
                best, best_size = cur | cyc, size + cyc.bit_count()
            return
        rec(mask & ~((1 << v) | masks[v]), cur | (1 << v), size + 1)
        if limit is not None and best_size >= limit:
            return
        rec(mask & ~(1 << v), cur, size)

    rec(mask, 0, 0)
    return best


def maximum_independent_set(g: Graph, limit: int | None = None) -> tuple[int, ...]:
    """A maximum independent set of ``g`` (sorted).

    With ``limit`` the search stops as soon as an independent set of that
    size is found, so the result has size ``min(alpha(g), limit)`` or more.
    """
    full = (1 << g.vertex_count) - 1
    return tuple(iter_bits(_max_independent_mask(g.masks, full, limit)))


def independence_number(g: Graph) -> int:
    return len(maximum_independent_set(g))


@dataclass(frozen=True)
class AlphaPrimeReport:
    alpha_prime: int
    witness_vertex: int
    per_vertex_alpha: tuple[int, ...]


def _local_alpha(g: Graph, v: int, limit: int | None = None) -> int:
    full = (1 << g.vertex_count) - 1
    rest = full & ~(g.masks[v] | (1 << v))
    return _max_independent_mask(g.masks, rest, limit).bit_count()


def alpha_prime(g: Graph) -> AlphaPrimeReport:
    """Exact minimum of ``alpha(G - N[v])`` over all vertices; ties go to the smallest index."""
    if g.vertex_count == 0:
        raise ValueError("alpha_prime is undefined for the empty graph")
    per = tuple(_local_alpha(g, v) for v in g.vertices())
    best = min(per)
    return AlphaPrimeReport(best, per.index(best), per)


def capped_alpha_prime(g: Graph, cap: int) -> int:
    """``min(alpha_prime(g), cap)``, searching only as far as the cap requires."""
    if g.vertex_count == 0:
        raise ValueError("alpha_prime is undefined for the empty graph")
    out = cap
    # Vertices of high degree leave the smallest G_v; try them first.
    for v in sorted(g.vertices(), key=lambda u: -g.degree(u)):
        out = min(out, _local_alpha(g, v, limit=out))
        if out == 0:
            break
    return out


# -- suspended paths and end-edges ----------------------------------------


def _chain_through(g: Graph, v: int) -> tuple[list[int], list[int]]:
    """Maximal path through degree-2 vertex ``v``; returns (path, chain interior)."""
    a, b = sorted(g.neighbors(v))

    def walk(nxt: int) -> tuple[list[int], bool]:
        seq = []
        prev, cur = v, nxt
        while g.degree(cur) == 2 and cur != v:
            seq.append(cur)
            prev, cur = cur, next(w for w in g.neighbors(cur) if w != prev)
        if cur == v:
            return seq, True
        seq.append(cur)
        return seq, False

    right, closed = walk(b)
    if closed:
        # The whole component is a cycle.
        return [v] + right, [v] + right
    left, _ = walk(a)
    left_anchor, right_anchor = left[-1], right[-1]
    interior = list(reversed(left[:-1])) + [v] + right[:-1]
    if left_anchor == right_anchor:
        return [left_anchor] + interior, interior
    return [left_anchor] + interior + [right_anchor], interior


def suspended_chains(g: Graph) -> list[list[int]]:
    """Every maximal suspended path (with its anchors), in index order of first interior vertex."""
    seen: set[int] = set()
    out = []
    for v in g.vertices():
        if g.degree(v) != 2 or v in seen:
            continue
        path, interior = _chain_through(g, v)
        seen.update(interior)
        out.append(path)
    return out


def find_suspended_path(g: Graph, q: int) -> list[int] | None:
    """A path on at least ``q`` vertices whose internal vertices all have degree 2.

    The returned path is a whole maximal chain including its two anchor
    endpoints, whose degrees are unconstrained.
    """
    if q < 3:
        raise ValueError(f"suspended path order must be at least 3, got {q}")
    for path in suspended_chains(g):
        if len(path) >= q:
            return path
    return None


def find_end_edge_matching(g: Graph, s: int) -> list[tuple[int, int]] | None:
    """``s`` pairwise disjoint end-edges, each given as ``(end_vertex, support)``."""
    if s < 1:
        raise ValueError(f"matching size must be at least 1, got {s}")
    leaves = [v for v in g.vertices() if g.degree(v) == 1]
    used: set[int] = set()
    edges = []
    for x in leaves:
        (y,) = g.neighbors(x)
        if x in used or y in used:
            continue
        used.update((x, y))
        edges.append((x, y))
        if len(edges) == s:
            return edges
    # Exact fallback: leaves against their supports.
    m = maximum_matching(leaves, lambda x: g.neighbors(x))
    edges = []
    used = set()
    for x in leaves:
        if x in m:
            y = m[x]
            if x in used or y in used:
                continue
            used.update((x, y))
            edges.append((x, y))
    return edges[:s] if len(edges) >= s else None


# -- sparsity thresholds ---------------------------------------------------


@dataclass(frozen=True)
class SparsityReport:
    thm4_ok: bool
    thm8_ok: bool
    lemma9_ok: bool


def edge_budget_ok(n: int, e: int, denominator: int) -> bool:
    """Exact test of ``e <= n * (1 + 1/denominator)``."""
    return e * denominator <= n * (denominator + 1)


def spanning_denominator(k: int) -> int:
    return 24 * k - 12


def multistar_denominator(k: int, t: int) -> int:
    return 21 * t * k - 3 * k + 6


def small_denominator(k: int) -> int:
    return 2 * k + 1


def sparsity_check(g: Graph, k: int, t: int = 1) -> SparsityReport:
    if k < 1 or t < 1:
        raise ValueError("k and t must be positive")
    if g.vertex_count < 1:
        raise ValueError("sparsity is undefined for the empty graph")
    n, e = g.vertex_count, g.edge_count
    return SparsityReport(
        thm4_ok=edge_budget_ok(n, e, spanning_denominator(k)),
        thm8_ok=edge_budget_ok(n, e, multistar_denominator(k, t)),
        lemma9_ok=edge_budget_ok(n, e, small_denominator(k)),
    )


def caro_wei_threshold(k: int) -> int:
    return 120 * k * k - 180 * k + 60


def caro_wei_check(g: Graph, k: int) -> bool:
    """Sufficient condition for ``alpha_prime(g) >= k - 1`` via the Caro-Wei bound."""
    n = g.vertex_count
    d = spanning_denominator(k)
    return (
        edge_budget_ok(n, g.edge_count, d)
        and g.max_degree * d < n * (d - 1)
        and n >= caro_wei_threshold(k)
    )
