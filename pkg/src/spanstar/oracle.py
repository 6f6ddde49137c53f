"""Brute-force ground truth at desk scale.

Subgraph containment by backtracking, exact star packings, exact small
Ramsey numbers ``r(G, tK_{1,k})`` by enumerating the admissible blue graphs
up to isomorphism, and a deliberately naive labelled enumerator used to
cross-check the pruned search.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Callable, Iterator, Sequence

import pynauty

from .coloring import TwoColoring
from .graph import Graph, iter_bits

Star = tuple[int, tuple[int, ...]]
ALPHA_BRUTEFORCE_CAP = 24


class OracleError(RuntimeError):
    """The search cap was reached before the value was resolved."""


# -- containment ---------------------------------------------------------------------


def _pattern_order(pattern: Graph) -> list[int]:
    """Highest degree first, then greedily the vertex with most placed neighbours."""
    n = pattern.vertex_count
    placed: list[int] = []
    seen = set()
    weight = [0] * n
    while len(placed) < n:
        best = max(
            (v for v in range(n) if v not in seen),
            key=lambda v: (weight[v], pattern.degree(v), -v),
        )
        placed.append(best)
        seen.add(best)
        for w in pattern.neighbors(best):
            weight[w] += 1
    return placed


def subgraph_contains(host: Graph, pattern: Graph) -> tuple[int, ...] | None:
    """Injective edge-preserving map of ``pattern`` into ``host`` (indexed by pattern vertex), or ``None``."""
    n, m = pattern.vertex_count, host.vertex_count
    if n > m or pattern.edge_count > host.edge_count:
        return None
    if n == 0:
        return ()
    order = _pattern_order(pattern)
    pos = {v: i for i, v in enumerate(order)}
    back = [[w for w in pattern.neighbors(v) if pos[w] < pos[v]] for v in order]
    masks = host.masks
    by_degree = [0] * (max(pattern.degrees) + 1)
    for d in range(len(by_degree)):
        by_degree[d] = sum(1 << h for h in range(m) if host.degree(h) >= d)
    image = [-1] * n

    def rec(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        cand = by_degree[pattern.degree(v)] & ~used
        for w in back[i]:
            cand &= masks[image[w]]
        for h in iter_bits(cand):
            image[v] = h
            if rec(i + 1, used | (1 << h)):
                return True
        image[v] = -1
        return False

    return tuple(image) if rec(0, 0) else None


# -- independence -----------------------------------------------------------------------


def alpha_bruteforce(g: Graph) -> int:
    """Exact independence number by include/exclude enumeration (at most 24 vertices)."""
    n = g.vertex_count
    if n > ALPHA_BRUTEFORCE_CAP:
        raise ValueError(f"alpha_bruteforce is capped at {ALPHA_BRUTEFORCE_CAP} vertices, got {n}")
    adj = [set(g.neighbors(v)) for v in range(n)]
    best = 0

    def rec(i: int, chosen: list[int], blocked: set[int]) -> None:
        nonlocal best
        if len(chosen) + (n - i) <= best:
            return
        if i == n:
            best = len(chosen)
            return
        if i not in blocked:
            chosen.append(i)
            rec(i + 1, chosen, blocked | adj[i])
            chosen.pop()
        rec(i + 1, chosen, blocked)

    rec(0, [], set())
    return best


def chvatal_value(n_tree: int, m_clique: int) -> int:
    """``(n - 1)(m - 1) + 1``."""
    if n_tree < 1 or m_clique < 1:
        raise ValueError("both arguments must be positive")
    return (n_tree - 1) * (m_clique - 1) + 1


# -- star packings --------------------------------------------------------------------------


def max_star_packing(masks: Sequence[int], k: int, stop_at: int | None = None) -> list[Star]:
    """Maximum family of vertex-disjoint ``K_{1,k}`` in the graph given by adjacency ``masks``.

    Exhaustive: the lowest remaining vertex is skipped, made a centre, or
    made a leaf of one of its neighbours. ``stop_at`` ends the search once a
    packing of that size is found.
    """
    if k < 1:
        raise ValueError("k must be positive")
    best: list[Star] = []

    def rec(rem: int, stars: list[Star]) -> bool:
        nonlocal best
        if len(stars) > len(best):
            best = list(stars)
            if stop_at is not None and len(best) >= stop_at:
                return True
        if len(stars) + rem.bit_count() // (k + 1) <= len(best):
            return False
        # drop vertices that cannot be in any star
        while rem:
            v = (rem & -rem).bit_length() - 1
            if masks[v] & rem:
                break
            rem &= ~(1 << v)
        if not rem:
            return False
        v = (rem & -rem).bit_length() - 1
        nb = masks[v] & rem
        for leaves in combinations(iter_bits(nb), k):
            stars.append((v, leaves))
            hit = rec(rem & ~(1 << v) & ~sum(1 << x for x in leaves), stars)
            stars.pop()
            if hit:
                return True
        for c in iter_bits(nb):
            others = masks[c] & rem & ~(1 << v)
            for rest in combinations(iter_bits(others), k - 1):
                leaves = tuple(sorted((v, *rest)))
                stars.append((c, leaves))
                hit = rec(rem & ~(1 << c) & ~sum(1 << x for x in leaves), stars)
                stars.pop()
                if hit:
                    return True
        return rec(rem & ~(1 << v), stars)

    rec((1 << len(masks)) - 1, [])
    return best


# -- enumeration of blue graphs ------------------------------------------------------------------


def _certificate(n: int, masks: Sequence[int]) -> bytes:
    adj = {v: list(iter_bits(masks[v])) for v in range(n)}
    return pynauty.certificate(pynauty.Graph(n, adjacency_dict=adj))


@dataclass
class EnumerationStats:
    generated: int = 0
    rejected: int = 0
    classes: int = 0


def blue_graph_classes(
    n: int, admissible: Callable[[tuple[int, ...], int, int], bool], stats: EnumerationStats | None = None
) -> Iterator[tuple[int, ...]]:
    """Every graph on ``n`` vertices passing a hereditary test, one per isomorphism class.

    Grows graphs one edge at a time, level by edge count, keeping a single
    representative per canonical certificate. ``admissible(masks, u, v)`` is
    called after edge ``uv`` was added and must be closed under removing edges.
    """
    stats = stats if stats is not None else EnumerationStats()
    level = [tuple([0] * n)]
    stats.classes += 1
    yield level[0]
    while level:
        nxt: dict[bytes, tuple[int, ...]] = {}
        for masks in level:
            for u in range(n):
                for v in range(u + 1, n):
                    if (masks[u] >> v) & 1:
                        continue
                    grown = list(masks)
                    grown[u] |= 1 << v
                    grown[v] |= 1 << u
                    grown = tuple(grown)
                    stats.generated += 1
                    if not admissible(grown, u, v):
                        stats.rejected += 1
                        continue
                    cert = _certificate(n, grown)
                    if cert not in nxt:
                        nxt[cert] = grown
        level = list(nxt.values())
        for masks in level:
            stats.classes += 1
            yield masks


def _star_free(k: int) -> Callable[[tuple[int, ...], int, int], bool]:
    def ok(masks: tuple[int, ...], u: int, v: int) -> bool:
        return masks[u].bit_count() <= k - 1 and masks[v].bit_count() <= k - 1

    return ok


def _packing_below(k: int, t: int) -> Callable[[tuple[int, ...], int, int], bool]:
    def ok(masks: tuple[int, ...], u: int, v: int) -> bool:
        return len(max_star_packing(masks, k, stop_at=t)) < t

    return ok


# -- exact Ramsey numbers ------------------------------------------------------------------------


@dataclass(frozen=True)
class OrderStats:
    order: int
    classes_checked: int
    generated: int
    rejected: int
    all_contain: bool


@dataclass(frozen=True)
class RamseyResult:
    value: int
    k: int
    t: int
    witness_colorings: tuple[tuple[int, TwoColoring], ...]
    stats: tuple[OrderStats, ...]

    @property
    def certificate(self) -> str:
        last = self.stats[-1]
        return (
            f"all {last.classes_checked} admissible blue graphs on {self.value} vertices "
            f"leave a red copy (generated {last.generated}, rejected {last.rejected})"
        )


def _coloring_from_blue(n: int, masks: Sequence[int]) -> TwoColoring:
    full = (1 << n) - 1
    return TwoColoring._trusted(n, [full & ~masks[v] & ~(1 << v) for v in range(n)])


def _exact(g: Graph, k: int, t: int, n_cap: int, admissible) -> RamseyResult:
    if k < 1 or t < 1:
        raise ValueError("k and t must be positive")
    witnesses = []
    stats = []
    for order in range(1, n_cap + 1):
        if order < g.vertex_count:
            witnesses.append((order, TwoColoring.all_red(order)))
            continue
        es = EnumerationStats()
        checked = 0
        witness = None
        for masks in blue_graph_classes(order, admissible, es):
            checked += 1
            col = _coloring_from_blue(order, masks)
            if subgraph_contains(col.red, g) is None:
                witness = col
                break
        stats.append(OrderStats(order, checked, es.generated, es.rejected, witness is None))
        if witness is None:
            return RamseyResult(order, k, t, tuple(witnesses), tuple(stats))
        witnesses.append((order, witness))
    raise OracleError(f"value exceeds the cap N = {n_cap}")


def exact_ramsey_star(g: Graph, k: int, n_cap: int) -> RamseyResult:
    """``r(G, K_{1,k})``: blue graphs range over maximum degree at most ``k - 1``."""
    return _exact(g, k, 1, n_cap, _star_free(k))


def exact_ramsey_multistar(g: Graph, k: int, t: int, n_cap: int) -> RamseyResult:
    """``r(G, tK_{1,k})``: blue graphs range over those without ``t`` disjoint ``K_{1,k}``."""
    return _exact(g, k, t, n_cap, _packing_below(k, t))


def is_ramsey_witness(col: TwoColoring, g: Graph, k: int, t: int = 1) -> bool:
    """No red ``G`` and no blue ``tK_{1,k}`` in ``col`` (both checked exhaustively)."""
    blue = [col.blue_mask(v) for v in range(col.order)]
    return subgraph_contains(col.red, g) is None and len(max_star_packing(blue, k, stop_at=t)) < t


# -- naive cross-check ----------------------------------------------------------------------------


def _naive_contains(n: int, red: set[frozenset[int]], pattern: Graph) -> bool:
    edges = pattern.edges()
    for image in permutations(range(n), pattern.vertex_count):
        if all(frozenset((image[a], image[b])) in red for a, b in edges):
            return True
    return False


def _naive_packing(n: int, blue: set[frozenset[int]], k: int, t: int) -> bool:
    """True when ``t`` vertex-disjoint blue ``K_{1,k}`` exist (plain search over star lists)."""
    stars = []
    for c in range(n):
        nb = [w for w in range(n) if frozenset((c, w)) in blue]
        for leaves in combinations(nb, k):
            stars.append(frozenset((c, *leaves)))
    for combo in combinations(stars, t):
        if sum(len(s) for s in combo) == len(frozenset().union(*combo)):
            return True
    return False


def naive_ramsey(g: Graph, k: int, t: int, n_cap: int) -> int:
    """``r(G, tK_{1,k})`` over all labelled colourings, without any symmetry pruning."""
    for order in range(1, n_cap + 1):
        if order < g.vertex_count:
            continue
        pairs = [frozenset(p) for p in combinations(range(order), 2)]
        good = True
        for bits in range(1 << len(pairs)):
            blue = {p for i, p in enumerate(pairs) if (bits >> i) & 1}
            if _naive_packing(order, blue, k, t):
                continue
            if not _naive_contains(order, set(pairs) - blue, g):
                good = False
                break
        if good:
            return order
    raise OracleError(f"value exceeds the cap N = {n_cap}")
