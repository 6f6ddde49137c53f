"""Seeded generators for pattern graphs and host colourings.

Every generator takes a ``random.Random`` and uses nothing else as a source
of randomness, so a seed fixes the whole corpus.
"""

from __future__ import annotations

import random
from typing import Callable

from .coloring import TwoColoring
from .graph import Graph
from .invariants import capped_alpha_prime, edge_budget_ok

PATTERN_FAMILIES = ("tree_plus", "long_path", "hub", "caterpillar")


class CorpusError(RuntimeError):
    """Constraints could not be met within the retry budget."""


def _relabel(n: int, edges: list[tuple[int, int]], rng: random.Random) -> Graph:
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph(n, [(perm[a], perm[b]) for a, b in edges])


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform random labelled tree (Pruefer decoding)."""
    if n < 1:
        raise ValueError("a tree needs at least one vertex")
    if n <= 2:
        return Graph(n, [(0, 1)] if n == 2 else [])
    code = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in code:
        degree[x] += 1
    edges = []
    for x in code:
        leaf = next(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    a, b = (v for v in range(n) if degree[v] == 1)
    edges.append((a, b))
    return Graph(n, edges)


def _add_random_edges(n: int, edges: list[tuple[int, int]], extra: int, rng: random.Random) -> list[tuple[int, int]]:
    present = {frozenset(e) for e in edges}
    out = list(edges)
    tries = 0
    while extra > 0 and tries < 100 * (extra + 1):
        tries += 1
        a, b = rng.randrange(n), rng.randrange(n)
        if a == b or frozenset((a, b)) in present:
            continue
        present.add(frozenset((a, b)))
        out.append((a, b))
        extra -= 1
    return out


def _tree_plus(n: int, max_edges: int, rng: random.Random) -> Graph:
    tree = random_tree(n, rng)
    extra = rng.randint(0, max(0, max_edges - (n - 1)))
    return Graph(n, _add_random_edges(n, tree.edges(), extra, rng))


def _long_path(n: int, max_edges: int, rng: random.Random) -> Graph:
    # A long spine with a few short branches and chords near one end.
    spine = rng.randint(max(2, n // 2), n)
    edges = [(i, i + 1) for i in range(spine - 1)]
    for v in range(spine, n):
        edges.append((v, rng.randrange(v if rng.random() < 0.5 else max(1, spine // 4))))
    extra = rng.randint(0, max(0, max_edges - (n - 1)))
    present = {frozenset(e) for e in edges}
    for _ in range(extra):
        a = rng.randrange(min(n, 8))
        b = rng.randrange(min(n, 8))
        if a != b and frozenset((a, b)) not in present:
            present.add(frozenset((a, b)))
            edges.append((a, b))
    return _relabel(n, edges, rng)


def _hub(n: int, max_edges: int, rng: random.Random) -> Graph:
    # A centre carrying most vertices as leaves plus short cycles through it,
    # so that neither long chains nor two disjoint end-edges exist.
    hub = 0
    edges: list[tuple[int, int]] = []
    nxt = 1
    budget = max_edges - (n - 1)
    cycles = 1 + (1 if budget >= 1 and rng.random() < 0.5 else 0)
    for _ in range(cycles):
        length = rng.choice((4, 5))
        if nxt + length - 1 > n:
            break
        ring = [hub] + list(range(nxt, nxt + length - 1))
        nxt += length - 1
        edges.extend((ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring)))
    for v in range(nxt, n):
        edges.append((hub, v))
    return _relabel(n, edges, rng)


def _caterpillar(n: int, max_edges: int, rng: random.Random) -> Graph:
    spine = rng.randint(max(2, n // 4), max(2, n // 2))
    edges = [(i, i + 1) for i in range(spine - 1)]
    for v in range(spine, n):
        edges.append((v, rng.randrange(spine)))
    extra = rng.randint(0, max(0, max_edges - (n - 1)))
    return _relabel(n, _add_random_edges(n, edges, extra, rng), rng)


_FAMILIES: dict[str, Callable[[int, int, random.Random], Graph]] = {
    "tree_plus": _tree_plus,
    "long_path": _long_path,
    "hub": _hub,
    "caterpillar": _caterpillar,
}


def random_pattern(
    n: int,
    max_edges: int,
    rng: random.Random,
    min_alpha_prime: int = 0,
    family: str | None = None,
    retries: int = 2000,
) -> Graph:
    """Connected graph on ``n`` vertices and at most ``max_edges`` edges with ``alpha' >= min_alpha_prime``.

    ``family`` picks a generator from :data:`PATTERN_FAMILIES`; ``None``
    draws one per attempt. Rejection sampling with ``retries`` attempts.
    """
    if n < 1 or max_edges < n - 1:
        raise CorpusError(f"no connected graph on {n} vertices with at most {max_edges} edges")
    for _ in range(retries):
        name = family if family is not None else rng.choice(PATTERN_FAMILIES)
        g = _FAMILIES[name](n, max_edges, rng)
        if g.edge_count > max_edges or not g.is_connected():
            continue
        if min_alpha_prime and capped_alpha_prime(g, min_alpha_prime) < min_alpha_prime:
            continue
        return g
    raise CorpusError(f"no pattern with alpha' >= {min_alpha_prime} after {retries} attempts")


def sparse_pattern(n: int, denominator: int, rng: random.Random, **kwargs) -> Graph:
    """:func:`random_pattern` under the budget ``e <= n(1 + 1/denominator)``."""
    max_edges = (n * (denominator + 1)) // denominator
    assert edge_budget_ok(n, max_edges, denominator)
    return random_pattern(n, max_edges, rng, **kwargs)


# -- hosts ---------------------------------------------------------------------------


def bounded_blue_edges(order: int, max_degree: int, rng: random.Random, density: float = 1.0) -> list[tuple[int, int]]:
    """Random blue graph with maximum degree at most ``max_degree``.

    Built as a union of ``max_degree`` random near-perfect matchings, each
    edge kept with probability ``density`` and only while both ends have room.
    """
    deg = [0] * order
    present: set[frozenset[int]] = set()
    edges = []
    for _ in range(max_degree):
        perm = list(range(order))
        rng.shuffle(perm)
        for i in range(0, order - 1, 2):
            a, b = perm[i], perm[i + 1]
            if rng.random() >= density or deg[a] >= max_degree or deg[b] >= max_degree:
                continue
            if frozenset((a, b)) in present:
                continue
            present.add(frozenset((a, b)))
            deg[a] += 1
            deg[b] += 1
            edges.append((a, b))
    return edges


def star_free_host(order: int, k: int, rng: random.Random, density: float | None = None) -> TwoColoring:
    """Colouring of ``K_order`` with red minimum degree at least ``order - k``."""
    if density is None:
        density = rng.choice((1.0, 1.0, 0.9, 0.6))
    return TwoColoring.from_blue_edges(order, bounded_blue_edges(order, k - 1, rng, density))


def host_with_packing(order: int, k: int, stars: int, rng: random.Random) -> TwoColoring:
    """Colouring whose blue graph has maximum ``K_{1,k}``-packing number exactly ``stars``.

    Blue is ``stars`` disjoint ``K_{1,k}`` components plus, on the remaining
    vertices, a random graph of maximum degree ``k - 1``.
    """
    used = stars * (k + 1)
    if used > order:
        raise CorpusError(f"{stars} stars need {used} vertices, host has {order}")
    perm = list(range(order))
    rng.shuffle(perm)
    edges = []
    for i in range(stars):
        c = perm[i * (k + 1)]
        edges.extend((c, perm[i * (k + 1) + j]) for j in range(1, k + 1))
    rest = perm[used:]
    for a, b in bounded_blue_edges(len(rest), k - 1, rng):
        edges.append((rest[a], rest[b]))
    return TwoColoring.from_blue_edges(order, edges)
