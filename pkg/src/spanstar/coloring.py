"""Red/blue edge colourings of complete graphs and their blue-side predicates.

A :class:`TwoColoring` of ``K_N`` stores only the red graph; blue adjacency
is answered as the complement. Red neighbourhoods are kept as integer
bitmasks so hosts with a few thousand vertices stay cheap to query.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .graph import Graph, iter_bits, to_mask
from .matching import hall_violator, maximum_matching


class TwoColoring:
    """Edge 2-colouring of ``K_order``; an edge is blue iff it is not red."""

    __slots__ = ("order", "_red", "_full", "__dict__")

    def __init__(self, order: int, red_masks: Sequence[int]):
        if len(red_masks) != order:
            raise ValueError("one red mask per vertex required")
        full = (1 << order) - 1
        for v, m in enumerate(red_masks):
            if (m >> v) & 1 or m & ~full:
                raise ValueError(f"bad red mask at vertex {v}")
        for v, m in enumerate(red_masks):
            for w in iter_bits(m):
                if not (red_masks[w] >> v) & 1:
                    raise ValueError(f"red adjacency not symmetric at ({v}, {w})")
        self.order = order
        self._red = tuple(red_masks)
        self._full = full

    @classmethod
    def _trusted(cls, order: int, red_masks: Sequence[int]) -> "TwoColoring":
        obj = cls.__new__(cls)
        obj.order = order
        obj._red = tuple(red_masks)
        obj._full = (1 << order) - 1
        return obj

    @classmethod
    def from_red(cls, red: Graph) -> "TwoColoring":
        return cls._trusted(red.vertex_count, red.masks)

    @classmethod
    def from_blue_edges(cls, order: int, blue: Iterable[tuple[int, int]]) -> "TwoColoring":
        full = (1 << order) - 1
        masks = [full & ~(1 << v) for v in range(order)]
        for u, v in blue:
            if u == v or not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"bad blue edge ({u}, {v})")
            masks[u] &= ~(1 << v)
            masks[v] &= ~(1 << u)
        return cls._trusted(order, masks)

    @classmethod
    def all_red(cls, order: int) -> "TwoColoring":
        return cls.from_blue_edges(order, ())

    @cached_property
    def red(self) -> Graph:
        return Graph.from_masks(self._red)

    # -- queries -----------------------------------------------------------

    @property
    def full_mask(self) -> int:
        return self._full

    @property
    def red_masks(self) -> tuple[int, ...]:
        return self._red

    def red_mask(self, v: int) -> int:
        return self._red[v]

    def blue_mask(self, v: int) -> int:
        return self._full & ~self._red[v] & ~(1 << v)

    def is_red(self, u: int, v: int) -> bool:
        return u != v and bool((self._red[u] >> v) & 1)

    def is_blue(self, u: int, v: int) -> bool:
        return u != v and not (self._red[u] >> v) & 1

    def red_degree(self, v: int) -> int:
        return self._red[v].bit_count()

    def blue_degree(self, v: int) -> int:
        return self.order - 1 - self._red[v].bit_count()

    def red_min_degree(self) -> int:
        return min((m.bit_count() for m in self._red), default=0)

    def blue_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.order) for v in iter_bits(self.blue_mask(u)) if u < v]

    def restrict(self, vertices: Sequence[int]) -> tuple["TwoColoring", tuple[int, ...]]:
        """Colouring induced on ``vertices`` with its new -> old label table."""
        labels = tuple(sorted(vertices))
        index = {v: i for i, v in enumerate(labels)}
        masks = [to_mask(index[w] for w in iter_bits(self._red[v]) if w in index) for v in labels]
        return TwoColoring._trusted(len(labels), masks), labels

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TwoColoring):
            return NotImplemented
        return self._red == other._red

    def __hash__(self) -> int:
        return hash(self._red)

    def __repr__(self) -> str:
        return f"TwoColoring(order={self.order}, blue_edges={len(self.blue_edges())})"


# -- blue stars -----------------------------------------------------------


Star = tuple[int, tuple[int, ...]]


def _ordered(mask: int, rng: random.Random | None) -> list[int]:
    vs = list(iter_bits(mask))
    if rng is not None:
        rng.shuffle(vs)
    return vs


def blue_star_within(col: TwoColoring, k: int, pool: int, rng: random.Random | None = None) -> Star | None:
    """A blue ``K_{1,k}`` using only vertices of bitmask ``pool``."""
    for v in _ordered(pool, rng):
        nb = col.blue_mask(v) & pool
        if nb.bit_count() >= k:
            leaves = _ordered(nb, rng)[:k] if rng is not None else _first_bits(nb, k)
            return v, tuple(leaves)
    return None


def _first_bits(mask: int, count: int) -> list[int]:
    out = []
    for v in iter_bits(mask):
        if len(out) == count:
            break
        out.append(v)
    return out


def find_blue_star(
    col: TwoColoring, k: int, forbidden: Iterable[int] = (), rng: random.Random | None = None
) -> Star | None:
    """First blue ``K_{1,k}`` avoiding ``forbidden``; centre is the first vertex with enough blue degree."""
    if k < 1:
        raise ValueError("k must be positive")
    return blue_star_within(col, k, col.full_mask & ~to_mask(forbidden), rng)


@dataclass(frozen=True)
class StarPack:
    """Vertex-disjoint blue stars ``K_{1,k}`` given as ``(centre, leaves)``."""

    stars: tuple[Star, ...]

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(v for c, leaves in self.stars for v in (c, *leaves))

    def __len__(self) -> int:
        return len(self.stars)

    def verify(self, col: TwoColoring, k: int, t: int | None = None) -> None:
        """Raise ``ValueError`` unless this is a blue ``tK_{1,k}`` (``t`` defaults to ``len``)."""
        if t is not None and len(self.stars) < t:
            raise ValueError(f"pack has {len(self.stars)} stars, need {t}")
        seen: set[int] = set()
        for c, leaves in self.stars:
            if len(leaves) != k:
                raise ValueError(f"star at {c} has {len(leaves)} leaves, need {k}")
            for v in (c, *leaves):
                if not 0 <= v < col.order:
                    raise ValueError(f"vertex {v} outside the colouring")
                if v in seen:
                    raise ValueError(f"vertex {v} used twice")
                seen.add(v)
            for leaf in leaves:
                if not col.is_blue(c, leaf):
                    raise ValueError(f"edge ({c}, {leaf}) is not blue")


class PackingResult(NamedTuple):
    found: bool
    pack: StarPack


def pack_blue_stars(
    col: TwoColoring, k: int, t: int, rng: random.Random | None = None, pool: int | None = None
) -> PackingResult:
    """Greedy maximal packing of blue ``K_{1,k}``, stopping once ``t`` stars are found."""
    if k < 1 or t < 1:
        raise ValueError("k and t must be positive")
    free = col.full_mask if pool is None else pool
    stars: list[Star] = []
    while len(stars) < t:
        star = blue_star_within(col, k, free, rng)
        if star is None:
            break
        stars.append(star)
        free &= ~to_mask((star[0], *star[1]))
    return PackingResult(len(stars) >= t, StarPack(tuple(stars)))


# -- red matching versus blue biclique -------------------------------------


@dataclass(frozen=True)
class RedMatching:
    edges: tuple[tuple[int, int], ...]
    variant = "red_matching"

    def verify(self, col: TwoColoring, x: Sequence[int], y: Sequence[int]) -> None:
        if sorted(a for a, _ in self.edges) != sorted(x):
            raise ValueError("matching does not cover X exactly")
        ys = [b for _, b in self.edges]
        if len(set(ys)) != len(ys) or not set(ys) <= set(y):
            raise ValueError("matching partners are not distinct vertices of Y")
        for a, b in self.edges:
            if not col.is_red(a, b):
                raise ValueError(f"edge ({a}, {b}) is not red")


@dataclass(frozen=True)
class BlueBiclique:
    c: int
    x_side: tuple[int, ...]
    y_side: tuple[int, ...]
    variant = "blue_biclique"

    def verify(self, col: TwoColoring, x: Sequence[int], y: Sequence[int]) -> None:
        if not 0 <= self.c <= len(x) - 1:
            raise ValueError(f"c = {self.c} outside [0, |X| - 1]")
        if len(self.x_side) < self.c + 1 or not set(self.x_side) <= set(x):
            raise ValueError("x_side must hold at least c + 1 vertices of X")
        if len(self.y_side) < len(y) - self.c or not set(self.y_side) <= set(y):
            raise ValueError("y_side must hold at least |Y| - c vertices of Y")
        for a in self.x_side:
            for b in self.y_side:
                if not col.is_blue(a, b):
                    raise ValueError(f"edge ({a}, {b}) is not blue")


MatchingOutcome = RedMatching | BlueBiclique


def red_matching_or_blue_biclique(col: TwoColoring, x: Sequence[int], y: Sequence[int]) -> MatchingOutcome:
    """Red matching saturating ``x`` or a blue ``K_{c+1, |Y|-c}`` from a Hall violator."""
    x, y = list(x), list(y)
    if set(x) & set(y):
        raise ValueError("X and Y must be disjoint")
    if len(set(x)) != len(x) or len(set(y)) != len(y):
        raise ValueError("X and Y must not repeat vertices")
    if len(x) > len(y):
        raise ValueError("need |X| <= |Y|")
    y_mask = to_mask(y)
    y_pos = {v: i for i, v in enumerate(y)}

    def red_nbrs(a: int) -> list[int]:
        return sorted(iter_bits(col.red_mask(a) & y_mask), key=y_pos.__getitem__)

    m = maximum_matching(x, red_nbrs)
    violator = hall_violator(x, red_nbrs, m)
    if violator is None:
        return RedMatching(tuple((a, m[a]) for a in x))
    s, ns = violator
    ns_set = set(ns)
    return BlueBiclique(len(ns), tuple(s), tuple(b for b in y if b not in ns_set))
