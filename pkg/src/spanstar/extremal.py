"""Lower-bound colourings, bound formulas and the threshold functions.

The star construction colours ``K_m`` so that blue is a disjoint union of
cliques ``K_k`` and ``K_{k-1}``: no blue ``K_{1,k}`` exists, and a red copy
of ``G`` would need more vertices than the independent sets allow.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .coloring import TwoColoring, pack_blue_stars
from .graph import Graph, iter_bits

Rational = Union[int, Fraction, str]


@dataclass(frozen=True)
class BoundReport:
    n: int
    k: int
    t: int
    alpha_prime: int
    beta: int
    lower: int
    upper: int
    multistar_upper: int


def bound_report(n: int, k: int, t: int, alpha_prime: int) -> BoundReport:
    if n < 1 or k < 1 or t < 1:
        raise ValueError("n, k and t must be positive")
    if alpha_prime < 0:
        raise ValueError("alpha_prime must be nonnegative")
    beta = 0 if (n + k - 2 - alpha_prime) % k == 0 else 1
    lower = max(n, n + k - 1 - alpha_prime - beta)
    upper = max(n, n + k - 1 - alpha_prime)
    return BoundReport(n, k, t, alpha_prime, beta, lower, upper, upper + t - 1)


# -- constructions -----------------------------------------------------------------


@dataclass(frozen=True)
class CliqueUnion:
    """One colour class described as a disjoint union of cliques ``(size, multiplicity)``."""

    side: str
    cliques: tuple[tuple[int, int], ...]

    @property
    def order(self) -> int:
        return sum(size * mult for size, mult in self.cliques)


@dataclass(frozen=True)
class ExtremalConstruction:
    kind: str
    coloring: TwoColoring
    description: CliqueUnion
    params: tuple[tuple[str, int], ...] = ()


def _clique_union_masks(cliques: tuple[tuple[int, int], ...]) -> list[int]:
    masks: list[int] = []
    start = 0
    for size, mult in cliques:
        for _ in range(mult):
            block = ((1 << size) - 1) << start
            masks.extend(block & ~(1 << v) for v in range(start, start + size))
            start += size
    return masks


def _from_side(side: str, cliques: tuple[tuple[int, int], ...]) -> TwoColoring:
    masks = _clique_union_masks(cliques)
    order = len(masks)
    if side == "red":
        return TwoColoring._trusted(order, masks)
    full = (1 << order) - 1
    return TwoColoring._trusted(order, [full & ~m & ~(1 << v) for v, m in enumerate(masks)])


def star_decomposition(m: int, k: int) -> tuple[int, int]:
    """``(t, s)`` with ``m = tk + s`` and ``0 < s <= k``."""
    t = (m - 1) // k
    return t, m - t * k


def build_star_lower_construction(n: int, k: int, alpha_prime: int) -> ExtremalConstruction:
    """Colouring on ``lower - 1`` vertices whose blue graph is ``(t-k+1+s)K_k u (k-s)K_{k-1}``.

    ``lower`` is :attr:`BoundReport.lower`. When ``n + k - 1 - alpha' - beta``
    exceeds ``n`` this is ``n + k - 2 - alpha' - beta``; otherwise the same
    clique shape is laid out on ``n - 1`` vertices.
    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    if not 0 <= alpha_prime <= k - 1:
        raise ValueError(f"alpha_prime must lie in [0, k - 1], got {alpha_prime}")
    rep = bound_report(n, k, 1, alpha_prime)
    m = rep.lower - 1
    t, s = star_decomposition(m, k)
    big = t - k + 1 + s
    if big < 0:
        raise ValueError(f"multiplicity t - k + 1 + s = {big} < 0 for n = {n}, k = {k}")
    cliques = tuple((size, mult) for size, mult in ((k, big), (k - 1, k - s)) if mult and size)
    coloring = _from_side("blue", cliques)
    assert coloring.order == m
    params = (("n", n), ("k", k), ("alpha_prime", alpha_prime), ("beta", rep.beta), ("t", t), ("s", s))
    return ExtremalConstruction("star", coloring, CliqueUnion("blue", cliques), params)


def build_clique_construction(n: int) -> ExtremalConstruction:
    """All-red ``K_{n-1}``."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    cliques = ((n - 1, 1),)
    return ExtremalConstruction("clique", _from_side("red", cliques), CliqueUnion("red", cliques), (("n", n),))


def build_multistar_construction(n: int, t: int) -> ExtremalConstruction:
    """Red ``K_{n-1} u K_{t-1}``; blue is the complete bipartite graph between the parts."""
    if n < 2 or t < 1:
        raise ValueError("need n >= 2 and t >= 1")
    cliques = tuple((size, 1) for size in (n - 1, t - 1) if size)
    coloring = _from_side("red", cliques)
    return ExtremalConstruction("multistar", coloring, CliqueUnion("red", cliques), (("n", n), ("t", t)))


# -- validation -------------------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    status: str  # "pass", "fail" or "skipped"
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def status(self, name: str) -> str:
        return next(c.status for c in self.checks if c.name == name)


def _side_masks(col: TwoColoring, side: str) -> list[int]:
    if side == "red":
        return [col.red_mask(v) for v in range(col.order)]
    return [col.blue_mask(v) for v in range(col.order)]


def clique_components(masks: list[int]) -> list[int] | None:
    """Sizes of the components if each one is a clique, else ``None``."""
    seen = 0
    sizes = []
    for v in range(len(masks)):
        if (seen >> v) & 1:
            continue
        comp = masks[v] | (1 << v)
        for w in iter_bits(comp):
            if masks[w] | (1 << w) != comp:
                return None
        seen |= comp
        sizes.append(comp.bit_count())
    return sizes


def blue_max_degree(col: TwoColoring) -> int:
    return max((col.blue_degree(v) for v in range(col.order)), default=0)


def validate_construction(
    c: ExtremalConstruction, g: Graph | None, k: int, t: int = 1, exhaustive_limit: int = 10
) -> ValidationReport:
    """Check the description, the absence of a blue ``tK_{1,k}`` and (when small) of a red ``G``."""
    from .oracle import max_star_packing, subgraph_contains

    col = c.coloring
    checks = []
    sizes = clique_components(_side_masks(col, c.description.side))
    expected = sorted(size for size, mult in c.description.cliques for _ in range(mult))
    if c.description.side == "blue":
        got = sorted(s for s in sizes if s > 1) if sizes is not None else None
        expected = [s for s in expected if s > 1]
    else:
        got = sorted(sizes) if sizes is not None else None
    ok = got == expected and c.description.order == col.order
    checks.append(Check("description", "pass" if ok else "fail", f"{c.description.side} cliques {got}"))
    greedy = pack_blue_stars(col, k, t)
    checks.append(
        Check("blue_greedy", "fail" if greedy.found else "pass", f"greedy pack size {len(greedy.pack)}")
    )
    if t == 1:
        d = blue_max_degree(col)
        checks.append(Check("blue_max_degree", "pass" if d <= k - 1 else "fail", f"blue max degree {d}"))
    if col.order <= exhaustive_limit:
        best = max_star_packing(_side_masks(col, "blue"), k, stop_at=t)
        checks.append(
            Check("blue_exhaustive", "pass" if len(best) < t else "fail", f"maximum packing {len(best)}")
        )
    else:
        checks.append(Check("blue_exhaustive", "skipped", f"order {col.order} > limit {exhaustive_limit}"))
    if g is None:
        checks.append(Check("red_exhaustive", "skipped", "no pattern supplied"))
    elif g.vertex_count <= exhaustive_limit:
        found = subgraph_contains(col.red, g)
        checks.append(
            Check("red_exhaustive", "pass" if found is None else "fail", "no red copy" if found is None else f"red copy {found}")
        )
    else:
        checks.append(
            Check(
                "red_exhaustive",
                "skipped",
                f"|G| = {g.vertex_count} > limit {exhaustive_limit}; asserted by the counting argument, not machine-checked",
            )
        )
    return ValidationReport(tuple(checks))


# -- thresholds ------------------------------------------------------------------------------


@dataclass(frozen=True)
class Thresholds:
    k: int
    t: int
    c: Fraction
    f: Fraction
    f_expanded: Fraction
    h: Fraction
    h_expanded: Fraction
    h_expanded_as_printed: Fraction
    thm4_n_min: int
    thm8_n_min: int
    thm4_edge_slack: Fraction
    thm8_edge_slack: Fraction
    thm8_n_sufficient: Fraction


def f_product(k: int, c: Fraction) -> Fraction:
    return c / (24 * k) * (12 * k - 12 + Fraction(24 * k) / c) * (2 * k**3 + 13 * k**2 - 40 * k + 25)


def f_expanded(k: int, c: Fraction) -> Fraction:
    return (
        (c + 2) * k**3
        + (Fraction(11, 2) * c + 13) * k**2
        - (Fraction(53, 2) * c + 40) * k
        + (Fraction(65, 2) * c + 25)
        - Fraction(25, 2) * c / k
    )


def h_product(k: int, t: int, c: Fraction) -> Fraction:
    return (
        c
        / (24 * t * k)
        * (9 * t * k - 3 * k - 6 + Fraction(24 * t * k) / c)
        * (2 * t * k**3 + 14 * t * t * k * k - 10 * t * k * k - 3 * k * k - 25 * t * k + 15 * k + 7)
    )


def h_expanded_as_printed(k: int, t: int, c: Fraction) -> Fraction:
    """Term-by-term expansion exactly as usually quoted; it omits ``-(c/4)k^3``."""
    return (
        (3 * c + 8) / 4 * t * k**3
        + (21 * c + 56) / 4 * t * t * k * k
        - (11 * c + 20) / 2 * t * k * k
        - (3 * c + 24) / 8 * k * k
        + 3 * c / (8 * t) * k * k
        - (103 * c + 200) / 8 * t * k
        + (45 * c + 60) / 4 * k
        - 9 * c / (8 * t) * k
        + (71 * c + 56) / 8
        - 37 * c / (8 * t)
        - 7 * c / (4 * t * k)
    )


def h_expanded(k: int, t: int, c: Fraction) -> Fraction:
    """Full expansion of :func:`h_product` (the quoted one plus the ``-(c/4)k^3`` term)."""
    return h_expanded_as_printed(k, t, c) - c / 4 * k**3


def thresholds(k: int, t: int, c: Rational) -> Thresholds:
    c = Fraction(c)
    if k < 2 or t < 1:
        raise ValueError("need k >= 2 and t >= 1")
    if c <= 0:
        raise ValueError("c must be positive")
    f = f_product(k, c)
    h = h_product(k, t, c)
    return Thresholds(
        k=k,
        t=t,
        c=c,
        f=f,
        f_expanded=f_expanded(k, c),
        h=h,
        h_expanded=h_expanded(k, t, c),
        h_expanded_as_printed=h_expanded_as_printed(k, t, c),
        thm4_n_min=6 * k**3,
        thm8_n_min=28 * t * t * k**3,
        thm4_edge_slack=12 * k - 12 + Fraction(24 * k) / c,
        thm8_edge_slack=9 * t * k - 3 * k - 6 + Fraction(24 * t * k) / c,
        thm8_n_sufficient=max(f + 2 * t * k - 2, f + t * k + k * k - 3 * k + 2, h),
    )
