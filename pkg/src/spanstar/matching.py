"""Augmenting-path bipartite matching with Hall-violator extraction."""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Sequence, TypeVar

L = TypeVar("L", bound=Hashable)
R = TypeVar("R", bound=Hashable)


def maximum_matching(left: Sequence[L], neighbors: Callable[[L], Iterable[R]]) -> dict[L, R]:
    """Maximum matching of ``left`` into the right side (Kuhn's algorithm).

    ``neighbors(x)`` must return the right-side vertices adjacent to ``x`` in
    a deterministic order; the result maps matched left vertices to partners.
    """
    adj = {x: list(neighbors(x)) for x in left}
    mate_of_right: dict[R, L] = {}

    def augment(x: L, seen: set) -> bool:
        for y in adj[x]:
            if y in seen:
                continue
            seen.add(y)
            if y not in mate_of_right or augment(mate_of_right[y], seen):
                mate_of_right[y] = x
                return True
        return False

    for x in left:
        augment(x, set())
    return {x: y for y, x in mate_of_right.items()}


def hall_violator(
    left: Sequence[L], neighbors: Callable[[L], Iterable[R]], matching: dict[L, R]
) -> tuple[list[L], list[R]] | None:
    """Return ``(S, N(S))`` with ``|N(S)| < |S|`` or ``None`` if ``matching`` covers ``left``.

    ``matching`` must be maximum. ``S`` is the set of left vertices reachable
    from the first unmatched left vertex along alternating paths.
    """
    free = [x for x in left if x not in matching]
    if not free:
        return None
    mate_of_right = {y: x for x, y in matching.items()}
    order = {x: i for i, x in enumerate(left)}
    s_set = {free[0]}
    ns: dict[R, None] = {}
    frontier = [free[0]]
    while frontier:
        x = frontier.pop()
        for y in neighbors(x):
            if y in ns:
                continue
            ns[y] = None
            if y not in mate_of_right:
                raise ValueError("matching is not maximum: augmenting path found")
            x2 = mate_of_right[y]
            if x2 not in s_set:
                s_set.add(x2)
                frontier.append(x2)
    s = sorted(s_set, key=order.__getitem__)
    return s, list(ns)
