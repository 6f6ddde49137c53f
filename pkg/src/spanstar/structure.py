"""Trichotomy certificates for sparse connected graphs and the low-degree reduction.

A sparse connected graph has a long suspended path, many disjoint
end-edges, or a small core of degree >= 2 vertices together with a big
pendant star. :func:`trichotomy` returns whichever structure applies as a
checkable certificate.

The reduction deletes a vertex of degree at most 2 (re-joining the two
neighbours of a degree-2 cut vertex). :func:`reduce_k` records every step
so the original graph can be rebuilt from the reduced one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .graph import (
    Graph,
    Relabeled,
    adjacency_dict,
    articulation_points,
    graph_from_dict,
    is_connected_adj,
)
from .invariants import find_end_edge_matching, find_suspended_path


class CertificateError(ValueError):
    """A certificate failed verification or its hypotheses do not hold."""


@dataclass(frozen=True)
class TrichotomyParams:
    q: int
    s: int
    ell: int
    gamma: int

    @classmethod
    def for_graph(cls, g: Graph, q: int, s: int) -> "TrichotomyParams":
        ell = g.edge_count - g.vertex_count
        return cls(q, s, ell, core_bound(q, s, ell))

    @property
    def effective_gamma(self) -> int:
        # For s = 2 and ell = -1 the closed form goes negative, while the only
        # graphs reaching this branch (stars) have a one-vertex core.
        if self.s == 2 and self.ell == -1:
            return max(self.gamma, 1)
        return self.gamma

    def star_bound(self, n: int) -> int:
        """``ceil((n - gamma) / (s - 1))`` using :attr:`effective_gamma`."""
        return -((self.effective_gamma - n) // (self.s - 1))


def core_bound(q: int, s: int, ell: int) -> int:
    return (q - 2) * (2 * s + 3 * ell - 2) + 1


@dataclass(frozen=True)
class SuspendedPath:
    params: TrichotomyParams
    path: tuple[int, ...]
    variant = "suspended_path"

    def verify(self, g: Graph) -> None:
        p = self.path
        if len(p) < self.params.q:
            raise CertificateError(f"path has {len(p)} vertices, need {self.params.q}")
        if len(set(p)) != len(p):
            raise CertificateError("path repeats a vertex")
        for a, b in zip(p, p[1:]):
            if not g.has_edge(a, b):
                raise CertificateError(f"({a}, {b}) is not an edge")
        for v in p[1:-1]:
            if g.degree(v) != 2:
                raise CertificateError(f"internal vertex {v} has degree {g.degree(v)}")


@dataclass(frozen=True)
class EndEdgeMatching:
    params: TrichotomyParams
    edges: tuple[tuple[int, int], ...]
    variant = "end_edge_matching"

    def verify(self, g: Graph) -> None:
        if len(self.edges) < self.params.s:
            raise CertificateError(f"{len(self.edges)} end-edges, need {self.params.s}")
        seen: set[int] = set()
        for leaf, support in self.edges:
            if not g.has_edge(leaf, support):
                raise CertificateError(f"({leaf}, {support}) is not an edge")
            if g.degree(leaf) != 1:
                raise CertificateError(f"{leaf} is not an end-vertex")
            if leaf in seen or support in seen:
                raise CertificateError("end-edges are not disjoint")
            seen.update((leaf, support))


@dataclass(frozen=True)
class BoundedCoreStar:
    params: TrichotomyParams
    core_vertices: frozenset[int]
    star_center: int
    star_leaves: tuple[int, ...]
    flags: tuple[str, ...] = field(default=())
    variant = "bounded_core_star"

    def verify(self, g: Graph) -> None:
        core = frozenset(v for v in g.vertices() if g.degree(v) >= 2)
        if core != self.core_vertices:
            raise CertificateError("core is not the set of degree >= 2 vertices")
        if len(core) > self.params.effective_gamma:
            raise CertificateError(f"core has {len(core)} vertices, bound {self.params.gamma}")
        for leaf in self.star_leaves:
            if g.degree(leaf) != 1 or not g.has_edge(leaf, self.star_center):
                raise CertificateError(f"{leaf} is not a pendant neighbour of {self.star_center}")
        if len(set(self.star_leaves)) != len(self.star_leaves):
            raise CertificateError("repeated star leaf")
        need = self.params.star_bound(g.vertex_count)
        if len(self.star_leaves) < need:
            raise CertificateError(f"star has {len(self.star_leaves)} leaves, need {need}")


Certificate = SuspendedPath | EndEdgeMatching | BoundedCoreStar


def trichotomy(g: Graph, q: int, s: int) -> Certificate:
    """Certificate for the first applicable structure: path, then matching, then star."""
    if q < 3:
        raise ValueError(f"q must be at least 3, got {q}")
    if s < 2:
        raise ValueError(f"s must be at least 2, got {s}")
    if not g.is_connected():
        raise ValueError("trichotomy needs a connected graph")
    if g.vertex_count < q:
        raise ValueError(f"trichotomy needs at least q = {q} vertices, graph has {g.vertex_count}")
    params = TrichotomyParams.for_graph(g, q, s)
    path = find_suspended_path(g, q)
    if path is not None:
        return SuspendedPath(params, tuple(path))
    edges = find_end_edge_matching(g, s)
    if edges is not None:
        return EndEdgeMatching(params, tuple(edges))
    core = frozenset(v for v in g.vertices() if g.degree(v) >= 2)
    pendant: dict[int, list[int]] = {}
    for v in g.vertices():
        if g.degree(v) == 1:
            (w,) = g.neighbors(v)
            pendant.setdefault(w, []).append(v)
    if pendant:
        center = max(sorted(pendant), key=lambda w: len(pendant[w]))
        leaves = tuple(sorted(pendant[center]))
    else:
        center, leaves = min(g.vertices()), ()
    flags = []
    if params.star_bound(g.vertex_count) <= 0:
        flags.append("star_bound_nonpositive")
    if params.gamma != params.effective_gamma:
        flags.append("core_bound_clamped")
    cert = BoundedCoreStar(params, core, center, leaves, tuple(flags))
    cert.verify(g)
    return cert


def count_low_degree(g: Graph) -> int:
    """Number of vertices of degree at most 2."""
    return sum(1 for d in g.degrees if d <= 2)


# -- reduction -------------------------------------------------------------


class StepKind(str, Enum):
    DEGREE1 = "degree1"
    DEGREE2_NONCUT = "degree2_noncut"
    DEGREE2_CUT = "degree2_cut"


@dataclass(frozen=True)
class ReductionStep:
    kind: StepKind
    removed_vertex: int
    neighbors: tuple[int, ...]
    added_edge: tuple[int, int] | None = None


class ReductionStalled(RuntimeError):
    def __init__(self, message: str, trace: list[ReductionStep]):
        super().__init__(message)
        self.trace = trace


def select_reduction(adj: dict[int, set[int]]) -> ReductionStep | None:
    """Next reduction under the fixed priority, or ``None`` if no vertex has degree <= 2."""
    if len(adj) < 2:
        return None
    low1 = [v for v, nb in adj.items() if len(nb) == 1]
    if low1:
        v = min(low1)
        return ReductionStep(StepKind.DEGREE1, v, tuple(adj[v]))
    low2 = sorted(v for v, nb in adj.items() if len(nb) == 2)
    if not low2:
        return None
    cuts = articulation_points(adj)
    for v in low2:
        if v not in cuts:
            return ReductionStep(StepKind.DEGREE2_NONCUT, v, tuple(sorted(adj[v])))
    v = low2[0]
    a, b = sorted(adj[v])
    return ReductionStep(StepKind.DEGREE2_CUT, v, (a, b), (a, b))


def apply_reduction(adj: dict[int, set[int]], step: ReductionStep) -> None:
    """Apply ``step`` to ``adj`` in place."""
    v = step.removed_vertex
    for w in adj.pop(v):
        adj[w].discard(v)
    if step.added_edge is not None:
        a, b = step.added_edge
        adj[a].add(b)
        adj[b].add(a)


def undo_reduction(adj: dict[int, set[int]], step: ReductionStep) -> None:
    """Inverse of :func:`apply_reduction`, in place."""
    if step.added_edge is not None:
        a, b = step.added_edge
        adj[a].discard(b)
        adj[b].discard(a)
    v = step.removed_vertex
    adj[v] = set(step.neighbors)
    for w in step.neighbors:
        adj[w].add(v)


def reduce_dict(adj: dict[int, set[int]], k: int) -> list[ReductionStep]:
    """Perform ``k`` reductions on ``adj`` in place and return the trace."""
    trace: list[ReductionStep] = []
    for _ in range(k):
        step = select_reduction(adj)
        if step is None:
            raise ReductionStalled(f"no vertex of degree <= 2 after {len(trace)} reductions", trace)
        apply_reduction(adj, step)
        trace.append(step)
    return trace


def reduce_once(g: Graph) -> tuple[Relabeled, ReductionStep]:
    if g.vertex_count < 2 or not g.is_connected():
        raise ValueError("reduction needs a connected graph on at least 2 vertices")
    adj = adjacency_dict(g)
    step = select_reduction(adj)
    if step is None:
        raise ReductionStalled("no vertex of degree <= 2", [])
    apply_reduction(adj, step)
    return graph_from_dict(adj), step


def reduce_k(g: Graph, k: int) -> tuple[Relabeled, list[ReductionStep]]:
    """``k`` successive reductions; the trace uses ``g``'s vertex labels."""
    if k < 1:
        raise ValueError("k must be positive")
    if g.vertex_count < 2 or not g.is_connected():
        raise ValueError("reduction needs a connected graph on at least 2 vertices")
    adj = adjacency_dict(g)
    trace = reduce_dict(adj, k)
    return graph_from_dict(adj), trace


def replay_forward(g: Graph, trace: list[ReductionStep]) -> Relabeled:
    adj = adjacency_dict(g)
    for step in trace:
        apply_reduction(adj, step)
    return graph_from_dict(adj)


def replay_backward(reduced: Relabeled, trace: list[ReductionStep]) -> Graph:
    """Rebuild the original graph from a reduced graph and its trace."""
    adj = adjacency_dict(reduced.graph, reduced.labels)
    for step in reversed(trace):
        undo_reduction(adj, step)
    rebuilt = graph_from_dict(adj)
    if rebuilt.labels != tuple(range(len(rebuilt.labels))):
        raise ValueError("trace does not rebuild a graph on 0..n-1")
    return rebuilt.graph


def check_reduction_bounds(g: Graph, reduced: Graph, k: int) -> bool:
    """|G_k| = |G| - k, e(G_k) <= e(G) - k and G_k connected."""
    adj = adjacency_dict(reduced)
    return (
        reduced.vertex_count == g.vertex_count - k
        and reduced.edge_count <= g.edge_count - k
        and is_connected_adj(adj)
    )

