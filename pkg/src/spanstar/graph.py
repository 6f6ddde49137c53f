"""Immutable simple undirected graphs on the vertex set ``0..n-1``.

Besides the :class:`Graph` value type this module holds the traversal
helpers everything else builds on (connectivity, cut vertices, bridges)
and a handful of named constructors used throughout the tests.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence


class GraphError(ValueError):
    """Raised for malformed graph input (loops, parallel edges, bad indices)."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Graph:
    """A simple undirected graph with vertices ``0..vertex_count-1``.

    Instances are immutable; every derived graph is a new value. Edges are
    validated on construction: self-loops, parallel edges and out-of-range
    endpoints raise :class:`GraphError`.
    """

    __slots__ = ("_adj", "_m", "__dict__")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]] = ()):
        if vertex_count < 0:
            raise GraphError(f"negative vertex count {vertex_count}")
        adj: list[set[int]] = [set() for _ in range(vertex_count)]
        m = 0
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphError(f"edge ({u}, {v}) out of range for {vertex_count} vertices")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if v in adj[u]:
                raise GraphError(f"duplicate edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
            m += 1
        self._adj = tuple(frozenset(s) for s in adj)
        self._m = m

    @classmethod
    def from_adjacency(cls, adjacency: Sequence[Iterable[int]]) -> "Graph":
        """Build from per-vertex neighbour collections; symmetry is enforced."""
        n = len(adjacency)
        sets = [frozenset(a) for a in adjacency]
        edges = []
        for u, nbrs in enumerate(sets):
            for v in nbrs:
                if not 0 <= v < n:
                    raise GraphError(f"neighbour {v} of {u} out of range")
                if u not in sets[v]:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")
                if u < v:
                    edges.append((u, v))
                elif u == v:
                    raise GraphError(f"self-loop at vertex {u}")
        return cls(n, edges)

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "Graph":
        return cls.from_adjacency([list(iter_bits(m)) for m in masks])

    # -- basic queries -------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return self._m

    @property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def vertices(self) -> range:
        return range(len(self._adj))

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(u, v)`` with ``u < v``, sorted."""
        return list(self.edge_tuple)

    @cached_property
    def edge_tuple(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(len(self._adj)) for v in sorted(self._adj[u]) if u < v)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self._adj)

    @property
    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Adjacency as integer bitmasks (bit ``v`` of ``masks[u]`` set iff uv is an edge)."""
        return tuple(to_mask(a) for a in self._adj)

    # -- derived graphs --------------------------------------------------

    def induced_subgraph(self, vertices: Iterable[int]) -> "Relabeled":
        """Subgraph induced on ``vertices``; labels map new index -> old index."""
        labels = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(labels)}
        edges = [
            (index[u], index[v])
            for u in labels
            for v in self._adj[u]
            if v in index and u < v
        ]
        return Relabeled(Graph(len(labels), edges), labels)

    def remove_vertices(self, vertices: Iterable[int]) -> "Relabeled":
        drop = set(vertices)
        return self.induced_subgraph(v for v in self.vertices() if v not in drop)

    def with_edges(self, added: Iterable[tuple[int, int]] = (), removed: Iterable[tuple[int, int]] = ()) -> "Graph":
        gone = {frozenset(e) for e in removed}
        for e in gone:
            u, v = tuple(e)
            if not self.has_edge(u, v):
                raise GraphError(f"cannot remove missing edge ({u}, {v})")
        keep = [e for e in self.edges() if frozenset(e) not in gone]
        return Graph(self.vertex_count, keep + list(added))

    def complement(self) -> "Graph":
        n = self.vertex_count
        return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if v not in self._adj[u]])

    # -- structure -------------------------------------------------------

    def components(self) -> list[list[int]]:
        seen = [False] * self.vertex_count
        out = []
        for s in self.vertices():
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            stack = [s]
            while stack:
                u = stack.pop()
                for w in self._adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.vertex_count <= 1 or len(self.components()) == 1

    def is_tree(self) -> bool:
        return self.vertex_count >= 1 and self._m == self.vertex_count - 1 and self.is_connected()

    def is_forest(self) -> bool:
        return self._m == self.vertex_count - len(self.components())

    def is_unicyclic(self) -> bool:
        return self.vertex_count >= 3 and self._m == self.vertex_count and self.is_connected()

    # -- value semantics -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self._adj)

    def __repr__(self) -> str:
        return f"Graph({self.vertex_count}, {self.edges()!r})"


class Relabeled(NamedTuple):
    """A derived graph together with its new-index -> original-index table."""

    graph: Graph
    labels: tuple[int, ...]


# -- traversal helpers on plain adjacency dicts --------------------------
#
# The reduction and embedding code works on mutable ``dict[label, set]``
# adjacency keyed by original labels; these helpers accept that form.


def articulation_points(adj: dict[int, set[int]] | Sequence[Iterable[int]]) -> set[int]:
    """Cut vertices via iterative DFS low-link (Hopcroft-Tarjan)."""
    nodes = adj.keys() if isinstance(adj, dict) else range(len(adj))
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    cuts: set[int] = set()
    counter = 0
    for root in sorted(nodes):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        root_children = 0
        stack = [(root, -1, iter(sorted(adj[root])))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, u, iter(sorted(adj[w]))))
                    advanced = True
                    break
                if w != parent:
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[u])
                if p == root:
                    root_children += 1
                elif low[u] >= disc[p]:
                    cuts.add(p)
        if root_children >= 2:
            cuts.add(root)
    return cuts


def bridges(adj: dict[int, set[int]] | Sequence[Iterable[int]]) -> set[frozenset[int]]:
    """Bridge edges as frozensets ``{u, v}``."""
    nodes = adj.keys() if isinstance(adj, dict) else range(len(adj))
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    out: set[frozenset[int]] = set()
    counter = 0
    for root in sorted(nodes):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, -1, iter(sorted(adj[root])))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, u, iter(sorted(adj[w]))))
                    advanced = True
                    break
                if w != parent:
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[u])
                if low[u] > disc[p]:
                    out.add(frozenset((p, u)))
    return out


def is_connected_adj(adj: dict[int, set[int]]) -> bool:
    if len(adj) <= 1:
        return True
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


def adjacency_dict(g: Graph, labels: Sequence[int] | None = None) -> dict[int, set[int]]:
    """Mutable copy of ``g``'s adjacency, optionally relabelled through ``labels``."""
    if labels is None:
        return {v: set(g.neighbors(v)) for v in g.vertices()}
    return {labels[v]: {labels[w] for w in g.neighbors(v)} for v in g.vertices()}


def graph_from_dict(adj: dict[int, set[int]]) -> Relabeled:
    """Freeze a label-keyed adjacency dict into a :class:`Graph` plus label table."""
    labels = tuple(sorted(adj))
    index = {v: i for i, v in enumerate(labels)}
    edges = [(index[u], index[w]) for u in labels for w in adj[u] if u < w]
    return Relabeled(Graph(len(labels), edges), labels)


# -- named constructors -------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def spider(legs: int, length: int) -> Graph:
    """``legs`` paths of ``length`` edges glued at centre 0."""
    edges = []
    nxt = 1
    for _ in range(legs):
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(nxt, edges)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.vertex_count
    return Graph(offset, edges)
