"""Sparse connected graphs versus blue stars.

Structural parameters, constructive red embeddings with blue-star
certificates, extremal colourings, threshold calculators and brute-force
oracles for ``r(G, K_{1,k})`` and ``r(G, tK_{1,k})``.
"""

from .coloring import StarPack, TwoColoring, find_blue_star, pack_blue_stars, red_matching_or_blue_biclique
from .embedder import (
    EmbeddingError,
    EmbedResult,
    Embedding,
    PreconditionError,
    embed_minus_vertex,
    embed_sparse,
    embed_spanning,
    embed_tree,
    embed_vs_multistar,
)
from .extremal import (
    BoundReport,
    bound_report,
    build_clique_construction,
    build_multistar_construction,
    build_star_lower_construction,
    thresholds,
    validate_construction,
)
from .graph import Graph
from .invariants import (
    AlphaPrimeReport,
    alpha_prime,
    find_end_edge_matching,
    find_suspended_path,
    independence_number,
    local_deleted_graph,
    sparsity_check,
)
from .oracle import alpha_bruteforce, chvatal_value, exact_ramsey_multistar, exact_ramsey_star, subgraph_contains
from .structure import reduce_k, trichotomy

__version__ = "0.1.0"

__all__ = [
    "AlphaPrimeReport",
    "BoundReport",
    "EmbedResult",
    "Embedding",
    "EmbeddingError",
    "Graph",
    "PreconditionError",
    "StarPack",
    "TwoColoring",
    "alpha_bruteforce",
    "alpha_prime",
    "bound_report",
    "build_clique_construction",
    "build_multistar_construction",
    "build_star_lower_construction",
    "chvatal_value",
    "embed_minus_vertex",
    "embed_sparse",
    "embed_spanning",
    "embed_tree",
    "embed_vs_multistar",
    "exact_ramsey_multistar",
    "exact_ramsey_star",
    "find_blue_star",
    "find_end_edge_matching",
    "find_suspended_path",
    "independence_number",
    "local_deleted_graph",
    "pack_blue_stars",
    "red_matching_or_blue_biclique",
    "reduce_k",
    "sparsity_check",
    "subgraph_contains",
    "thresholds",
    "trichotomy",
    "validate_construction",
]
