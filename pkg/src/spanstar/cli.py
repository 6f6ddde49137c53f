"""Command-line front end producing JSON reports.

Every command writes one JSON document. It holds a ``schema`` tag, an echo
of the configuration, fingerprints of the inputs, the computed ``result``
and a ``timing`` block. Apart from ``timing``, equal configurations give
byte-identical output.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import corpus as corpus_mod
from .coloring import StarPack, TwoColoring
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
    bound_report,
    build_clique_construction,
    build_multistar_construction,
    build_star_lower_construction,
    thresholds,
    validate_construction,
)
from .graph import Graph
from .invariants import alpha_prime, caro_wei_check, independence_number, sparsity_check, spanning_denominator
from .io import FormatError, parse_graph, serialize_graph, sniff_format, to_graph6
from .oracle import OracleError, exact_ramsey_multistar, exact_ramsey_star, is_ramsey_witness
from .structure import trichotomy

SCHEMA = "spanstar-report/1"
COMMANDS = ("analyze", "embed", "bounds", "construct", "ramsey", "verify", "corpus")

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_PRECONDITION = 2
EXIT_IO = 3


@dataclasses.dataclass(frozen=True)
class RunConfig:
    command: str
    graph: str | None = None
    host: str | None = None
    blue_host: str | None = None
    report: str | None = None
    k: int = 2
    t: int = 1
    q: int | None = None
    s: int | None = None
    c: str = "2"
    n: int | None = None
    alpha_prime: int | None = None
    u: int = 0
    method: str = "auto"
    kind: str | None = None
    count: int = 1
    min_alpha_prime: int = 0
    n_cap: int | None = None
    seed: int = 0
    exhaustive_limit: int = 10
    format: str = "report-json"
    out: str | None = None
    timing: bool = True


# -- helpers --------------------------------------------------------------------------


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return {"exact": f"{value.numerator}/{value.denominator}", "decimal": f"{float(value):.6f}"}
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: _jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, frozenset, set)):
        items = [_jsonable(v) for v in value]
        return sorted(items) if isinstance(value, (set, frozenset)) else items
    return value


def fingerprint(g: Graph) -> dict[str, Any]:
    g6 = to_graph6(g).decode("ascii")
    return {"n": g.vertex_count, "e": g.edge_count, "graph6": g6, "sha256": hashlib.sha256(g6.encode()).hexdigest()}


def host_fingerprint(col: TwoColoring) -> dict[str, Any]:
    fp = fingerprint(col.red)
    return {"order": col.order, "blue_edges": len(col.blue_edges()), "red": fp}


def _read_graph(path: str) -> Graph:
    data = Path(path).read_bytes()
    return parse_graph(data, sniff_format(data))


def _read_host(cfg: RunConfig) -> TwoColoring:
    if cfg.host and cfg.blue_host:
        raise PreconditionError("give either --host or --blue-host, not both")
    if cfg.host:
        return TwoColoring.from_red(_read_graph(cfg.host))
    if cfg.blue_host:
        blue = _read_graph(cfg.blue_host)
        return TwoColoring.from_blue_edges(blue.vertex_count, blue.edges())
    raise PreconditionError("a host colouring is required (--host or --blue-host)")


def _need(value: Any, flag: str) -> Any:
    if value is None:
        raise PreconditionError(f"{flag} is required for this command")
    return value


def _certificate_summary(cert) -> dict[str, Any]:
    out: dict[str, Any] = {"variant": cert.variant, "params": _jsonable(cert.params)}
    if cert.variant == "suspended_path":
        out["path"] = list(cert.path)
    elif cert.variant == "end_edge_matching":
        out["edges"] = [list(e) for e in cert.edges]
    else:
        out.update(
            core_vertices=sorted(cert.core_vertices),
            star_center=cert.star_center,
            star_leaves=list(cert.star_leaves),
            flags=list(cert.flags),
        )
    return out


def _embed_summary(res: EmbedResult) -> dict[str, Any]:
    out: dict[str, Any] = {"variant": res.variant, "k": res.k, "t": res.t, "notes": list(res.notes)}
    if res.embedding is not None:
        out["mapping"] = list(res.embedding.mapping)
    else:
        out["stars"] = [[c, list(leaves)] for c, leaves in res.pack.stars]
    return out


# -- commands --------------------------------------------------------------------------------


def _analyze(cfg: RunConfig, inputs: dict) -> dict[str, Any]:
    g = _read_graph(_need(cfg.graph, "--graph"))
    inputs["graph"] = fingerprint(g)
    k, t = cfg.k, cfg.t
    ap = alpha_prime(g)
    out: dict[str, Any] = {
        "n": g.vertex_count,
        "e": g.edge_count,
        "min_degree": g.min_degree,
        "max_degree": g.max_degree,
        "connected": g.is_connected(),
        "independence_number": independence_number(g),
        "alpha_prime": ap.alpha_prime,
        "alpha_prime_witness": ap.witness_vertex,
        "per_vertex_alpha": list(ap.per_vertex_alpha),
        "sparsity": _jsonable(sparsity_check(g, k, t)),
        "caro_wei_sufficient": caro_wei_check(g, k),
        "bounds": _jsonable(bound_report(g.vertex_count, k, t, ap.alpha_prime)),
    }
    q = cfg.q if cfg.q is not None else max(4 * k - 2, 3)
    s = cfg.s if cfg.s is not None else max(2 * k - 2, 2)
    if g.is_connected() and g.vertex_count >= q:
        out["trichotomy"] = _certificate_summary(trichotomy(g, q, s))
    else:
        out["trichotomy"] = None
    return out


def _embed(cfg: RunConfig, inputs: dict) -> dict[str, Any]:
    g = _read_graph(_need(cfg.graph, "--graph"))
    col = _read_host(cfg)
    inputs["graph"] = fingerprint(g)
    inputs["host"] = host_fingerprint(col)
    method = cfg.method
    if method == "auto":
        method = "spanning" if cfg.t == 1 else "multistar"
    if method == "tree":
        res = embed_tree(col, g, cfg.k)
    elif method == "sparse":
        res = embed_sparse(col, g, cfg.k)
    elif method == "minus-vertex":
        res = embed_minus_vertex(col, g, cfg.u, cfg.k)
    elif method == "spanning":
        res = embed_spanning(col, g, cfg.k)
    elif method == "multistar":
        res = embed_vs_multistar(col, g, cfg.k, cfg.t)
    else:
        raise PreconditionError(f"unknown embedding method {method!r}")
    res.verify(col)
    out = _embed_summary(res)
    out["method"] = method
    out["verified"] = True
    return out


def _bounds(cfg: RunConfig, inputs: dict) -> dict[str, Any]:
    n = _need(cfg.n, "--n")
    ap = _need(cfg.alpha_prime, "--alpha-prime")
    out: dict[str, Any] = {"bounds": _jsonable(bound_report(n, cfg.k, cfg.t, ap))}
    out["thresholds"] = _jsonable(thresholds(cfg.k, cfg.t, Fraction(cfg.c))) if cfg.k >= 2 else None
    return out


def _construct(cfg: RunConfig, inputs: dict) -> dict[str, Any]:
    kind = _need(cfg.kind, "--kind")
    n = _need(cfg.n, "--n")
    if kind == "star":
        c = build_star_lower_construction(n, cfg.k, _need(cfg.alpha_prime, "--alpha-prime"))
        t = 1
    elif kind == "clique":
        c = build_clique_construction(n)
        t = 1
    elif kind == "multistar":
        c = build_multistar_construction(n, cfg.t)
        t = cfg.t
    else:
        raise PreconditionError(f"unknown construction kind {kind!r}")
    g = None
    if cfg.graph:
        g = _read_graph(cfg.graph)
        inputs["graph"] = fingerprint(g)
    report = validate_construction(c, g, cfg.k, t, cfg.exhaustive_limit)
    return {
        "kind": c.kind,
        "order": c.coloring.order,
        "params": dict(c.params),
        "description": _jsonable(c.description),
        "red": fingerprint(c.coloring.red),
        "validation": _jsonable(report),
        "passed": report.passed,
    }


def _ramsey(cfg: RunConfig, inputs: dict) -> dict[str, Any]:
    g = _read_graph(_need(cfg.graph, "--graph"))
    inputs["graph"] = fingerprint(g)
    cap = cfg.n_cap if cfg.n_cap is not None else g.vertex_count + cfg.k + cfg.t + 2
    if cfg.t == 1:
        res = exact_ramsey_star(g, cfg.k, cap)
    else:
        res = exact_ramsey_multistar(g, cfg.k, cfg.t, cap)
    return {
        "value": res.value,
        "k": res.k,
        "t": res.t,
        "certificate": res.certificate,
        "witnesses": [{"order": n, "red": fingerprint(col.red)} for n, col in res.witness_colorings],
        "stats": _jsonable(res.stats),
    }


def _verify(cfg: RunConfig, inputs: dict) -> dict[str, Any]:
    path = _need(cfg.report, "--report")
    doc = json.loads(Path(path).read_text())
    if doc.get("schema") != SCHEMA:
        raise PreconditionError(f"unsupported report schema {doc.get('schema')!r}")
    cmd = doc["command"]
    result = doc["result"]
    checks: list[dict[str, Any]] = []
    if cmd == "embed":
        g = parse_graph(doc["inputs"]["graph"]["graph6"], "graph6")
        col = TwoColoring.from_red(parse_graph(doc["inputs"]["host"]["red"]["graph6"], "graph6"))
        try:
            if result["variant"] == "red":
                Embedding(g, col, tuple(result["mapping"])).verify()
            else:
                pack = StarPack(tuple((c, tuple(lv)) for c, lv in result["stars"]))
                pack.verify(col, result["k"], result["t"])
            checks.append({"name": "embed_result", "ok": True})
        except ValueError as exc:
            checks.append({"name": "embed_result", "ok": False, "detail": str(exc)})
    elif cmd == "ramsey":
        g = parse_graph(doc["inputs"]["graph"]["graph6"], "graph6")
        for w in result["witnesses"]:
            col = TwoColoring.from_red(parse_graph(w["red"]["graph6"], "graph6"))
            checks.append({"name": f"witness_{w['order']}", "ok": is_ramsey_witness(col, g, result["k"], result["t"])})
    elif cmd == "construct":
        checks.append({"name": "validation", "ok": bool(result["passed"])})
    else:
        raise PreconditionError(f"reports of command {cmd!r} carry nothing to re-verify")
    inputs["report"] = {"sha256": hashlib.sha256(Path(path).read_bytes()).hexdigest()}
    return {"verified_command": cmd, "checks": checks, "verified": all(c["ok"] for c in checks)}


def _corpus(cfg: RunConfig, inputs: dict) -> dict[str, Any]:
    kind = _need(cfg.kind, "--kind")
    out_dir = Path(_need(cfg.out, "--out"))
    fmt = cfg.format if cfg.format in ("graph6", "edgelist") else "graph6"
    suffix = ".g6" if fmt == "graph6" else ".txt"
    n = _need(cfg.n, "--n")
    rng = random.Random(cfg.seed)
    out_dir.mkdir(parents=True, exist_ok=True)
    files = []
    for i in range(cfg.count):
        if kind == "patterns":
            g = corpus_mod.sparse_pattern(n, spanning_denominator(cfg.k), rng, min_alpha_prime=cfg.min_alpha_prime)
            name = f"pattern_{i:04d}{suffix}"
        elif kind == "hosts":
            col = corpus_mod.star_free_host(n, cfg.k, rng)
            g = Graph(n, col.blue_edges())
            name = f"host_{i:04d}.blue{suffix}"
        elif kind == "trees":
            g = corpus_mod.random_tree(n, rng)
            name = f"tree_{i:04d}{suffix}"
        else:
            raise PreconditionError(f"unknown corpus kind {kind!r}")
        data = serialize_graph(g, fmt)
        (out_dir / name).write_bytes(data + (b"\n" if fmt == "graph6" else b""))
        files.append({"file": name, "sha256": hashlib.sha256(data).hexdigest(), **fingerprint(g)})
    return {"kind": kind, "count": cfg.count, "files": files}


_DISPATCH = {
    "analyze": _analyze,
    "embed": _embed,
    "bounds": _bounds,
    "construct": _construct,
    "ramsey": _ramsey,
    "verify": _verify,
    "corpus": _corpus,
}


def run(cfg: RunConfig) -> bytes:
    """Execute ``cfg`` and return the JSON report."""
    if cfg.command not in _DISPATCH:
        raise PreconditionError(f"unknown command {cfg.command!r}")
    start = time.perf_counter()
    inputs: dict[str, Any] = {}
    result = _DISPATCH[cfg.command](cfg, inputs)
    doc: dict[str, Any] = {
        "schema": SCHEMA,
        "command": cfg.command,
        "config": {k: v for k, v in _jsonable(cfg).items() if k != "timing"},
        "inputs": inputs,
        "result": result,
    }
    if cfg.timing:
        doc["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode("utf-8")


def strip_timing(report: bytes) -> bytes:
    """The report with its ``timing`` block removed, for determinism comparisons."""
    doc = json.loads(report)
    doc.pop("timing", None)
    return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode("utf-8")


# -- argument parsing ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spanstar", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--graph", help="pattern graph file (graph6 or edge list)")
    p.add_argument("--host", help="host colouring given by its red graph")
    p.add_argument("--blue-host", help="host colouring given by its blue graph")
    p.add_argument("--report", help="report to re-verify (verify command)")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--q", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--c", default="2", help="rational constant for the thresholds, e.g. 1/2")
    p.add_argument("--n", type=int)
    p.add_argument("--alpha-prime", type=int)
    p.add_argument("--u", type=int, default=0, help="deleted vertex for --method minus-vertex")
    p.add_argument(
        "--method", default="auto", choices=("auto", "tree", "sparse", "minus-vertex", "spanning", "multistar")
    )
    p.add_argument("--kind", help="construct: star|clique|multistar; corpus: patterns|hosts|trees")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--min-alpha-prime", type=int, default=0)
    p.add_argument("--n-cap", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive-limit", type=int, default=10)
    p.add_argument("--format", default="report-json", choices=("graph6", "edgelist", "report-json"))
    p.add_argument("--out", help="output file (report) or directory (corpus)")
    p.add_argument("--no-timing", action="store_true", help="omit the timing block")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    if not 0 <= ns.seed < 2**64:
        raise PreconditionError("--seed must be a 64-bit unsigned integer")
    return RunConfig(
        command=ns.command,
        graph=ns.graph,
        host=ns.host,
        blue_host=ns.blue_host,
        report=ns.report,
        k=ns.k,
        t=ns.t,
        q=ns.q,
        s=ns.s,
        c=ns.c,
        n=ns.n,
        alpha_prime=ns.alpha_prime,
        u=ns.u,
        method=ns.method,
        kind=ns.kind,
        count=ns.count,
        min_alpha_prime=ns.min_alpha_prime,
        n_cap=ns.n_cap,
        seed=ns.seed,
        exhaustive_limit=ns.exhaustive_limit,
        format=ns.format,
        out=ns.out,
        timing=not ns.no_timing,
    )


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        report = run(cfg)
    except FormatError as exc:
        print(f"spanstar: malformed input: {exc}", file=sys.stderr)
        return EXIT_IO
    except (PreconditionError, corpus_mod.CorpusError, ValueError) as exc:
        print(f"spanstar: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (EmbeddingError, OracleError) as exc:
        print(f"spanstar: {exc}", file=sys.stderr)
        return EXIT_FAILED_CHECK
    except OSError as exc:
        print(f"spanstar: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    if cfg.out and cfg.command != "corpus":
        try:
            Path(cfg.out).write_bytes(report)
        except OSError as exc:
            print(f"spanstar: I/O error: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(report.decode("utf-8"))
    doc = json.loads(report)
    if cfg.command == "verify" and not doc["result"]["verified"]:
        return EXIT_FAILED_CHECK
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
