"""graph6 and edge-list reading and writing."""

from __future__ import annotations

from .graph import Graph

GRAPH6_HEADER = b">>graph6<<"


class FormatError(ValueError):
    pass


# -- graph6 -------------------------------------------------------------------------


def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 68719476736:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise FormatError(f"graph6 cannot encode {n} vertices")


def _decode_n(data: bytes) -> tuple[int, int]:
    if not data:
        raise FormatError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise FormatError("truncated graph6 size field")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    if len(data) < 4:
        raise FormatError("truncated graph6 size field")
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


def to_graph6(g: Graph) -> bytes:
    """Standard graph6 encoding (no header, no newline)."""
    n = g.vertex_count
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    bits.extend([0] * (-len(bits) % 6))
    body = bytes(
        63 + int("".join(map(str, bits[i : i + 6])), 2) for i in range(0, len(bits), 6)
    )
    return _encode_n(n) + body


def from_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER) :]
    if any(b < 63 or b > 126 for b in data):
        raise FormatError("graph6 bytes must lie in 63..126")
    n, offset = _decode_n(data)
    body = data[offset:]
    nbits = n * (n - 1) // 2
    if len(body) != -(-nbits // 6):
        raise FormatError(f"graph6 body has {len(body)} bytes, expected {-(-nbits // 6)} for n = {n}")
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[idx // 6] - 63
            if (byte >> (5 - idx % 6)) & 1:
                edges.append((i, j))
            idx += 1
    if nbits % 6:
        pad = (body[-1] - 63) & ((1 << (6 - nbits % 6)) - 1)
        if pad:
            raise FormatError("nonzero graph6 padding bits")
    return Graph(n, edges)


# -- edge lists ----------------------------------------------------------------------


def from_edgelist(text: bytes | str) -> Graph:
    """One ``u v`` pair per line, 0-indexed; ``#`` starts a comment.

    A comment ``# vertices: N`` fixes the vertex count; otherwise it is one
    more than the largest index seen.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    declared = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line, _, comment = raw.partition("#")
        comment = comment.strip()
        if comment.startswith("vertices:"):
            try:
                declared = int(comment.split(":", 1)[1])
            except ValueError as exc:
                raise FormatError(f"line {lineno}: bad vertex count") from exc
            if declared < 0:
                raise FormatError(f"line {lineno}: negative vertex count")
        line = line.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise FormatError(f"line {lineno}: vertices must be integers") from exc
        if u < 0 or v < 0:
            raise FormatError(f"line {lineno}: negative vertex index")
        if u == v:
            raise FormatError(f"line {lineno}: self-loop at {u}")
        key = frozenset((u, v))
        if key in seen:
            raise FormatError(f"line {lineno}: duplicate edge ({u}, {v})")
        seen.add(key)
        edges.append((u, v))
    top = max((max(e) for e in edges), default=-1) + 1
    n = top if declared is None else declared
    if top > n:
        raise FormatError(f"vertex {top - 1} out of range for {n} declared vertices")
    return Graph(n, edges)


def to_edgelist(g: Graph) -> bytes:
    lines = [f"# vertices: {g.vertex_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return ("\n".join(lines) + "\n").encode("utf-8")


FORMATS = ("graph6", "edgelist")


def parse_graph(data: bytes | str, fmt: str) -> Graph:
    if fmt == "graph6":
        return from_graph6(data)
    if fmt == "edgelist":
        return from_edgelist(data)
    raise FormatError(f"unknown graph format {fmt!r}")


def serialize_graph(g: Graph, fmt: str) -> bytes:
    if fmt == "graph6":
        return to_graph6(g)
    if fmt == "edgelist":
        return to_edgelist(g)
    raise FormatError(f"unknown graph format {fmt!r}")


def sniff_format(data: bytes) -> str:
    """``edgelist`` if the text contains whitespace-separated pairs or comments, else ``graph6``."""
    stripped = data.strip()
    if stripped.startswith(GRAPH6_HEADER):
        return "graph6"
    if b" " in stripped or b"\t" in stripped or b"#" in stripped or b"\n" in stripped or not stripped:
        return "edgelist"
    return "graph6"
