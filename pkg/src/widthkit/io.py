"""Text formats: graph6, plain edge lists, and hypergraph files."""

from __future__ import annotations

from pathlib import Path

from .errors import InvalidArgument
from .graph import Graph

GRAPH6_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 68719476736:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise InvalidArgument("graph too large for graph6")


def to_graph6(g: Graph, header: bool = False) -> str:
    out = [GRAPH6_HEADER] if header else []
    out.append(_encode_n(g.n))
    acc = 0
    nbits = 0
    chunks = []
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | ((row >> i) & 1)
            nbits += 1
            if nbits == 6:
                chunks.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        chunks.append(chr((acc << (6 - nbits)) + 63))
    out.extend(chunks)
    return "".join(out)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise InvalidArgument("empty graph6 string")
    vals = [ord(c) - 63 for c in s]
    if any(not 0 <= v < 64 for v in vals):
        raise InvalidArgument("graph6 contains a character outside '?'..'~'")
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) > 1 and vals[1] == 63:
        if len(vals) < 8:
            raise InvalidArgument("truncated graph6 size field")
        n, pos = 0, 8
        for v in vals[2:8]:
            n = (n << 6) | v
    else:
        if len(vals) < 4:
            raise InvalidArgument("truncated graph6 size field")
        n, pos = 0, 4
        for v in vals[1:4]:
            n = (n << 6) | v
    need = (n * (n - 1) // 2 + 5) // 6
    body = vals[pos:]
    if len(body) != need:
        raise InvalidArgument(f"graph6 body has {len(body)} characters, expected {need} for n={n}")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph._trusted(adj)


def read_graph6_file(path) -> list[Graph]:
    return [from_graph6(line) for line in Path(path).read_text().splitlines() if line.strip()]


def to_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def from_edgelist(text: str) -> Graph:
    """``n m`` header then ``m`` lines ``u v`` (0-indexed); blank lines ignored."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise InvalidArgument("edge list must start with an 'n m' header")
    try:
        n, m = int(lines[0][0]), int(lines[0][1])
        edges = []
        for parts in lines[1:]:
            if len(parts) != 2:
                raise InvalidArgument(f"bad edge line {' '.join(parts)!r}")
            edges.append((int(parts[0]), int(parts[1])))
    except ValueError as exc:
        raise InvalidArgument(f"non-integer in edge list: {exc}") from exc
    if len(edges) != m:
        raise InvalidArgument(f"header announces {m} edges, found {len(edges)}")
    g = Graph(n, edges)
    if g.m != m:
        raise InvalidArgument("edge list contains repeated edges")
    return g


def read_graph(path, fmt: str | None = None) -> Graph:
    """Read a single graph; ``fmt`` is ``g6`` or ``edgelist`` (guessed from the suffix)."""
    path = Path(path)
    text = path.read_text()
    if fmt is None:
        fmt = "g6" if path.suffix in (".g6", ".graph6") else "edgelist"
    if fmt == "g6":
        graphs = [ln for ln in text.splitlines() if ln.strip()]
        if len(graphs) != 1:
            raise InvalidArgument(f"expected one graph6 line, found {len(graphs)}")
        return from_graph6(graphs[0])
    if fmt == "edgelist":
        return from_edgelist(text)
    raise InvalidArgument(f"unknown graph format {fmt!r}")
