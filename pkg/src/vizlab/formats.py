"""graph6 and edge-list text formats.

Edge-list text is ``n`` on the first line followed by one ``u v`` pair per
line, 0-based. Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import sys
from pathlib import Path

from .graph import Graph


class GraphParseError(ValueError):
    """Malformed graph text. ``where`` names the line or byte offset."""

    def __init__(self, message: str, where: str) -> None:
        super().__init__(f"{where}: {message}")
        self.where = where


# graph6

def _g6_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr((n >> s & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr((n >> s & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(G: Graph) -> str:
    bits = [int(G.adjacent(i, j)) for j in range(1, G.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _g6_size(G.n) + body


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphParseError("empty graph6 string", "byte 0")
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphParseError(f"invalid graph6 character {ch!r}", f"byte {pos}")
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] != 63:
        n, off = vals[0], 1
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise GraphParseError("truncated 8-byte size header", f"byte {len(vals)}")
        n, off = 0, 8
        for v in vals[2:8]:
            n = n << 6 | v
    else:
        if len(vals) < 4:
            raise GraphParseError("truncated 4-byte size header", f"byte {len(vals)}")
        n, off = 0, 4
        for v in vals[1:4]:
            n = n << 6 | v
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(vals) - off != need:
        raise GraphParseError(
            f"expected {need} data bytes for n={n}, found {len(vals) - off}", f"byte {off}"
        )
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if vals[off + k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if need and vals[-1] & ((1 << (need * 6 - nbits)) - 1):
        raise GraphParseError("nonzero padding bits", f"byte {len(vals) - 1}")
    return Graph(n, tuple(rows))


# edge list

def to_edge_list(G: Graph) -> str:
    lines = [str(G.n)] + [f"{u} {v}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    n = None
    edges: set[tuple[int, int]] = set()
    ordered: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        where = f"line {lineno}"
        if n is None:
            if len(parts) != 1 or not parts[0].isdigit():
                raise GraphParseError(f"malformed header {line!r}, expected vertex count", where)
            n = int(parts[0])
            continue
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise GraphParseError(f"malformed edge line {line!r}", where)
        u, v = int(parts[0]), int(parts[1])
        if u >= n or v >= n:
            raise GraphParseError(f"vertex id {max(u, v)} >= n={n}", where)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", where)
        key = (min(u, v), max(u, v))
        if key in edges:
            raise GraphParseError(f"duplicate edge {u} {v}", where)
        edges.add(key)
        ordered.append(key)
    if n is None:
        raise GraphParseError("missing header", "line 1")
    return Graph.from_edges(n, ordered)


def parse_graph(text: str, format: str = "auto") -> Graph:
    """Parse ``text`` as ``graph6``, ``edge-list`` or ``auto`` (sniffed).

    graph6 never starts with a digit and edge lists always do.
    """
    if format == "auto":
        body = text.lstrip()
        format = "edge-list" if body[:1].isdigit() or body[:1] == "#" else "graph6"
    if format == "graph6":
        return from_graph6(text)
    if format == "edge-list":
        return from_edge_list(text)
    raise ValueError(f"unknown graph format {format!r}")


def serialize_graph(G: Graph, format: str) -> str:
    if format == "graph6":
        return to_graph6(G)
    if format == "edge-list":
        return to_edge_list(G)
    raise ValueError(f"unknown graph format {format!r}")


def read_graph(arg: str) -> Graph:
    """Read a CLI graph argument: ``@path``, ``-`` for stdin, or inline graph6."""
    if arg == "-":
        return parse_graph(sys.stdin.read())
    if arg.startswith("@"):
        return parse_graph(Path(arg[1:]).read_text())
    return parse_graph(arg, "graph6")
