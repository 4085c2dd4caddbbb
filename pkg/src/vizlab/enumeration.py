"""Isomorphism-deduplicated enumeration of small graphs and cographs."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .cograph import find_induced_p4
from .graph import CANONICAL_CAP, Graph, canonical_code, canonical_form, complement, is_connected

ENUM_CAP = 7


def _check_cap(n: int, cap: int) -> None:
    if not 1 <= n <= cap:
        raise ValueError(f"enumeration supports 1 <= n <= {cap}, got {n}")


@lru_cache(maxsize=None)
def _all_graphs(n: int) -> tuple[Graph, ...]:
    # every graph on n vertices is a graph on n-1 vertices plus one vertex
    if n == 1:
        return (Graph.empty(1),)
    seen: dict[bytes, Graph] = {}
    for base in _all_graphs(n - 1):
        for nbrs in range(1 << (n - 1)):
            rows = [row | ((nbrs >> v & 1) << (n - 1)) for v, row in enumerate(base.rows)]
            G = Graph(n, tuple(rows) + (nbrs,))
            code = canonical_code(G)
            if code not in seen:
                seen[code] = canonical_form(G)
    return tuple(seen[c] for c in sorted(seen))


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """One canonical representative per isomorphism class on ``n`` vertices."""
    _check_cap(n, ENUM_CAP)
    yield from _all_graphs(n)


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    _check_cap(n, ENUM_CAP)
    for G in _all_graphs(n):
        if is_connected(G):
            yield G


def enumerate_connected_cographs(n: int) -> Iterator[Graph]:
    _check_cap(n, ENUM_CAP)
    for G in enumerate_connected_graphs(n):
        if find_induced_p4(G) is None:
            yield G


def _disjoint_union(parts: list[Graph]) -> Graph:
    rows: list[int] = []
    offset = 0
    for P in parts:
        rows.extend(r << offset for r in P.rows)
        offset += P.n
    return Graph(offset, tuple(rows))


@lru_cache(maxsize=None)
def _connected_cographs(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph.empty(1),)
    return tuple(canonical_form(complement(G)) for G in _disconnected_cographs(n))


@lru_cache(maxsize=None)
def _disconnected_cographs(n: int) -> tuple[Graph, ...]:
    # multisets of >= 2 connected cographs, listed as non-increasing (size, index)
    out = []

    def rec(remaining: int, cap: tuple[int, int], parts: list[Graph]) -> None:
        if remaining == 0:
            if len(parts) >= 2:
                out.append(canonical_form(_disjoint_union(parts)))
            return
        for size in range(min(remaining, cap[0]), 0, -1):
            if size == n:
                continue
            pool = _connected_cographs(size)
            top = cap[1] if size == cap[0] else len(pool) - 1
            for idx in range(top, -1, -1):
                rec(remaining - size, (size, idx), parts + [pool[idx]])

    rec(n, (n, 0), [])
    return tuple(out)


def cographs_by_cotree(n: int, connected: bool = False) -> list[Graph]:
    """All cographs on ``n`` vertices built from cotree shapes, no deduplication pass.

    Distinct multisets of connected components give non-isomorphic graphs,
    and complementation is a bijection, so every class appears exactly once.
    """
    _check_cap(n, CANONICAL_CAP)
    conn = list(_connected_cographs(n))
    if connected:
        return conn
    return conn + list(_disconnected_cographs(n)) if n > 1 else conn
