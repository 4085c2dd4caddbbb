"""Exact domination solvers and the cell decomposition around a dominating set."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .graph import Graph, VertexSet, iter_bits, mask_of

ENUMERATION_CAP = 20


class SolverTimeout(RuntimeError):
    pass


@dataclass(frozen=True)
class DomSolution:
    size: int
    witness: VertexSet
    kind: str = "plain"
    jk: tuple[int, int] | None = None

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind, "gamma": self.size, "witness": self.witness.to_list()}
        if self.jk is not None:
            out["j"], out["k"] = self.jk
        return out


def _closed_rows(G: Graph) -> list[int]:
    return [row | 1 << v for v, row in enumerate(G.rows)]


def is_dominating(G: Graph, S: VertexSet | int) -> bool:
    mask = S if isinstance(S, int) else S.mask
    covered = 0
    for v in iter_bits(mask):
        covered |= G.rows[v] | 1 << v
    return covered == G.full_mask


def first_undominated(G: Graph, mask: int) -> int | None:
    covered = 0
    for v in iter_bits(mask):
        covered |= G.rows[v] | 1 << v
    missing = G.full_mask & ~covered
    return (missing & -missing).bit_length() - 1 if missing else None


def _lower_bound(closed: list[int], uncovered: int) -> int:
    best = max((c & uncovered).bit_count() for c in closed)
    if best == 0:
        return 1 << 30
    return -(-uncovered.bit_count() // best)


def _greedy(closed: list[int], full: int) -> int:
    covered = size = 0
    while covered != full:
        v = max(range(len(closed)), key=lambda u: ((closed[u] & ~covered).bit_count(), -u))
        covered |= closed[v]
        size += 1
    return size


class _Clock:
    def __init__(self, timeout: float | None) -> None:
        self.deadline = None if timeout is None else time.monotonic() + timeout
        self.ticks = 0

    def tick(self) -> None:
        self.ticks += 1
        if self.deadline is not None and self.ticks & 1023 == 1 and time.monotonic() > self.deadline:
            raise SolverTimeout("exact solve exceeded its time budget")


def gamma_exact(G: Graph, timeout: float | None = None) -> DomSolution:
    """Minimum dominating set by branch and bound over closed-neighborhood covers.

    Branches on the uncovered vertex with the smallest closed neighborhood
    (ties to the lowest id), trying its members in ascending id. Bounds with
    ceil(uncovered / max coverage). The witness is the first optimum met in
    that order, so it is deterministic.
    """
    if G.n < 1:
        raise ValueError("domination number needs n >= 1")
    closed = _closed_rows(G)
    full = G.full_mask
    sizes = [c.bit_count() for c in closed]
    clock = _Clock(timeout)
    best_size = _greedy(closed, full) + 1
    best: list[int] = []
    chosen: list[int] = []

    def search(covered: int) -> None:
        nonlocal best_size, best
        clock.tick()
        if covered == full:
            if len(chosen) < best_size:
                best_size, best = len(chosen), list(chosen)
            return
        uncovered = full & ~covered
        if len(chosen) + _lower_bound(closed, uncovered) >= best_size:
            return
        u = min(iter_bits(uncovered), key=lambda v: (sizes[v], v))
        for w in iter_bits(closed[u]):
            chosen.append(w)
            search(covered | closed[w])
            chosen.pop()

    search(0)
    return DomSolution(best_size, VertexSet.of(best, G.n))


def enumerate_min_dominating_sets(
    G: Graph, max_n: int = ENUMERATION_CAP, timeout: float | None = None
) -> list[VertexSet]:
    """All minimum dominating sets in ascending lexicographic order.

    Each set is reached once: at every node the branch on candidate ``w``
    excludes the candidates tried before it.
    """
    if G.n > max_n:
        raise ValueError(f"enumeration guard: n={G.n} exceeds {max_n}")
    gamma = gamma_exact(G, timeout).size
    closed = _closed_rows(G)
    full = G.full_mask
    clock = _Clock(timeout)
    found: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def search(covered: int, excluded: int) -> None:
        clock.tick()
        if covered == full:
            if len(chosen) == gamma:
                found.append(tuple(sorted(chosen)))
            return
        uncovered = full & ~covered
        if len(chosen) + _lower_bound(closed, uncovered) > gamma:
            return
        u = min(iter_bits(uncovered), key=lambda v: ((closed[v] & ~excluded).bit_count(), v))
        tried = 0
        for w in iter_bits(closed[u] & ~excluded):
            chosen.append(w)
            search(covered | closed[w], excluded | tried)
            chosen.pop()
            tried |= 1 << w

    search(0, 0)
    found.sort()
    return [VertexSet.of(s, G.n) for s in found]


def is_jk_set(G: Graph, S: VertexSet | int, j: int, k: int) -> bool:
    mask = S if isinstance(S, int) else S.mask
    for v in range(G.n):
        if mask >> v & 1:
            continue
        c = (G.rows[v] & mask).bit_count()
        if not j <= c <= k:
            return False
    return True


def _jk_search(G: Graph, j: int, k: int, size: int, find_all: bool) -> list[tuple[int, ...]]:
    """Size-``size`` [j,k]-sets in lexicographic order, pruning decided vertices.

    Vertices below the next candidate that are outside S are final: their
    S-neighbor count may only grow, so exceeding ``k`` is fatal, and once all
    their neighbors are decided falling short of ``j`` is fatal too.
    """
    n = G.n
    rows = G.rows
    out: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def violated(mask: int, nxt: int) -> bool:
        for w in range(nxt):
            if mask >> w & 1:
                continue
            c = (rows[w] & mask).bit_count()
            if c > k:
                return True
            if c < j and rows[w] >> nxt == 0:
                return True
        return False

    def rec(start: int, mask: int) -> bool:
        if len(chosen) == size:
            if is_jk_set(G, mask, j, k):
                out.append(tuple(chosen))
                return not find_all
            return False
        for v in range(start, n - (size - len(chosen)) + 1):
            m2 = mask | 1 << v
            if violated(m2, v + 1):
                continue
            chosen.append(v)
            stop = rec(v + 1, m2)
            chosen.pop()
            if stop:
                return True
        return False

    rec(0, 0)
    return out


def gamma_jk(G: Graph, j: int = 1, k: int = 2) -> DomSolution:
    """Minimum [j,k]-set by size-increasing search from the domination number up."""
    if not k >= j >= 1:
        raise ValueError("need k >= j >= 1")
    if G.n < 1:
        raise ValueError("domination number needs n >= 1")
    start = gamma_exact(G).size
    for size in range(start, G.n + 1):
        hits = _jk_search(G, j, k, size, find_all=False)
        if hits:
            return DomSolution(size, VertexSet.of(hits[0], G.n), "jk", (j, k))
    return DomSolution(G.n, VertexSet.full(G.n), "jk", (j, k))


def enumerate_min_jk_sets(G: Graph, j: int = 1, k: int = 2) -> list[VertexSet]:
    size = gamma_jk(G, j, k).size
    return [VertexSet.of(s, G.n) for s in _jk_search(G, j, k, size, find_all=True)]


# cells and chambers

def _key(S: Sequence[int]) -> str:
    return ",".join(map(str, S))


@dataclass(frozen=True)
class CellPartition:
    """Partition of V(G) relative to an ordered dominating set ``gamma_set``.

    Indices are 1-based: ``gamma_set[i-1]`` is ``v_i``. ``signature[g]`` is the
    sorted tuple of indices ``i`` with ``v_i`` adjacent to ``g`` (for ``g``
    outside the set) and ``(i,)`` for ``g = v_i``.
    """

    graph: Graph
    gamma_set: tuple[int, ...]
    private: dict[int, VertexSet]
    shared: dict[tuple[int, ...], VertexSet]
    cells: dict[int, VertexSet]
    signature: tuple[tuple[int, ...], ...] = field(repr=False)
    index_of: dict[int, int] = field(repr=False)

    @property
    def k(self) -> int:
        return len(self.gamma_set)

    def to_dict(self) -> dict:
        return {
            "gamma_set": list(self.gamma_set),
            "private": {str(i): s.to_list() for i, s in self.private.items()},
            "shared": {_key(S): s.to_list() for S, s in self.shared.items()},
            "cells": {str(i): s.to_list() for i, s in self.cells.items()},
        }


def cell_partition(G: Graph, gamma_set: Sequence[int]) -> CellPartition:
    gamma = tuple(gamma_set)
    if len(set(gamma)) != len(gamma):
        raise ValueError(f"dominating set {list(gamma)} has repeated entries")
    for v in gamma:
        if not 0 <= v < G.n:
            raise ValueError(f"vertex {v} out of range for n={G.n}")
    miss = first_undominated(G, mask_of(gamma))
    if miss is not None:
        raise ValueError(f"set {list(gamma)} does not dominate vertex {miss}")
    index_of = {v: i + 1 for i, v in enumerate(gamma)}
    k = len(gamma)
    private = {i: 0 for i in range(1, k + 1)}
    shared: dict[tuple[int, ...], int] = {}
    sig: list[tuple[int, ...]] = []
    for g in range(G.n):
        if g in index_of:
            sig.append((index_of[g],))
            continue
        s = tuple(sorted(index_of[v] for v in gamma if G.adjacent(g, v)))
        sig.append(s)
        if len(s) == 1:
            private[s[0]] |= 1 << g
        else:
            shared[s] = shared.get(s, 0) | 1 << g
    cells = {i: VertexSet(private[i] | 1 << gamma[i - 1], G.n) for i in private}
    return CellPartition(
        graph=G,
        gamma_set=gamma,
        private={i: VertexSet(m, G.n) for i, m in private.items()},
        shared={S: VertexSet(shared[S], G.n) for S in sorted(shared)},
        cells=cells,
        signature=tuple(sig),
        index_of=index_of,
    )


def chamber(C: CellPartition, I: Sequence[int] | set[int]) -> VertexSet:
    idx = set(I)
    for i in idx:
        if not 1 <= i <= C.k:
            raise ValueError(f"cell index {i} out of range 1..{C.k}")
    mask = 0
    for i in idx:
        mask |= C.cells[i].mask
    for S, part in C.shared.items():
        if set(S) <= idx:
            mask |= part.mask
    return VertexSet(mask, C.graph.n)
