"""Cartesian products, fibers, and vertical domination."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .domination import CellPartition
from .graph import Graph, VertexSet, iter_bits

PRODUCT_CAP = 4096


@dataclass(frozen=True)
class ProductGraph:
    """``G □ H`` with product id ``h * n_G + g`` for the pair ``(g, h)``.

    A fiber ``G^h`` is the contiguous id block ``h*n_G .. h*n_G + n_G - 1``.
    """

    G: Graph
    H: Graph
    prod: Graph

    def encode(self, g: int, h: int) -> int:
        if not (0 <= g < self.G.n and 0 <= h < self.H.n):
            raise ValueError(f"({g},{h}) outside {self.G.n}x{self.H.n}")
        return h * self.G.n + g

    def decode(self, vid: int) -> tuple[int, int]:
        if not 0 <= vid < self.prod.n:
            raise ValueError(f"product vertex {vid} out of range")
        h, g = divmod(vid, self.G.n)
        return g, h

    def vertex_set(self, pairs: Iterable[tuple[int, int]]) -> VertexSet:
        return VertexSet.of((self.encode(g, h) for g, h in pairs), self.prod.n)

    def pairs(self, D: VertexSet) -> list[tuple[int, int]]:
        return [self.decode(v) for v in D]


def cartesian_product(G: Graph, H: Graph, max_vertices: int = PRODUCT_CAP) -> ProductGraph:
    if G.n < 1 or H.n < 1:
        raise ValueError("both factors need at least one vertex")
    n = G.n * H.n
    if n > max_vertices:
        raise ValueError(f"product of n_G={G.n} and n_H={H.n} has {n} vertices, cap is {max_vertices}")
    nG = G.n
    rows = []
    for h in range(H.n):
        base = h * nG
        for g in range(nG):
            row = G.rows[g] << base
            for h2 in iter_bits(H.rows[h]):
                row |= 1 << (h2 * nG + g)
            rows.append(row)
    return ProductGraph(G, H, Graph(n, tuple(rows)))


def fiber_slice(P: ProductGraph, D: VertexSet, h: int) -> VertexSet:
    """``D ∩ G^h`` as a set of G-vertices."""
    if not 0 <= h < P.H.n:
        raise ValueError(f"fiber {h} out of range for n_H={P.H.n}")
    nG = P.G.n
    return VertexSet(D.mask >> (h * nG) & ((1 << nG) - 1), nG)


@dataclass(frozen=True)
class FiberStatus:
    h: int
    D_h: VertexSet
    undominated: tuple[int, ...]

    @property
    def ell(self) -> int:
        return len(self.undominated)

    def to_dict(self) -> dict:
        return {"h": self.h, "D_h": self.D_h.to_list(), "undominated": list(self.undominated)}


def column_mask(P: ProductGraph, D: VertexSet, h: int) -> int:
    """G-columns holding a vertex of D within ``N_H[h]``."""
    cols = 0
    for h2 in iter_bits(P.H.closed(h)):
        cols |= fiber_slice(P, D, h2).mask
    return cols


def vertically_dominated(P: ProductGraph, D: VertexSet, g: int, h: int) -> bool:
    return bool(column_mask(P, D, h) >> g & 1)


def vertical_status(P: ProductGraph, D: VertexSet, C: CellPartition) -> list[FiberStatus]:
    """Per fiber, the cells Q_i^h with no D-vertex in ``Q_i × N_H[h]``."""
    if C.graph != P.G:
        raise ValueError("cell partition was not built on the product's G factor")
    out = []
    for h in range(P.H.n):
        cols = column_mask(P, D, h)
        und = tuple(i for i in range(1, C.k + 1) if not C.cells[i].mask & cols)
        out.append(FiberStatus(h, fiber_slice(P, D, h), und))
    return out
