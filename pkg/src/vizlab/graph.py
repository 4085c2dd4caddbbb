"""Bitset-backed simple undirected graphs and the elementary operations on them.

Vertices are ``0..n-1``. Each adjacency row is a Python ``int`` used as a
bitset, so arbitrary ``n`` is supported; only canonicalization is capped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

CANONICAL_CAP = 8


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class VertexSet:
    """A subset of the vertices of a graph with ``n`` vertices."""

    mask: int
    n: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"vertex set {self.mask:#x} exceeds width {self.n}")

    @classmethod
    def of(cls, vertices: Iterable[int], n: int) -> "VertexSet":
        vs = list(vertices)
        for v in vs:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range for n={n}")
        return cls(mask_of(vs), n)

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls((1 << n) - 1, n)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and v >= 0 and bool(self.mask >> v & 1)

    def __bool__(self) -> bool:
        return self.mask != 0

    def to_list(self) -> list[int]:
        return list(self)

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph stored as one bitset row per vertex."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.rows) != self.n:
            raise ValueError("row count must equal n")
        for v, row in enumerate(self.rows):
            if row < 0 or row >> self.n:
                raise ValueError(f"row {v} has bits beyond n={self.n}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in iter_bits(row):
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")

    # constructors

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        return cls.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        return cls.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))

    # queries

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> int:
        return self.rows[v]

    def closed(self, v: int) -> int:
        return self.rows[v] | 1 << v

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.rows[u] >> (u + 1) << (u + 1))]

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        rows = [0] * self.n
        for v in range(self.n):
            rows[perm[v]] = mask_of(perm[u] for u in iter_bits(self.rows[v]))
        return Graph(self.n, tuple(rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def closed_neighborhood(G: Graph, v: int) -> VertexSet:
    if not 0 <= v < G.n:
        raise ValueError(f"vertex {v} out of range for n={G.n}")
    return VertexSet(G.closed(v), G.n)


def complement(G: Graph) -> Graph:
    full = G.full_mask
    return Graph(G.n, tuple(full ^ row ^ (1 << v) for v, row in enumerate(G.rows)))


def component_masks(G: Graph, within: int | None = None) -> list[int]:
    """Components of ``G[within]`` as bitmasks, ordered by smallest member."""
    todo = G.full_mask if within is None else within
    out = []
    while todo:
        seed = todo & -todo
        comp = frontier = seed
        while frontier:
            reach = 0
            for v in iter_bits(frontier):
                reach |= G.rows[v]
            frontier = reach & todo & ~comp
            comp |= frontier
        out.append(comp)
        todo &= ~comp
    return out


def connected_components(G: Graph) -> list[VertexSet]:
    return [VertexSet(m, G.n) for m in component_masks(G)]


def is_connected(G: Graph) -> bool:
    return G.n > 0 and len(component_masks(G)) == 1


def induced_subgraph(G: Graph, S: VertexSet | Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``S`` re-indexed ``0..|S|-1`` in ascending order.

    Returns the subgraph together with the old-id -> new-id map.
    """
    members = list(S)
    if not members:
        raise ValueError("induced subgraph needs a nonempty vertex set")
    index = {v: i for i, v in enumerate(sorted(members))}
    rows = []
    for v in sorted(members):
        rows.append(mask_of(index[u] for u in iter_bits(G.rows[v]) if u in index))
    return Graph(len(index), tuple(rows)), index


# canonical form

def _twins(G: Graph, a: int, b: int) -> bool:
    ra = G.rows[a] & ~(1 << b)
    rb = G.rows[b] & ~(1 << a)
    return ra == rb


def canonical_order(G: Graph) -> list[int]:
    """Vertex order maximizing the column-wise upper-triangle adjacency string.

    Position ``i`` contributes the block ``adj(p_0,p_i) .. adj(p_{i-1},p_i)``.
    Blocks have fixed length per position, so the lexicographic maximum is
    found level by level keeping every tied partial order. Twin candidates
    are interchangeable by an automorphism, so only the first is kept.
    """
    n = G.n
    if n > CANONICAL_CAP:
        raise ValueError(f"canonical form supports n <= {CANONICAL_CAP}, got {n}")
    states: list[list[int]] = [[]]
    for _ in range(n):
        best_block = -1
        nxt: list[list[int]] = []
        for order in states:
            placed = mask_of(order)
            tried: list[int] = []
            for c in range(n):
                if placed >> c & 1:
                    continue
                if any(_twins(G, c, t) for t in tried):
                    continue
                tried.append(c)
                block = 0
                row = G.rows[c]
                for p in order:
                    block = block << 1 | (row >> p & 1)
                if block > best_block:
                    best_block = block
                    nxt = [order + [c]]
                elif block == best_block:
                    nxt.append(order + [c])
        states = nxt
    return states[0]


def canonical_code(G: Graph) -> bytes:
    """Isomorphism-complete code: equal for two graphs iff they are isomorphic."""
    order = canonical_order(G)
    bits = 0
    nbits = 0
    for i, c in enumerate(order):
        row = G.rows[c]
        for p in order[:i]:
            bits = bits << 1 | (row >> p & 1)
            nbits += 1
    nbytes = (nbits + 7) // 8
    return bytes([G.n]) + bits.to_bytes(nbytes, "big") if nbytes else bytes([G.n])


def canonical_form(G: Graph) -> Graph:
    """The canonical representative of the isomorphism class of ``G``."""
    order = canonical_order(G)
    perm = [0] * G.n
    for new, old in enumerate(order):
        perm[old] = new
    return G.relabel(perm)


def is_isomorphic(G: Graph, H: Graph) -> bool:
    return G.n == H.n and G.num_edges == H.num_edges and canonical_code(G) == canonical_code(H)
