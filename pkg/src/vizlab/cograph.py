"""Cograph recognition, cotrees, and the cotree domination recurrence."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Iterator, Union

from .graph import Graph, complement, component_masks, iter_bits

LEAF, UNION, JOIN = "leaf", "union", "join"


@dataclass(frozen=True)
class P4Witness:
    """Induced path a-b-c-d: edges exactly ab, bc, cd among the six pairs."""

    a: int
    b: int
    c: int
    d: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def check(self, G: Graph) -> bool:
        a, b, c, d = self.as_tuple()
        if len({a, b, c, d}) != 4:
            return False
        present = {(a, b), (b, c), (c, d)}
        pairs = [(a, b), (a, c), (a, d), (b, c), (b, d), (c, d)]
        return all(G.adjacent(x, y) == ((x, y) in present) for x, y in pairs)


@dataclass(frozen=True)
class Cotree:
    kind: str
    vertex: int | None = None
    children: tuple["Cotree", ...] = field(default=())

    @classmethod
    def leaf(cls, v: int) -> "Cotree":
        return cls(LEAF, v)

    def leaves(self) -> Iterator[int]:
        if self.kind == LEAF:
            yield self.vertex  # type: ignore[misc]
        else:
            for ch in self.children:
                yield from ch.leaves()

    def min_leaf(self) -> int:
        return min(self.leaves())

    def is_normalized(self) -> bool:
        if self.kind == LEAF:
            return not self.children and self.vertex is not None
        if self.kind not in (UNION, JOIN) or len(self.children) < 2:
            return False
        return all(ch.kind != self.kind and ch.is_normalized() for ch in self.children)

    def __str__(self) -> str:
        if self.kind == LEAF:
            return str(self.vertex)
        tag = "U" if self.kind == UNION else "J"
        return f"{tag}(" + ",".join(str(ch) for ch in self.children) + ")"


_TOKEN = re.compile(r"\s*(?:(\d+)|([UJ])\(|(,)|(\)))")


def parse_cotree(text: str) -> Cotree:
    """Parse the term notation produced by ``str(Cotree)``, e.g. ``J(U(0,1),U(2,3))``."""
    pos = 0

    def node() -> Cotree:
        nonlocal pos
        m = _TOKEN.match(text, pos)
        if not m or not (m.group(1) or m.group(2)):
            raise ValueError(f"expected leaf or U(/J( at offset {pos}")
        pos = m.end()
        if m.group(1):
            return Cotree.leaf(int(m.group(1)))
        kind = UNION if m.group(2) == "U" else JOIN
        children = [node()]
        while True:
            m = _TOKEN.match(text, pos)
            if not m or not (m.group(3) or m.group(4)):
                raise ValueError(f"expected ',' or ')' at offset {pos}")
            pos = m.end()
            if m.group(4):
                break
            children.append(node())
        return Cotree(kind, None, tuple(children))

    tree = node()
    if text[pos:].strip():
        raise ValueError(f"trailing input at offset {pos}")
    return tree


def find_induced_p4(G: Graph, within: int | None = None) -> P4Witness | None:
    """First induced P4 in lexicographic order of (a, b, c, d), or ``None``."""
    allowed = G.full_mask if within is None else within
    rows = G.rows
    for a in iter_bits(allowed):
        na = rows[a] | 1 << a
        for b in iter_bits(rows[a] & allowed):
            nb = rows[b] | 1 << b
            for c in iter_bits(rows[b] & allowed & ~na):
                for d in iter_bits(rows[c] & allowed & ~na & ~nb):
                    return P4Witness(a, b, c, d)
    return None


def _build(G: Graph, Gc: Graph, S: int) -> Cotree | P4Witness:
    if S & (S - 1) == 0:
        return Cotree.leaf(S.bit_length() - 1)
    for kind, graph in ((UNION, G), (JOIN, Gc)):
        parts = component_masks(graph, S)
        if len(parts) > 1:
            children = []
            for part in parts:
                sub = _build(G, Gc, part)
                if isinstance(sub, P4Witness):
                    return sub
                children.append(sub)
            return Cotree(kind, None, tuple(children))
    witness = find_induced_p4(G, S)
    assert witness is not None, "connected and co-connected graph must contain a P4"
    return witness


def build_cotree(G: Graph) -> Cotree | P4Witness:
    """Normalized cotree of ``G``, or an induced-P4 witness if ``G`` is not a cograph.

    Disconnected parts become union children and co-disconnected parts join
    children; a part that is neither (and has 2+ vertices) contains a P4.
    """
    if G.n == 0:
        raise ValueError("cotree of the empty graph is undefined")
    return _build(G, complement(G), G.full_mask)


def is_cograph(G: Graph) -> bool:
    return find_induced_p4(G) is None


def eval_cotree(T: Cotree) -> Graph:
    leaves = sorted(T.leaves())
    if leaves != list(range(len(leaves))):
        raise ValueError("cotree leaves must be exactly 0..n-1")
    n = len(leaves)
    rows = [0] * n

    def walk(t: Cotree) -> int:
        if t.kind == LEAF:
            return 1 << t.vertex  # type: ignore[operator]
        masks = [walk(ch) for ch in t.children]
        if t.kind == JOIN:
            total = sum(masks)
            for m in masks:
                for v in iter_bits(m):
                    rows[v] |= total & ~m
        return sum(masks)

    walk(T)
    return Graph(n, tuple(rows))


def gamma_cotree(T: Cotree) -> int:
    """Domination number from the cotree: leaf 1, union sums, join caps at 2."""
    if T.kind == LEAF:
        return 1
    vals = [gamma_cotree(ch) for ch in T.children]
    if T.kind == UNION:
        return sum(vals)
    return min(2, min(vals))


def _flip(T: Cotree) -> Cotree:
    if T.kind == LEAF:
        return T
    kind = JOIN if T.kind == UNION else UNION
    return Cotree(kind, None, tuple(_flip(ch) for ch in T.children))


def random_cotree(n: int, seed: int, connected: bool = False) -> Cotree:
    """Random normalized cotree with leaves ``0..n-1``.

    Not uniform over unlabeled cographs; meant as a fuzzing source.
    """
    if n < 1:
        raise ValueError("random cograph needs n >= 1")
    rng = random.Random(seed)
    labels = list(range(n))
    rng.shuffle(labels)
    it = iter(labels)

    def grow(size: int, kind: str) -> Cotree:
        if size == 1:
            return Cotree.leaf(next(it))
        while True:
            cuts = [i for i in range(1, size) if rng.random() < 0.5]
            if cuts:
                break
        bounds = [0] + cuts + [size]
        other = JOIN if kind == UNION else UNION
        kids = [grow(bounds[i + 1] - bounds[i], other) for i in range(len(bounds) - 1)]
        kids.sort(key=Cotree.min_leaf)
        return Cotree(kind, None, tuple(kids))

    tree = grow(n, rng.choice((UNION, JOIN)))
    if connected and tree.kind == UNION:
        # complementing every node turns the disconnected root into a join
        tree = _flip(tree)
    return tree


def random_cograph(n: int, seed: int, connected: bool = False) -> Graph:
    return eval_cotree(random_cotree(n, seed, connected))


CotreeResult = Union[Cotree, P4Witness]
