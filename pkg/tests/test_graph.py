import random
from itertools import product

import pytest
from conftest import c4, graphs
from hypothesis import given
from oracles import naive_graph_classes

from vizlab.enumeration import enumerate_graphs
from vizlab.graph import (
    Graph,
    VertexSet,
    canonical_code,
    canonical_form,
    closed_neighborhood,
    complement,
    connected_components,
    induced_subgraph,
    is_isomorphic,
)


def all_labeled(n):
    pairs = [(u, v) for v in range(n) for u in range(v)]
    for bits in product((0, 1), repeat=len(pairs)):
        yield Graph.from_edges(n, [p for p, b in zip(pairs, bits) if b])


def test_graph_rejects_asymmetry_and_loops():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))
    with pytest.raises(ValueError):
        Graph(1, (0b1,))
    with pytest.raises(ValueError):
        Graph(2, (0b110, 0b1))
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 0)])


def test_vertex_set_basics():
    S = VertexSet.of([3, 0, 2], 4)
    assert list(S) == [0, 2, 3]
    assert len(S) == 3 and 2 in S and 1 not in S
    with pytest.raises(ValueError):
        VertexSet.of([4], 4)


@pytest.mark.parametrize(
    "G, v, expected",
    [(Graph.complete(3), 0, [0, 1, 2]), (Graph.path(4), 1, [0, 1, 2]), (Graph.empty(1), 0, [0])],
)
def test_closed_neighborhood(G, v, expected):
    assert closed_neighborhood(G, v).to_list() == expected


def test_closed_neighborhood_out_of_range():
    with pytest.raises(ValueError):
        closed_neighborhood(Graph.path(3), 3)


def test_complement_examples():
    assert complement(Graph.complete(3)) == Graph.empty(3)
    assert sorted(complement(c4()).edges()) == [(0, 2), (1, 3)]


def test_complement_involution_labeled_small():
    for n in range(1, 5):
        for G in all_labeled(n):
            assert complement(complement(G)) == G


def test_complement_involution_classes_n6():
    for n in (5, 6):
        for G in enumerate_graphs(n):
            assert complement(complement(G)) == G


def test_connected_components_examples():
    assert [c.to_list() for c in connected_components(Graph.empty(1))] == [[0]]
    two_k2 = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert [c.to_list() for c in connected_components(two_k2)] == [[0, 1], [2, 3]]
    assert [c.to_list() for c in connected_components(c4())] == [[0, 1, 2, 3]]
    mixed = Graph.from_edges(5, [(4, 1), (0, 3)])
    assert [c.to_list() for c in connected_components(mixed)] == [[0, 3], [1, 4], [2]]


def test_induced_subgraph_examples():
    sub, index = induced_subgraph(c4(), VertexSet.of([0, 1, 2], 4))
    assert is_isomorphic(sub, Graph.path(3))
    assert index == {0: 0, 1: 1, 2: 2}
    G = Graph.cycle(5)
    same, idx = induced_subgraph(G, VertexSet.full(5))
    assert same == G and idx == {v: v for v in range(5)}
    for pair in [(0, 1), (1, 3), (2, 3)]:
        assert induced_subgraph(Graph.complete(4), pair)[0] == Graph.complete(2)
    with pytest.raises(ValueError):
        induced_subgraph(G, VertexSet(0, 5))


def test_canonical_code_examples():
    p4 = Graph.path(4)
    relabeled = Graph.from_edges(4, [(2, 0), (0, 3), (3, 1)])
    assert canonical_code(p4) == canonical_code(relabeled)
    assert canonical_code(Graph.complete(3)) != canonical_code(Graph.path(3))


def test_eleven_graphs_on_four_vertices():
    codes = {canonical_code(G) for G in all_labeled(4)}
    assert len(codes) == 11
    assert len(naive_graph_classes(4)) == 11


def test_canonical_code_cap():
    with pytest.raises(ValueError):
        canonical_code(Graph.empty(9))


@given(graphs(max_n=8))
def test_canonical_code_permutation_invariance(G):
    rng = random.Random(G.num_edges * 31 + G.n)
    code = canonical_code(G)
    for _ in range(100):
        perm = list(range(G.n))
        rng.shuffle(perm)
        assert canonical_code(G.relabel(perm)) == code


@given(graphs(max_n=6))
def test_canonical_form_is_isomorphic_copy(G):
    F = canonical_form(G)
    assert F.num_edges == G.num_edges
    assert sorted(F.degree(v) for v in range(F.n)) == sorted(G.degree(v) for v in range(G.n))
    assert canonical_code(F) == canonical_code(G)


def test_regular_graphs_canonicalize_quickly():
    cube = Graph.from_edges(8, [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)])
    assert canonical_code(cube) == canonical_code(cube.relabel([3, 1, 4, 0, 5, 7, 2, 6]))
    assert canonical_code(Graph.cycle(8)) != canonical_code(complement(Graph.cycle(8)))
