from itertools import combinations

import pytest
from conftest import c4, graphs
from hypothesis import given
from hypothesis import strategies as st
from oracles import brute_gamma, naive_has_induced_p4

from vizlab.cograph import (
    JOIN,
    LEAF,
    UNION,
    Cotree,
    P4Witness,
    build_cotree,
    eval_cotree,
    find_induced_p4,
    gamma_cotree,
    parse_cotree,
    random_cograph,
    random_cotree,
)
from vizlab.enumeration import cographs_by_cotree, enumerate_graphs
from vizlab.graph import Graph, canonical_code


def test_find_induced_p4_examples():
    assert find_induced_p4(Graph.path(4)) == P4Witness(0, 1, 2, 3)
    assert find_induced_p4(c4()) is None


def test_c5_has_a_p4():
    C5 = Graph.cycle(5)
    found = [q for q in combinations(range(5), 4) if naive_has_induced_p4(Graph.from_edges(
        4, [(i, j) for i in range(4) for j in range(i + 1, 4) if C5.adjacent(q[i], q[j])]))]
    assert found
    w = find_induced_p4(C5)
    assert w is not None and w.check(C5)


def test_build_cotree_examples():
    assert build_cotree(Graph.empty(1)) == Cotree.leaf(0)
    T = build_cotree(c4())
    assert isinstance(T, Cotree)
    assert T.kind == JOIN and [ch.kind for ch in T.children] == [UNION, UNION]
    assert str(T) == "J(U(0,2),U(1,3))"
    assert build_cotree(Graph.path(4)) == P4Witness(0, 1, 2, 3)


def test_eval_cotree_examples():
    assert eval_cotree(Cotree.leaf(0)) == Graph.empty(1)
    assert eval_cotree(parse_cotree("J(0,1)")) == Graph.complete(2)
    assert eval_cotree(parse_cotree("J(U(0,2),U(1,3))")) == c4()


def test_gamma_cotree_examples():
    assert gamma_cotree(Cotree.leaf(0)) == 1
    assert gamma_cotree(build_cotree(c4())) == 2 == brute_gamma(c4())
    three_k2 = Graph.from_edges(6, [(0, 1), (2, 3), (4, 5)])
    assert gamma_cotree(build_cotree(three_k2)) == 3


def test_cotree_string_round_trip():
    for text in ["0", "J(U(0,1),U(2,3))", "U(J(0,3),2,J(1,U(4,5)))"]:
        assert str(parse_cotree(text)) == text
    for bad in ["J(0", "X(0,1)", "J(0,1))", "U(,1)"]:
        with pytest.raises(ValueError):
            parse_cotree(bad)


def test_recognition_agrees_with_naive_scan_n6():
    for n in range(1, 7):
        for G in enumerate_graphs(n):
            res = build_cotree(G)
            assert isinstance(res, Cotree) == (not naive_has_induced_p4(G))
            if isinstance(res, P4Witness):
                assert res.check(G)


def test_round_trip_all_cographs_n7():
    for n in range(1, 8):
        for G in cographs_by_cotree(n):
            T = build_cotree(G)
            assert isinstance(T, Cotree) and T.is_normalized()
            assert sorted(T.leaves()) == list(range(n))
            H = eval_cotree(T)
            assert H == G
            assert canonical_code(H) == canonical_code(G)


def test_cotree_children_ordered_by_smallest_leaf():
    T = build_cotree(eval_cotree(parse_cotree("U(J(1,3),J(0,U(2,4)))")))
    assert str(T) == "U(J(0,U(2,4)),J(1,3))"


def test_random_cograph_examples():
    assert random_cograph(1, 7) == Graph.empty(1)
    assert random_cograph(9, 3) == random_cograph(9, 3)
    with pytest.raises(ValueError):
        random_cograph(0, 1)


def test_random_cographs_are_p4_free():
    for seed in range(1000):
        n = seed % 10 + 1
        assert find_induced_p4(random_cograph(n, seed)) is None


@given(st.integers(1, 12), st.integers(0, 2**32), st.booleans())
def test_random_cotree_is_normalized(n, seed, connected):
    T = random_cotree(n, seed, connected)
    assert T.is_normalized() or T.kind == LEAF
    G = eval_cotree(T)
    if connected and n > 1:
        assert T.kind == JOIN
    assert gamma_cotree(T) == brute_gamma(G)


@given(graphs(max_n=7))
def test_build_cotree_witness_or_exact_tree(G):
    res = build_cotree(G)
    if isinstance(res, P4Witness):
        assert res.check(G)
    else:
        assert eval_cotree(res) == G
