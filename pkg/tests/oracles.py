"""Naive reference implementations. Deliberately slow and independent of the package internals.

Only ``Graph.n`` and ``Graph.adjacent`` are used from the graphs under test.
"""

from __future__ import annotations

from itertools import combinations, permutations


def nbrs(G, v):
    return {u for u in range(G.n) if u != v and G.adjacent(u, v)}


def dominates(G, S):
    S = set(S)
    return all(v in S or nbrs(G, v) & S for v in range(G.n))


def brute_gamma(G):
    for size in range(1, G.n + 1):
        for S in combinations(range(G.n), size):
            if dominates(G, S):
                return size
    raise AssertionError("unreachable: V dominates")


def brute_min_dominating_sets(G):
    g = brute_gamma(G)
    return [S for S in combinations(range(G.n), g) if dominates(G, S)]


def is_jk(G, S, j, k):
    S = set(S)
    return all(j <= len(nbrs(G, v) & S) <= k for v in range(G.n) if v not in S)


def brute_gamma_jk(G, j, k):
    for size in range(1, G.n + 1):
        for S in combinations(range(G.n), size):
            if is_jk(G, S, j, k):
                return size
    return G.n


def naive_has_induced_p4(G):
    for quad in combinations(range(G.n), 4):
        for a, b, c, d in permutations(quad):
            if (G.adjacent(a, b) and G.adjacent(b, c) and G.adjacent(c, d)
                    and not G.adjacent(a, c) and not G.adjacent(a, d) and not G.adjacent(b, d)):
                return True
    return False


def edge_set(G):
    return {(u, v) for u in range(G.n) for v in range(u + 1, G.n) if G.adjacent(u, v)}


def brute_canon(n, edges):
    """Minimum sorted edge tuple over all relabelings."""
    best = None
    for p in permutations(range(n)):
        key = tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in edges))
        if best is None or key < best:
            best = key
    return (n, best)


def naive_connected(n, edges):
    seen = {0}
    stack = [0]
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def naive_graph_classes(n, connected=False):
    """Isomorphism classes of graphs on n vertices by filtering every labeled graph."""
    pairs = list(combinations(range(n), 2))
    classes = set()
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        if connected and not naive_connected(n, edges):
            continue
        classes.add(brute_canon(n, edges))
    return classes
