"""Independent reference implementations used only by the tests.

They use networkx or plain enumeration and share no code paths with the
package beyond the ``Graph`` container.
"""

from __future__ import annotations

from itertools import combinations

import networkx as nx

from graphcode.graph import Graph


def nx_graph(h: Graph, mask: int | None = None) -> nx.MultiGraph:
    g = nx.MultiGraph()
    g.add_nodes_from(range(h.n))
    for e, (u, v) in enumerate(h.edges):
        if mask is None or mask >> e & 1:
            g.add_edge(u, v)
    return g


def connected_spanning(h: Graph, mask: int) -> bool:
    return nx.is_connected(nx_graph(h, mask))


def brute_edge_connectivity(h: Graph) -> int:
    """Minimum over every nontrivial vertex bipartition containing vertex 0 on one side."""
    if h.n == 1:
        return 0
    best = None
    for bits in range((1 << (h.n - 1)) - 1):
        side = {0} | {i + 1 for i in range(h.n - 1) if bits >> i & 1}
        crossing = sum(1 for u, v in h.edges if (u in side) != (v in side))
        best = crossing if best is None else min(best, crossing)
    return best


def brute_connected_subset_count(h: Graph, max_size: int) -> int:
    g = nx_graph(h)
    count = 0
    for size in range(1, max_size + 1):
        for W in combinations(range(h.n), size):
            if nx.is_connected(g.subgraph(W)):
                count += 1
    return count


def span_rank(vectors: list[int]) -> int:
    span = {0}
    for v in vectors:
        span |= {x ^ v for x in span}
    return len(span).bit_length() - 1


def naive_max_code(h: Graph) -> int:
    """Largest family of edge subsets with connected spanning pairwise differences.

    Plain maximum clique over all ``2^m`` subsets, no anchoring at the empty set.
    """
    full = 1 << h.m
    good = [connected_spanning(h, x) if x else False for x in range(full)]
    g = nx.Graph()
    g.add_nodes_from(range(full))
    for a in range(full):
        for b in range(a + 1, full):
            if good[a ^ b]:
                g.add_edge(a, b)
    return max(len(c) for c in nx.find_cliques(g))


def from_nx(g: nx.Graph) -> Graph:
    g = nx.convert_node_labels_to_integers(g)
    return Graph(g.number_of_nodes(), tuple(sorted((min(u, v), max(u, v)) for u, v in g.edges())))
