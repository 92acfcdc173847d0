"""Constructors for the graph families used throughout the package.

Edge ids are part of the contract: matchings in :func:`clique_chain` and
:func:`three_matching_cubic` occupy known id ranges, and
:func:`cartesian_product` lists the ``h2`` fibres before the ``h1`` fibres.
"""

from __future__ import annotations

import random

from .graph import Graph, GraphError

RANDOM_REGULAR_RETRIES = 1000


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError("K_n needs n >= 1")
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def cycle(s: int) -> Graph:
    if s < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(s, tuple((i, (i + 1) % s) for i in range(s)))


def cartesian_product(h1: Graph, h2: Graph) -> Graph:
    """Box product; vertex ``(a, b)`` is ``a * h2.n + b``.

    Edge ids: first every copy of ``h2`` (fibre ``a`` at ids ``a*m2 .. a*m2+m2-1``),
    then for each edge of ``h1`` its ``h2.n`` parallel rungs.
    """
    n2 = h2.n
    edges = [(a * n2 + u, a * n2 + v) for a in range(h1.n) for u, v in h2.edges]
    edges += [(a * n2 + b, c * n2 + b) for a, c in h1.edges for b in range(n2)]
    return Graph(h1.n * n2, tuple(edges), h1.multigraph_allowed or h2.multigraph_allowed)


def cycle_power(s: int, k: int) -> Graph:
    """Circulant on ``Z_s`` with connection set ``{±1, ..., ±k}``."""
    if k < 1 or s <= 2 * k:
        raise GraphError(f"cycle_power needs s > 2k (got s={s}, k={k})")
    return Graph(s, tuple((i, (i + j) % s) for j in range(1, k + 1) for i in range(s)))


def three_matching_cubic(n: int) -> Graph:
    """Bipartite cubic graph on ``a_i = i`` and ``b_i = n + i``.

    Matching ``M_j`` (edges ``a_i b_{i+j}``) has ids ``j*n .. j*n + n - 1``.
    """
    if n < 3:
        raise GraphError("three_matching_cubic needs n >= 3")
    return Graph(2 * n, tuple((i, n + (i + j) % n) for j in range(3) for i in range(n)))


def matching_ids(n: int, j: int) -> range:
    """Edge ids of ``M_j`` in ``three_matching_cubic(n)``."""
    return range(j * n, (j + 1) * n)


def clique_chain(s: int, k: int) -> Graph:
    """Ring of ``s`` cliques of size ``2k+1`` joined by ``k``-edge matchings.

    Clique ``i`` holds vertices ``i*(2k+1) + j``. ``M_i`` joins local vertex
    ``r`` of clique ``i`` to local vertex ``k + r`` of clique ``i+1`` for
    ``r < k``. Outgoing and incoming blocks are disjoint, even across the wrap
    from the last clique to the first, so each vertex meets at most one
    matching edge and local vertex ``2k`` meets none. Clique edges come first, then
    ``M_0, ..., M_{s-1}`` in order (see :func:`clique_chain_matching_ids`).
    """
    if s < 3 or k < 1:
        raise GraphError(f"clique_chain needs s >= 3 and k >= 1 (got s={s}, k={k})")
    q = 2 * k + 1
    edges = [
        (c * q + a, c * q + b) for c in range(s) for a in range(q) for b in range(a + 1, q)
    ]
    for i in range(s):
        nxt = (i + 1) % s
        for r in range(k):
            edges.append((i * q + r, nxt * q + k + r))
    return Graph(s * q, tuple(edges))


def clique_chain_matching_ids(s: int, k: int, i: int) -> range:
    base = s * k * (2 * k + 1)
    return range(base + i * k, base + (i + 1) * k)


def random_regular(n: int, d: int, seed: int = 0) -> Graph:
    """Simple ``d``-regular graph from a seeded pairing process.

    Half-edges are paired at random, rejecting only pairs that would create
    a loop or a repeated edge; a dead end restarts the whole pairing.
    Edges are returned sorted. Raises after ``RANDOM_REGULAR_RETRIES`` restarts.
    """
    if n < 1 or d < 0 or d >= n or (n * d) % 2:
        raise GraphError(f"no simple {d}-regular graph on {n} vertices")
    rng = random.Random(seed)
    for _ in range(RANDOM_REGULAR_RETRIES):
        edges = _try_pairing(n, d, rng)
        if edges is not None:
            return Graph(n, tuple(sorted(edges)))
    raise GraphError(f"random_regular({n}, {d}) gave up after {RANDOM_REGULAR_RETRIES} restarts")


def _try_pairing(n: int, d: int, rng: random.Random) -> set[tuple[int, int]] | None:
    edges: set[tuple[int, int]] = set()
    stubs = [v for v in range(n) for _ in range(d)]
    for _ in range(100 * d + 100):
        if not stubs:
            return edges
        rng.shuffle(stubs)
        leftover: dict[int, int] = {}
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            pair = (min(u, v), max(u, v))
            if u != v and pair not in edges:
                edges.add(pair)
            else:
                leftover[u] = leftover.get(u, 0) + 1
                leftover[v] = leftover.get(v, 0) + 1
        if not _pairable(leftover, edges):
            return None
        stubs = [v for v in sorted(leftover) for _ in range(leftover[v])]
    return edges if not stubs else None


def _pairable(leftover: dict[int, int], edges: set[tuple[int, int]]) -> bool:
    if not leftover:
        return True
    verts = sorted(leftover)
    for i, u in enumerate(verts):
        for v in verts[i + 1 :]:
            if (u, v) not in edges:
                return True
    return False
