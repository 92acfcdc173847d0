"""Host graphs, edge subsets, cuts, and connectivity/expansion primitives.

Edge subsets are int bitmasks indexed by edge id (bit ``i`` = edge ``i``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple

import numpy as np


class GraphError(ValueError):
    pass


class HostMismatchError(GraphError):
    pass


class EnumerationCapError(RuntimeError):
    """Raised when a subset enumeration would exceed its hard cap."""


DEFAULT_ENUM_CAP = 10**7


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    multigraph_allowed: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        if self.n < 1:
            raise GraphError("graph needs at least one vertex")
        seen = set()
        for i, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {i} = ({u}, {v}) out of range for n={self.n}")
            if u == v:
                raise GraphError(f"edge {i} is a self-loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen and not self.multigraph_allowed:
                raise GraphError(f"edge {i} duplicates {key} in simple mode")
            seen.add(key)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.m) - 1

    @cached_property
    def incidence(self) -> tuple[int, ...]:
        """Per-vertex mask of incident edge ids."""
        inc = [0] * self.n
        for i, (u, v) in enumerate(self.edges):
            inc[u] |= 1 << i
            inc[v] |= 1 << i
        return tuple(inc)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbour tuples (parallel edges collapse)."""
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(tuple(sorted(s)) for s in nbrs)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    def edge_ids(self) -> dict[tuple[int, int], int]:
        """Map from normalized pair to (first) edge id."""
        out: dict[tuple[int, int], int] = {}
        for i, (u, v) in enumerate(self.edges):
            out.setdefault((min(u, v), max(u, v)), i)
        return out

    def subset(self, ids: Iterable[int] = ()) -> "EdgeSubset":
        mask = 0
        for i in ids:
            if not 0 <= i < self.m:
                raise GraphError(f"edge id {i} out of range")
            mask |= 1 << i
        return EdgeSubset(self, mask)

    def empty(self) -> "EdgeSubset":
        return EdgeSubset(self, 0)

    def full(self) -> "EdgeSubset":
        return EdgeSubset(self, self.full_mask)


@dataclass(frozen=True)
class EdgeSubset:
    host: Graph = field(repr=False)
    mask: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> self.host.m:
            raise GraphError("edge mask has bits beyond the host's edge count")

    def __xor__(self, other: "EdgeSubset") -> "EdgeSubset":
        return symmetric_difference(self, other)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __contains__(self, edge_id: int) -> bool:
        return bool(self.mask >> edge_id & 1)

    def hex(self) -> str:
        return format(self.mask, "x")


@dataclass(frozen=True)
class CutCertificate:
    W: frozenset[int]
    crossing: EdgeSubset
    connected_side: bool

    def check(self) -> bool:
        """Recompute the crossing set and connectivity flag from ``W``."""
        again = cut_edges(self.crossing.host, self.W)
        return again.crossing.mask == self.crossing.mask and (
            not self.connected_side or again.connected_side
        )


class GraphStats(NamedTuple):
    min_degree: int
    max_degree: int
    is_regular: bool
    m: int
    n: int


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def symmetric_difference(a: EdgeSubset, b: EdgeSubset) -> EdgeSubset:
    if a.host is not b.host and a.host != b.host:
        raise HostMismatchError("edge subsets belong to different hosts")
    return EdgeSubset(a.host, a.mask ^ b.mask)


def components(h: Graph, mask: int | None = None) -> list[list[int]]:
    """Connected components of ``(V, mask)``, each sorted, ordered by min vertex."""
    if mask is None:
        mask = h.full_mask
    parent = list(range(h.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = h.edges
    for i in iter_bits(mask):
        u, v = edges[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups: dict[int, list[int]] = {}
    for x in range(h.n):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values(), key=lambda g: g[0])


def mask_is_connected_spanning(h: Graph, mask: int) -> bool:
    n = h.n
    if n == 1:
        return True
    if mask.bit_count() < n - 1:
        return False
    parent = list(range(n))
    merges = 0
    edges = h.edges
    while mask:
        low = mask & -mask
        u, v = edges[low.bit_length() - 1]
        mask ^= low
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        if u != v:
            parent[u] = v
            merges += 1
            if merges == n - 1:
                return True
    return False


def is_connected_spanning(s: EdgeSubset) -> bool:
    return mask_is_connected_spanning(s.host, s.mask)


def is_connected(h: Graph) -> bool:
    return mask_is_connected_spanning(h, h.full_mask)


def graph_stats(h: Graph) -> GraphStats:
    deg = h.degrees
    lo, hi = min(deg), max(deg)
    return GraphStats(lo, hi, lo == hi, h.m, h.n)


def regular_degree(h: Graph) -> int:
    st = graph_stats(h)
    if not st.is_regular:
        raise GraphError(f"graph is not regular (degrees {st.min_degree}..{st.max_degree})")
    return st.min_degree


def _is_connected_induced(h: Graph, W: frozenset[int]) -> bool:
    if not W:
        return False
    start = next(iter(W))
    seen = {start}
    stack = [start]
    adj = h.adjacency
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y in W and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(W)


def crossing_mask(h: Graph, W: Iterable[int]) -> int:
    # edges with both ends in W cancel out
    inc = h.incidence
    mask = 0
    for x in W:
        mask ^= inc[x]
    return mask


def cut_edges(h: Graph, W: Iterable[int]) -> CutCertificate:
    Wset = frozenset(W)
    if not Wset or len(Wset) >= h.n or any(not 0 <= x < h.n for x in Wset):
        raise GraphError("cut side must be a nonempty proper vertex subset")
    return CutCertificate(
        Wset, EdgeSubset(h, crossing_mask(h, Wset)), _is_connected_induced(h, Wset)
    )


def min_cut(h: Graph) -> tuple[int, CutCertificate | None]:
    """Global minimum edge cut by Stoer-Wagner; parallel edges count separately.

    Returns ``(value, certificate)``; the certificate side is the smaller shore.
    ``n == 1`` gives ``(0, None)``.
    """
    n = h.n
    if n == 1:
        return 0, None
    comps = components(h)
    if len(comps) > 1:
        small = min(comps, key=len)
        return 0, cut_edges(h, small)

    w = np.zeros((n, n), dtype=np.int64)
    for u, v in h.edges:
        w[u, v] += 1
        w[v, u] += 1
    groups: list[list[int]] = [[x] for x in range(n)]
    active = list(range(n))
    best = None
    best_side: list[int] = []
    while len(active) > 1:
        # maximum adjacency ordering
        idx = np.array(active)
        sub = w[np.ix_(idx, idx)]
        attached = np.zeros(len(active), dtype=bool)
        conn = sub[0].copy()
        attached[0] = True
        order = [0]
        for _ in range(len(active) - 1):
            cand = np.where(attached, -1, conn)
            nxt = int(np.argmax(cand))
            attached[nxt] = True
            order.append(nxt)
            conn += sub[nxt]
        s_loc, t_loc = order[-2], order[-1]
        cut_of_phase = int(sub[t_loc].sum())
        t, s = active[t_loc], active[s_loc]
        if best is None or cut_of_phase < best:
            best = cut_of_phase
            best_side = list(groups[t])
        groups[s].extend(groups[t])
        w[s, :] += w[t, :]
        w[:, s] += w[:, t]
        w[s, s] = 0
        active.remove(t)
    side = best_side if len(best_side) <= n - len(best_side) else [
        x for x in range(n) if x not in set(best_side)
    ]
    cert = cut_edges(h, side)
    assert len(cert.crossing) == best
    return best, cert


def edge_connectivity(h: Graph) -> int:
    return min_cut(h)[0]


def enumerate_connected_subsets(
    h: Graph, max_size: int, cap: int = DEFAULT_ENUM_CAP
) -> Iterator[frozenset[int]]:
    """Yield every vertex set of size ``1..max_size`` inducing a connected subgraph.

    Each set is grown from its minimum vertex, only ever adding larger vertices
    reached through the exclusive neighbourhood of the newest member, so every
    set appears exactly once. Raises :class:`EnumerationCapError` once more than
    ``cap`` sets have been produced.
    """
    adj = h.adjacency
    count = 0

    def extend(sub: frozenset[int], closed: frozenset[int], ext: list[int], root: int):
        nonlocal count
        count += 1
        if count > cap:
            raise EnumerationCapError(f"more than {cap} connected subsets")
        yield sub
        if len(sub) == max_size:
            return
        ext = list(ext)
        while ext:
            w = ext.pop()
            new_ext = ext + [u for u in adj[w] if u > root and u not in closed]
            new_closed = closed | set(adj[w])
            yield from extend(sub | {w}, new_closed, new_ext, root)

    if max_size < 1:
        return
    for v in range(h.n):
        closed = frozenset(adj[v]) | {v}
        yield from extend(frozenset((v,)), closed, [u for u in adj[v] if u > v], v)


@dataclass(frozen=True)
class ExpansionResult:
    ok: bool
    worst: CutCertificate | None
    worst_ratio: float


def expansion_profile(
    h: Graph, c: float, cap: int = DEFAULT_ENUM_CAP
) -> ExpansionResult:
    """Check ``|crossing(W)| >= c * |W| * log2(d)`` for connected ``W`` with ``|W| <= n/2``.

    ``worst_ratio`` is the minimum of ``|crossing(W)| / (|W| log2 d)`` found.
    """
    d = regular_degree(h)
    if d < 2:
        raise GraphError("expansion profile needs degree >= 2")
    logd = math.log2(d)
    worst = None
    worst_ratio = math.inf
    for W in enumerate_connected_subsets(h, h.n // 2, cap):
        size = crossing_mask(h, W).bit_count()
        ratio = size / (len(W) * logd)
        if ratio < worst_ratio:
            worst_ratio = ratio
            worst = W
    cert = cut_edges(h, worst) if worst is not None else None
    return ExpansionResult(worst_ratio >= c, cert, worst_ratio)


def adjacency_matrix(h: Graph) -> np.ndarray:
    a = np.zeros((h.n, h.n))
    for u, v in h.edges:
        a[u, v] += 1
        a[v, u] += 1
    return a


EIGEN_ATOL = 1e-9


def second_eigenvalue(h: Graph) -> float:
    """Second largest adjacency eigenvalue (dense symmetric solver).

    For ``n == 1`` the only eigenvalue is returned.
    """
    vals = np.linalg.eigvalsh(adjacency_matrix(h))
    if len(vals) == 1:
        return float(vals[0])
    return float(vals[-2])
