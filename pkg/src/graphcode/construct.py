"""Code constructions.

The main entry point is :func:`repair_construct`, which looks for an assignment
of ``Z_2^d`` vectors to the edges of a ``d``-regular host so that every cut
spans, giving a linear code of size ``2**d``. It thins the host, samples random
vectors on the thinned part, resamples whatever fails (dependent vertex stars,
then cuts returned by the verifier) and fills the remaining edges greedily.
"""

from __future__ import annotations

import logging
import math
import random
from collections import deque
from dataclasses import dataclass, field

from . import gf2
from .codes import (
    ConnectivityCode,
    EdgeAssignment,
    code_from_assignment,
    find_violating_cut,
    verify_pairwise,
)
from .generators import matching_ids, three_matching_cubic
from .graph import (
    CutCertificate,
    EdgeSubset,
    Graph,
    GraphError,
    edge_connectivity,
    is_connected,
    is_connected_spanning,
    iter_bits,
    regular_degree,
)

log = logging.getLogger(__name__)


class ConstructionError(RuntimeError):
    pass


class StarDependentError(ConstructionError):
    def __init__(self, vertex: int):
        super().__init__(f"assigned vectors at vertex {vertex} are linearly dependent")
        self.vertex = vertex


# ---------------------------------------------------------------- clique codes


def clique_assignment(n: int) -> EdgeAssignment:
    """Edge ``{i, j}`` of ``K_n`` gets ``e_i + e_j`` in the basis ``e_k + e_{n-1}``.

    Codeword ``u`` is the complete bipartite cut between ``{i : u_i = 1}`` and
    the rest (vertex ``n-1`` always on the 0 side).
    """
    from .generators import complete_graph

    if n < 2:
        raise GraphError("clique_assignment needs n >= 2")
    h = complete_graph(n)
    top = n - 1

    def coord(i: int) -> int:
        return 0 if i == top else 1 << i

    return EdgeAssignment(h, n - 1, tuple(coord(i) ^ coord(j) for i, j in h.edges))


# ---------------------------------------------------------------- thinning


def _euler_orientation(h: Graph) -> list[tuple[int, int]]:
    """Orient every edge along an Euler circuit of its component."""
    incident: list[list[int]] = [[] for _ in range(h.n)]
    for e, (u, v) in enumerate(h.edges):
        incident[u].append(e)
        incident[v].append(e)
    used = [False] * h.m
    ptr = [0] * h.n
    oriented: list[tuple[int, int]] = [(0, 0)] * h.m
    for start in range(h.n):
        if ptr[start] >= len(incident[start]):
            continue
        stack = [start]
        while stack:
            x = stack[-1]
            while ptr[x] < len(incident[x]) and used[incident[x][ptr[x]]]:
                ptr[x] += 1
            if ptr[x] == len(incident[x]):
                stack.pop()
                continue
            e = incident[x][ptr[x]]
            used[e] = True
            u, v = h.edges[e]
            y = v if u == x else u
            oriented[e] = (x, y)
            stack.append(y)
    return oriented


def _bipartite_perfect_matching(n: int, arcs: list[tuple[int, int]]) -> list[int]:
    """Perfect matching of out-copies to in-copies by BFS augmenting paths.

    Returns, for each vertex, the index of its matched arc.
    """
    out: list[list[int]] = [[] for _ in range(n)]
    for idx, (u, _) in enumerate(arcs):
        out[u].append(idx)
    match_right: list[int | None] = [None] * n
    match_left: list[int | None] = [None] * n
    for root in range(n):
        parent: dict[int, int] = {}
        seen_left = {root}
        q = deque([root])
        end = None
        while q and end is None:
            left = q.popleft()
            for idx in out[left]:
                right = arcs[idx][1]
                if right in parent:
                    continue
                parent[right] = idx
                if match_right[right] is None:
                    end = right
                    break
                nxt = arcs[match_right[right]][0]
                if nxt not in seen_left:
                    seen_left.add(nxt)
                    q.append(nxt)
        if end is None:
            raise GraphError("no perfect matching between out- and in-copies")
        right = end
        while True:
            idx = parent[right]
            left = arcs[idx][0]
            prev = match_left[left]
            match_right[right] = idx
            match_left[left] = idx
            if prev is None:
                break
            right = arcs[prev][1]
    return match_left  # type: ignore[return-value]


def two_factor(h: Graph) -> EdgeSubset:
    """A spanning subgraph with every degree exactly 2 (multigraphs allowed).

    Every degree must be even and positive. Edges are oriented along Euler
    circuits; a perfect matching between out-copies and in-copies then picks
    one outgoing and one incoming edge per vertex.
    """
    for x, deg in enumerate(h.degrees):
        if deg % 2 or deg == 0:
            raise GraphError(f"vertex {x} has degree {deg}; need even and >= 2")
    arcs = _euler_orientation(h)
    chosen = _bipartite_perfect_matching(h.n, arcs)
    sub = h.subset(chosen)
    assert all(len(EdgeSubset(h, sub.mask & inc)) == 2 for inc in h.incidence)
    return sub


def _complement_pairing(h: Graph) -> list[tuple[int, int]]:
    """Perfect pairing of V using non-edges where possible (blossom matching)."""
    import networkx as nx

    adj = h.adjacency
    comp = nx.Graph()
    comp.add_nodes_from(range(h.n))
    comp.add_edges_from(
        (u, v) for u in range(h.n) for v in range(u + 1, h.n) if v not in adj[u]
    )
    pairs = sorted(tuple(sorted(p)) for p in nx.max_weight_matching(comp, maxcardinality=True))
    matched = {x for p in pairs for x in p}
    rest = [x for x in range(h.n) if x not in matched]
    # unmatched vertices are pairwise adjacent in h; these pairs repeat edges
    pairs += [(rest[i], rest[i + 1]) for i in range(0, len(rest), 2)]
    return pairs


def petersen_spanning_subgraph(h: Graph, k: int) -> EdgeSubset:
    """Spanning subgraph of a ``d``-regular ``h`` with degrees in ``{k-1, k}``.

    Even ``d``: peel ``(d - k) / 2`` two-factors. Odd ``d``: first add a perfect
    pairing of the vertices (possibly repeating edges), peel down to ``k``, then
    drop the added edges. For even ``d`` every degree is exactly ``k``.
    """
    d = regular_degree(h)
    if k < 2 or k % 2 or k > d:
        raise GraphError(f"need even k with 2 <= k <= d (got k={k}, d={d})")
    work_edges = list(h.edges)
    if d % 2:
        if h.n % 2:
            raise GraphError("odd degree with an odd number of vertices")
        work_edges += _complement_pairing(h)
    alive = list(range(len(work_edges)))
    for _ in range((len(work_edges) * 2 // h.n - k) // 2):
        g = Graph(h.n, tuple(work_edges[i] for i in alive), multigraph_allowed=True)
        f = two_factor(g)
        alive = [alive[j] for j in range(len(alive)) if j not in f]
    sub = h.subset(i for i in alive if i < h.m)
    degs = [len(EdgeSubset(h, sub.mask & inc)) for inc in h.incidence]
    if d % 2 == 0:
        assert all(x == k for x in degs), degs
    else:
        assert all(x in (k - 1, k) for x in degs), degs
    return sub


def choose_k(d: int) -> int | None:
    """Smallest even ``k >= d - 3 log2 d - 1``, or None when thinning does not apply."""
    if d < 2:
        raise GraphError("choose_k needs d >= 2")
    k = math.ceil(d - 3 * math.log2(d) - 1)
    if k % 2:
        k += 1
    if k <= 2 or k > d:
        return None
    return k


# ---------------------------------------------------------------- assignments


def random_assignment(
    h: Graph, support: EdgeSubset, d: int, seed: int | random.Random
) -> EdgeAssignment:
    """Uniform vectors of ``Z_2^d`` on ``support`` (edge-id order), others unassigned."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    vecs: list[int | None] = [None] * h.m
    for e in support:
        vecs[e] = rng.getrandbits(d) if d else 0
    return EdgeAssignment(h, d, tuple(vecs))


def _admissible(stars: list[gf2.Eliminator], x: int, y: int, rng: random.Random | None) -> int:
    if rng is None:
        return gf2.vector_outside_two_spans(stars[x], stars[y])
    # at least a quarter of all vectors lie outside two proper subspaces
    d = stars[x].dim
    while True:
        v = rng.getrandbits(d)
        if not stars[x].contains(v) and not stars[y].contains(v):
            return v


def greedy_complete(a: EdgeAssignment, rng: random.Random | None = None) -> EdgeAssignment:
    """Fill unassigned edges so every vertex star becomes a basis.

    Needs a ``dim``-regular host whose partial stars are independent. Edges are
    filled in id order with a vector outside both endpoint spans: the
    deterministic choice of :func:`gf2.vector_outside_two_spans`, or a uniform
    admissible vector when ``rng`` is given.
    """
    h = a.host
    d = regular_degree(h)
    if d != a.dim:
        raise ConstructionError(f"host degree {d} differs from dimension {a.dim}")
    stars = [gf2.Eliminator(d) for _ in range(h.n)]
    vecs = list(a.vectors)
    for e, v in enumerate(vecs):
        if v is None:
            continue
        for x in h.edges[e]:
            if not stars[x].add(v):
                raise StarDependentError(x)
    for e, v in enumerate(vecs):
        if v is not None:
            continue
        x, y = h.edges[e]
        new = _admissible(stars, x, y, rng)
        ok_x, ok_y = stars[x].add(new), stars[y].add(new)
        assert ok_x and ok_y
        vecs[e] = new
    return EdgeAssignment(h, d, tuple(vecs))


# ---------------------------------------------------------------- repair pipeline


@dataclass(frozen=True)
class ConstructParams:
    """Budgets and switches for :func:`repair_construct`.

    ``star_repair`` picks how a dependent vertex star in ``H'`` is handled:
    ``"complete"`` drops the offending vectors so the (randomized) completion
    refills them, ``"resample"`` redraws the whole star and retries.
    """

    seed: int = 0
    max_repair_rounds: int | None = None  # None means 10 * m
    max_outer_retries: int = 64
    thinning_override: int | None = None
    star_repair: str = "complete"

    def __post_init__(self) -> None:
        if self.max_outer_retries < 1 or (
            self.max_repair_rounds is not None and self.max_repair_rounds < 1
        ):
            raise ValueError("budgets must be positive")
        if self.star_repair not in ("complete", "resample"):
            raise ValueError(f"unknown star_repair {self.star_repair!r}")


@dataclass
class ConstructTrace:
    chosen_k: int | None = None
    thinned_degrees: tuple[int, int] = (0, 0)
    repair_rounds_used: int = 0
    resampled_edge_count: int = 0
    dropped_edge_count: int = 0
    attempts: int = 0
    outcome: str = "pending"
    certificate: tuple[int, CutCertificate] | None = field(default=None, repr=False)

    def as_dict(self) -> dict:
        out = {
            "chosen_k": self.chosen_k,
            "thinned_degrees": list(self.thinned_degrees),
            "repair_rounds_used": self.repair_rounds_used,
            "resampled_edge_count": self.resampled_edge_count,
            "dropped_edge_count": self.dropped_edge_count,
            "attempts": self.attempts,
            "outcome": self.outcome,
        }
        if self.certificate is not None:
            z, cert = self.certificate
            out["certificate"] = {"z": gf2.to_hex(z), "W": sorted(cert.W)}
        return out


def attempt_rng(seed: int, attempt: int) -> random.Random:
    return random.Random(f"graphcode:{seed}:{attempt}")


def _first_dependent_star(h: Graph, vecs: list[int | None], support: int, d: int) -> int | None:
    for x in range(h.n):
        elim = gf2.Eliminator(d)
        for e in iter_bits(h.incidence[x] & support):
            if not elim.add(vecs[e]):
                return x
    return None


def _drop_dependent(h: Graph, vecs: list[int | None], d: int) -> int:
    """Unassign, in edge-id order, every vector dependent at either endpoint."""
    stars = [gf2.Eliminator(d) for _ in range(h.n)]
    dropped = 0
    for e, v in enumerate(vecs):
        if v is None:
            continue
        x, y = h.edges[e]
        if stars[x].contains(v) or stars[y].contains(v):
            vecs[e] = None
            dropped += 1
        else:
            stars[x].add(v)
            stars[y].add(v)
    return dropped


def repair_construct(
    h: Graph, d: int, params: ConstructParams | None = None
) -> tuple[EdgeAssignment, ConstructTrace]:
    """Search for a ``verify_linear``-accepted dimension-``d`` assignment.

    Each attempt draws random vectors on the thinned support ``H'`` and then
    repeats one repair round at a time:

    1. make every ``H'`` star independent (see ``ConstructParams.star_repair``);
    2. complete to all of ``h`` with uniformly drawn admissible vectors;
    3. ask the verifier for a disconnected codeword ``z``; if there is one, with
       component ``W``, redraw the ``H'`` vectors on the cut of ``W`` and forget
       the completed (non-``H'``) vectors.

    An attempt ends after ``max_repair_rounds`` rounds and the next one starts
    on a fresh random stream. On exhaustion the trace has
    ``outcome == "budget_exhausted"`` and a certificate ``(z, cert)`` showing
    that the returned assignment fails.
    """
    params = params or ConstructParams()
    if regular_degree(h) != d:
        raise GraphError(f"host is not {d}-regular")
    if not is_connected(h):
        raise GraphError("host must be connected")
    trace = ConstructTrace()
    k = params.thinning_override if params.thinning_override is not None else choose_k(d)
    if k is None or k == d:
        support = h.full()
    else:
        support = petersen_spanning_subgraph(h, k)
        trace.chosen_k = k
    sup_deg = [len(EdgeSubset(h, support.mask & inc)) for inc in h.incidence]
    trace.thinned_degrees = (min(sup_deg), max(sup_deg))
    sup = support.mask
    budget = params.max_repair_rounds or 10 * h.m
    resample_stars = params.star_repair == "resample"

    best: EdgeAssignment | None = None
    for attempt in range(params.max_outer_retries):
        trace.attempts = attempt + 1
        rng = attempt_rng(params.seed, attempt)
        vecs = list(random_assignment(h, support, d, rng).vectors)
        rounds = 0
        while rounds < budget:
            rounds += 1
            if resample_stars:
                x = _first_dependent_star(h, vecs, sup, d)
                if x is not None:
                    redo = list(iter_bits(h.incidence[x] & sup))
                    for e in redo:
                        vecs[e] = rng.getrandbits(d)
                    trace.resampled_edge_count += len(redo)
                    continue
            else:
                trace.dropped_edge_count += _drop_dependent(h, vecs, d)
            total = greedy_complete(EdgeAssignment(h, d, tuple(vecs)), rng)
            found = find_violating_cut(total)
            if found is None:
                trace.repair_rounds_used += rounds
                trace.outcome = "verified"
                return total, trace
            best = total
            z, cert = found
            redo = list(iter_bits(cert.crossing.mask & sup))
            if not redo:
                # no H' edge on this cut; redraw the H' edges around W instead
                around = 0
                for w in cert.W:
                    around |= h.incidence[w]
                redo = list(iter_bits(around & sup))
            # refilled H' vectors persist; completed non-H' vectors are redrawn
            vecs = [v if sup >> e & 1 else None for e, v in enumerate(total.vectors)]
            for e in redo:
                vecs[e] = rng.getrandbits(d)
            trace.resampled_edge_count += len(redo)
        trace.repair_rounds_used += rounds
        if best is None:
            # stars never settled; zero-fill so the failure is still certified
            best = EdgeAssignment(h, d, tuple(0 if v is None else v for v in vecs))
        log.debug("attempt %d exhausted after %d rounds", attempt, rounds)

    assert best is not None
    trace.outcome = "budget_exhausted"
    trace.certificate = find_violating_cut(best)
    assert trace.certificate is not None
    return best, trace


# ---------------------------------------------------------------- tree packing


def _forest_path(adj: dict[int, list[tuple[int, int]]], src: int, dst: int) -> list[int] | None:
    """Edge ids on the forest path from ``src`` to ``dst``; None if disconnected."""
    if src == dst:
        return []
    prev: dict[int, tuple[int, int]] = {src: (-1, -1)}
    q = deque([src])
    while q:
        x = q.popleft()
        for y, e in adj.get(x, ()):
            if y not in prev:
                prev[y] = (x, e)
                if y == dst:
                    path = []
                    while y != src:
                        y, e2 = prev[y]
                        path.append(e2)
                    return path[::-1]
                q.append(y)
    return None


def pack_spanning_trees(h: Graph, k: int) -> list[EdgeSubset]:
    """``k`` pairwise edge-disjoint spanning trees by matroid partitioning.

    Each edge is offered in id order; shortest augmenting paths in the exchange
    graph (BFS) move edges between forests to make room.
    """
    n = h.n
    if k == 0:
        return []
    adj: list[dict[int, list[tuple[int, int]]]] = [{} for _ in range(k)]
    owner = [-1] * h.m
    target = k * (n - 1)
    placed = 0

    def link(i: int, e: int) -> None:
        u, v = h.edges[e]
        adj[i].setdefault(u, []).append((v, e))
        adj[i].setdefault(v, []).append((u, e))
        owner[e] = i

    def unlink(i: int, e: int) -> None:
        u, v = h.edges[e]
        adj[i][u].remove((v, e))
        adj[i][v].remove((u, e))
        owner[e] = -1

    for e0 in range(h.m):
        if placed == target:
            break
        label: dict[int, tuple[int, int] | None] = {e0: None}
        q = deque([e0])
        done = False
        while q and not done:
            x = q.popleft()
            u, v = h.edges[x]
            for i in range(k):
                if owner[x] == i:
                    continue
                path = _forest_path(adj[i], u, v)
                if path is None:
                    cur, tgt = x, i
                    while True:
                        old = owner[cur]
                        if old >= 0:
                            unlink(old, cur)
                        link(tgt, cur)
                        lab = label[cur]
                        if lab is None:
                            break
                        cur, tgt = lab[0], old
                    placed += 1
                    done = True
                    break
                for y in path:
                    if y not in label:
                        label[y] = (x, i)
                        q.append(y)
    if placed != target:
        raise ConstructionError(f"could only place {placed} of {target} tree edges")
    trees = [h.subset(e for e in range(h.m) if owner[e] == i) for i in range(k)]
    for t in trees:
        assert len(t) == n - 1 and is_connected_spanning(t)
    return trees


def tree_packing_assignment(h: Graph) -> EdgeAssignment:
    """Tree ``i`` of a maximum-guaranteed packing gets ``e_i``; other edges get 0."""
    if not is_connected(h):
        raise GraphError("tree packing needs a connected host")
    k = edge_connectivity(h) // 2
    trees = pack_spanning_trees(h, k)
    vecs = [0] * h.m
    for i, t in enumerate(trees):
        for e in t:
            vecs[e] = 1 << i
    return EdgeAssignment(h, k, tuple(vecs))


def tree_packing_code(h: Graph) -> ConnectivityCode:
    """All ``2**k`` unions of ``k = floor(k'(h) / 2)`` edge-disjoint spanning trees."""
    code = code_from_assignment(tree_packing_assignment(h))
    rep = verify_pairwise(code)
    if not rep.ok:
        raise ConstructionError("tree-union code failed verification")
    return code


# ---------------------------------------------------------------- cubic H_n


def h_n_code(n: int) -> ConnectivityCode:
    """``{empty, M0+M1, M0+M2, M1+M2}`` on ``three_matching_cubic(n)``, ``n`` odd.

    Generated linearly by ``M0 -> 11, M1 -> 01, M2 -> 10``.
    """
    if n < 3 or n % 2 == 0:
        raise GraphError(f"h_n_code needs odd n >= 3 (got {n})")
    h = three_matching_cubic(n)
    vecs = [0] * h.m
    for j, v in enumerate((0b11, 0b01, 0b10)):
        for e in matching_ids(n, j):
            vecs[e] = v
    code = code_from_assignment(EdgeAssignment(h, 2, tuple(vecs)))
    rep = verify_pairwise(code)
    if not rep.ok:
        raise ConstructionError("H_n code failed verification")
    return code


__all__ = [
    "ConstructParams",
    "ConstructTrace",
    "ConstructionError",
    "StarDependentError",
    "choose_k",
    "clique_assignment",
    "greedy_complete",
    "h_n_code",
    "pack_spanning_trees",
    "petersen_spanning_subgraph",
    "random_assignment",
    "repair_construct",
    "tree_packing_assignment",
    "tree_packing_code",
    "two_factor",
]
