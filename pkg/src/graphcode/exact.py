"""Exact ``m(H)`` for tiny hosts by maximum-clique search.

Any code stays a code after XOR with one of its members, so a maximum code can
be assumed to contain the empty set. The other members are then connected
spanning subsets, pairwise compatible when their symmetric difference is again
connected spanning: a maximum clique in that compatibility graph plus the empty
set is a maximum code.
"""

from __future__ import annotations

from dataclasses import dataclass

from .codes import ConnectivityCode, verify_pairwise
from .graph import EdgeSubset, Graph, edge_connectivity, is_connected, mask_is_connected_spanning

DEFAULT_EDGE_CAP = 16
COLOR_BOUND_MAX = 400


class EdgeCapError(RuntimeError):
    pass


@dataclass
class CompatibilitySearchState:
    host: Graph
    pool: list[int]
    best: list[int]
    nodes: int = 0
    edge_cap: int = DEFAULT_EDGE_CAP


def _color_bound(cands: list[int], good: bytearray) -> int:
    """Colours used by greedy colouring of ``cands``; bounds any clique inside."""
    classes: list[list[int]] = []
    for c in cands:
        for cls in classes:
            if all(not good[c ^ x] for x in cls):
                cls.append(c)
                break
        else:
            classes.append([c])
    return len(classes)


def exact_m(h: Graph, edge_cap: int = DEFAULT_EDGE_CAP) -> tuple[int, ConnectivityCode]:
    """Maximum code size and a witness containing the empty set.

    Candidates are explored in increasing mask order, so the returned witness is
    the lexicographically smallest maximum code (members sorted by mask).
    """
    if h.m > edge_cap:
        raise EdgeCapError(f"graph has {h.m} edges, above the cap of {edge_cap}")
    full = 1 << h.m
    good = bytearray(full)
    for mask in range(1, full):
        if mask_is_connected_spanning(h, mask):
            good[mask] = 1
    pool = [mask for mask in range(1, full) if good[mask]]
    state = CompatibilitySearchState(h, pool, [], edge_cap=edge_cap)
    # codes never exceed 2^k'; one slot is taken by the empty set
    ceiling = 2 ** edge_connectivity(h) - 1 if is_connected(h) and h.n > 1 else 0
    if h.n == 1:
        ceiling = 0

    def expand(clique: list[int], cands: list[int]) -> bool:
        state.nodes += 1
        if len(clique) > len(state.best):
            state.best = list(clique)
            if len(state.best) >= ceiling:
                return True
        if not cands:
            return False
        if len(cands) <= COLOR_BOUND_MAX and len(clique) + _color_bound(cands, good) <= len(
            state.best
        ):
            return False
        for pos, v in enumerate(cands):
            if len(clique) + len(cands) - pos <= len(state.best):
                return False
            rest = [u for u in cands[pos + 1 :] if good[v ^ u]]
            clique.append(v)
            if expand(clique, rest):
                return True
            clique.pop()
        return False

    if ceiling > 0:
        expand([], list(pool))
    members = [EdgeSubset(h, 0)] + [EdgeSubset(h, m) for m in state.best]
    code = ConnectivityCode(h, members)
    if len(members) > 1:
        assert verify_pairwise(code).ok
    return len(members), code


def exact_matches_bounds(h: Graph, edge_cap: int = DEFAULT_EDGE_CAP) -> bool:
    from .bounds import bound_report

    value, _ = exact_m(h, edge_cap)
    rep = bound_report(h)
    lower = rep.lower_value if rep.lower_value is not None else 1
    upper = rep.upper_value if rep.upper_value is not None else value
    return lower <= value <= upper
