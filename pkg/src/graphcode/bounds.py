"""Upper and lower bounds on the maximum connectivity-code size ``m(H)``.

Exponential bounds are kept as base-2 logarithms; the cubic Plotkin bound is a
plain integer. Every certificate is re-checked here rather than trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from .codes import ConnectivityCode, EdgeAssignment, verify_linear, verify_pairwise
from .construct import tree_packing_code
from .generators import (
    cartesian_product,
    clique_chain,
    clique_chain_matching_ids,
    complete_graph,
    cycle,
    cycle_power,
)
from .graph import (
    EdgeSubset,
    Graph,
    GraphError,
    edge_connectivity,
    graph_stats,
    is_connected,
    mask_is_connected_spanning,
    second_eigenvalue,
)


class InvalidCertificateError(ValueError):
    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.pair = pair


@dataclass(frozen=True)
class DisconnectingFamily:
    host: Graph = field(repr=False)
    sets: tuple[EdgeSubset, ...]
    t: int
    name: str = ""

    @classmethod
    def of(cls, host: Graph, id_sets, name: str = "") -> "DisconnectingFamily":
        sets = tuple(host.subset(ids) for ids in id_sets)
        return cls(host, sets, max((len(s) for s in sets), default=0), name)


def lemma31_threshold(t: int) -> int:
    """Family size must exceed ``(2^t + 1) * 2^(t-1)``."""
    return (2**t + 1) * 2 ** (t - 1) if t >= 1 else 1


def check_family(h: Graph, fam: DisconnectingFamily) -> None:
    """Raise unless every set has at most ``t`` edges and every pairwise union disconnects."""
    for i, s in enumerate(fam.sets):
        if s.host != h:
            raise InvalidCertificateError(f"set {i} lives on another host")
        if len(s) > fam.t:
            raise InvalidCertificateError(f"set {i} has {len(s)} > t={fam.t} edges")
    full = h.full_mask
    masks = [s.mask for s in fam.sets]
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if mask_is_connected_spanning(h, full & ~(masks[i] | masks[j])):
                raise InvalidCertificateError(
                    f"removing sets {i} and {j} leaves the graph connected", (i, j)
                )


def lemma31_upper(h: Graph, fam: DisconnectingFamily) -> int | None:
    """``t`` (so ``m(h) <= 2^t``) if the family is valid and large enough, else None.

    The family is always validated first; an invalid family raises
    :class:`InvalidCertificateError` naming the offending pair.
    """
    check_family(h, fam)
    if len(fam.sets) > lemma31_threshold(fam.t):
        return fam.t
    return None


def upper_from_edge_connectivity(h: Graph) -> int:
    return edge_connectivity(h)


def rung_family(t: int, s: int) -> DisconnectingFamily:
    """On ``K_t x C_s``: the ``t`` edges between cycle layers ``i`` and ``i+1``."""
    if s < 3 or t < 1:
        raise GraphError("rung_family needs t >= 1 and s >= 3")
    host = cartesian_product(complete_graph(t), cycle(s))
    # fibre a of C_s holds ids a*s .. a*s + s - 1 and edge i joins layers i, i+1
    return DisconnectingFamily.of(
        host, [[a * s + i for a in range(t)] for i in range(s)], f"rung({t},{s})"
    )


def squared_cycle_family(s: int) -> DisconnectingFamily:
    """On ``C_s^(2)``: for each cycle edge ``{i, i+1}`` the three edges whose
    unique shortest cycle path uses it: ``{i,i+1}, {i-1,i+1}, {i,i+2}``."""
    if s < 7:
        raise GraphError("squared_cycle_family needs s >= 7")
    host = cycle_power(s, 2)
    ids = host.edge_ids()

    def eid(u: int, v: int) -> int:
        u, v = u % s, v % s
        return ids[(min(u, v), max(u, v))]

    return DisconnectingFamily.of(
        host,
        [[eid(i, i + 1), eid(i - 1, i + 1), eid(i, i + 2)] for i in range(s)],
        f"squared_cycle({s})",
    )


def clique_chain_family(s: int, k: int) -> DisconnectingFamily:
    host = clique_chain(s, k)
    return DisconnectingFamily.of(
        host, [list(clique_chain_matching_ids(s, k, i)) for i in range(s)], f"clique_chain({s},{k})"
    )


def plotkin_cubic_upper(n: int) -> int:
    """``2 * floor(n / (2(n-1) + 1 - 3n/2))`` for a cubic graph on ``n`` vertices."""
    if n < 4 or n % 2:
        raise GraphError("a cubic graph needs an even n >= 4")
    denom2 = 4 * (n - 1) + 2 - 3 * n  # twice the denominator, kept integral
    return 2 * ((2 * n) // denom2)


def lower_from_tree_packing(h: Graph) -> tuple[int, ConnectivityCode]:
    code = tree_packing_code(h)
    k = code.linear_generator.dim if code.linear_generator else 0
    return k, code


def spectral_expansion_lower(h: Graph, c: float) -> bool:
    """Whether the second eigenvalue satisfies ``lambda <= d - 2c log2 d``.

    A sufficient condition for the expansion hypothesis with constant ``c``;
    it does not certify ``m(h)`` on its own.
    """
    st = graph_stats(h)
    if not st.is_regular:
        raise GraphError("spectral condition needs a regular graph")
    d = st.min_degree
    lam = second_eigenvalue(h)
    return lam <= d - 2 * c * math.log2(d) + 1e-9


def canonical_family(h: Graph) -> DisconnectingFamily | None:
    """Recognize ``h`` as a generated family member and return its family.

    Matching is by edge set, so ids of ``h`` need not follow the generator's order.
    """
    st = graph_stats(h)
    pairs = set(h.edge_ids())
    candidates: list[DisconnectingFamily] = []
    if st.is_regular and st.min_degree >= 2:
        t = st.min_degree - 1
        if h.n % t == 0 and h.n // t >= 3:
            candidates.append(rung_family(t, h.n // t))
        if st.min_degree == 4 and h.n >= 7:
            candidates.append(squared_cycle_family(h.n))
    if st.min_degree % 2 == 0 and st.min_degree >= 2:
        k = st.min_degree // 2
        q = 2 * k + 1
        if h.n % q == 0 and h.n // q >= 3:
            candidates.append(clique_chain_family(h.n // q, k))
    for fam in candidates:
        if fam.host.n == h.n and set(fam.host.edge_ids()) == pairs and len(pairs) == h.m:
            return _transplant(fam, h)
    return None


def _transplant(fam: DisconnectingFamily, h: Graph) -> DisconnectingFamily:
    ids = h.edge_ids()
    src = fam.host.edges
    sets = []
    for s in fam.sets:
        sets.append([ids[(min(src[e]), max(src[e]))] for e in s])
    return DisconnectingFamily.of(h, sets, fam.name)


@dataclass
class BoundEntry:
    kind: str
    value_log2: int | None
    value: int | None
    certificate: Any = field(default=None, repr=False)
    side: str = "upper"

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "side": self.side,
            "value_log2": self.value_log2,
            "value": self.value,
        }


@dataclass
class BoundReport:
    lower_log2: int | None = None
    upper_log2: int | None = None
    upper_value: int | None = None
    entries: list[BoundEntry] = field(default_factory=list)
    exact: int | None = None

    def add(self, entry: BoundEntry) -> None:
        self.entries.append(entry)
        if entry.side == "lower":
            if self.lower_log2 is None or entry.value_log2 > self.lower_log2:
                self.lower_log2 = entry.value_log2
        elif entry.side == "upper":
            value = entry.value if entry.value is not None else 2**entry.value_log2
            if self.upper_value is None or value < self.upper_value:
                self.upper_value = value
            log2 = entry.value_log2 if entry.value_log2 is not None else value.bit_length() - 1
            if self.upper_log2 is None or log2 < self.upper_log2:
                self.upper_log2 = log2
        assert self.lower_log2 is None or self.upper_log2 is None or (
            self.lower_log2 <= self.upper_log2
        )

    @property
    def lower_value(self) -> int | None:
        return None if self.lower_log2 is None else 2**self.lower_log2

    def as_dict(self) -> dict:
        return {
            "lower_log2": self.lower_log2,
            "upper_log2": self.upper_log2,
            "lower": self.lower_value,
            "upper": self.upper_value,
            "exact": self.exact,
            "bounds": [e.as_dict() for e in self.entries],
        }


@dataclass(frozen=True)
class BoundOptions:
    family: DisconnectingFamily | str | None = None  # "auto" recognizes generated hosts
    assignment: EdgeAssignment | None = None
    codes: tuple[ConnectivityCode, ...] = ()
    use_exact: bool = False
    exact_edge_cap: int = 16
    spectral_c: float | None = None


def bound_report(h: Graph, options: BoundOptions | None = None) -> BoundReport:
    """Aggregate every applicable bound; ``exact`` is set when they meet."""
    options = options or BoundOptions()
    rep = BoundReport()
    connected = is_connected(h)
    kp = upper_from_edge_connectivity(h)
    rep.add(BoundEntry("edge_connectivity", kp, 2**kp))

    fam = options.family
    if fam == "auto":
        fam = canonical_family(h)
    if isinstance(fam, DisconnectingFamily):
        t = lemma31_upper(h, fam)
        if t is not None:
            rep.add(BoundEntry("disconnecting_family", t, 2**t, fam))

    st = graph_stats(h)
    if st.is_regular and st.min_degree == 3 and h.n >= 4:
        p = plotkin_cubic_upper(h.n)
        rep.add(BoundEntry("plotkin_cubic", None, p))

    if connected:
        k, code = lower_from_tree_packing(h)
        rep.add(BoundEntry("tree_packing", k, 2**k, code, side="lower"))
    if options.assignment is not None:
        if verify_linear(options.assignment).ok:
            dim = options.assignment.dim
            rep.add(BoundEntry("linear_assignment", dim, 2**dim, options.assignment, "lower"))
    for code in options.codes:
        if len(code) >= 1 and verify_pairwise(code).ok:
            size = len(code)
            rep.add(BoundEntry("explicit_code", size.bit_length() - 1, size, code, "lower"))

    if options.spectral_c is not None and st.is_regular and st.min_degree >= 2:
        ok = spectral_expansion_lower(h, options.spectral_c)
        rep.entries.append(BoundEntry("spectral_condition", int(ok), None, side="advisory"))

    if options.use_exact and h.m <= options.exact_edge_cap:
        from .exact import exact_m

        value, witness = exact_m(h, options.exact_edge_cap)
        rep.exact = value
        rep.entries.append(BoundEntry("exact_search", None, value, witness, side="exact"))
    elif rep.lower_log2 is not None and rep.upper_value == rep.lower_value:
        rep.exact = rep.lower_value
    return rep
