from __future__ import annotations

from itertools import combinations

import pytest

from graphcode.bounds import (
    BoundOptions,
    DisconnectingFamily,
    InvalidCertificateError,
    bound_report,
    canonical_family,
    check_family,
    clique_chain_family,
    lemma31_threshold,
    lemma31_upper,
    lower_from_tree_packing,
    plotkin_cubic_upper,
    rung_family,
    spectral_expansion_lower,
    squared_cycle_family,
    upper_from_edge_connectivity,
)
from graphcode.codes import ConnectivityCode
from graphcode.construct import ConstructParams, repair_construct
from graphcode.exact import exact_m
from graphcode.generators import cartesian_product, clique_chain, complete_graph, cycle, cycle_power
from graphcode.graph import GraphError, Graph
from oracles import connected_spanning

C3C3 = cartesian_product(cycle(3), cycle(3))


def independent_family_check(fam: DisconnectingFamily) -> bool:
    h = fam.host
    for a, b in combinations(fam.sets, 2):
        if connected_spanning(h, h.full_mask & ~(a.mask | b.mask)):
            return False
    return all(len(s) <= fam.t for s in fam.sets)


def test_edge_connectivity_upper_examples():
    assert upper_from_edge_connectivity(C3C3) == 4
    assert upper_from_edge_connectivity(complete_graph(6)) == 5
    assert upper_from_edge_connectivity(cycle(9)) == 2


def test_lemma31_examples():
    fam = rung_family(3, 37)
    assert len(fam.sets) == 37 and all(len(s) == 3 for s in fam.sets)
    assert lemma31_upper(fam.host, fam) == 3
    c5 = DisconnectingFamily.of(cycle(5), [[i] for i in range(5)])
    assert lemma31_upper(c5.host, c5) == 1
    c3 = DisconnectingFamily.of(cycle(3), [[i] for i in range(3)])
    assert lemma31_upper(c3.host, c3) is None
    assert lemma31_threshold(3) == 36 and lemma31_threshold(2) == 10


def test_lemma31_rejects_invalid_family():
    k4 = complete_graph(4)
    fam = DisconnectingFamily.of(k4, [[0], [1], [2], [3], [4], [5]])
    with pytest.raises(InvalidCertificateError) as info:
        lemma31_upper(k4, fam)
    assert info.value.pair == (0, 1)
    oversized = DisconnectingFamily(cycle(5), (cycle(5).subset([0, 1]),), 1)
    with pytest.raises(InvalidCertificateError):
        check_family(cycle(5), oversized)


def test_rung_family_small_cases():
    t1 = rung_family(1, 5)
    assert [sorted(s) for s in t1.sets] == [[i] for i in range(5)]
    assert independent_family_check(rung_family(2, 12))


@pytest.mark.parametrize("t,s", [(t, s) for t in (1, 2, 3) for s in (3, 7, 12, 20, 40)])
def test_rung_family_valid(t, s):
    fam = rung_family(t, s)
    check_family(fam.host, fam)
    assert independent_family_check(fam)


@pytest.mark.parametrize("s", [7, 8, 12, 25, 40])
def test_squared_cycle_family_valid(s):
    fam = squared_cycle_family(s)
    assert len(fam.sets) == s and fam.t == 3
    check_family(fam.host, fam)
    assert independent_family_check(fam)


def test_squared_cycle_family_threshold():
    fam = squared_cycle_family(37)
    assert lemma31_upper(fam.host, fam) == 3
    with pytest.raises(GraphError):
        squared_cycle_family(6)


@pytest.mark.parametrize("s,k", [(s, k) for k in (1, 2, 3) for s in (3, 5, 10, 11, 20, 40) if (s + 1) * (2 * k + 1) <= 300])
def test_clique_chain_family_valid(s, k):
    fam = clique_chain_family(s, k)
    assert independent_family_check(fam)


def test_clique_chain_family_examples():
    fam = clique_chain_family(11, 2)
    assert lemma31_upper(fam.host, fam) == 2
    fam = clique_chain_family(10, 2)
    assert lemma31_upper(fam.host, fam) is None
    assert independent_family_check(clique_chain_family(5, 1))


def test_plotkin_examples():
    assert plotkin_cubic_upper(8) == 4
    assert plotkin_cubic_upper(6) == 6
    assert plotkin_cubic_upper(4) == 8
    with pytest.raises(GraphError):
        plotkin_cubic_upper(7)


def test_plotkin_is_four_from_eight_to_hundred():
    assert all(plotkin_cubic_upper(n) == 4 for n in range(8, 101, 2))


def test_tree_packing_lower_examples():
    assert lower_from_tree_packing(complete_graph(5))[0] == 2
    assert lower_from_tree_packing(cycle(10))[0] == 1
    assert lower_from_tree_packing(clique_chain(11, 2))[0] == 2


def test_spectral_examples():
    assert spectral_expansion_lower(C3C3, 0.5)
    assert not spectral_expansion_lower(cycle(20), 0.1)
    assert spectral_expansion_lower(complete_graph(8), 1.0)


def test_bound_report_torus_exact():
    a, trace = repair_construct(C3C3, 4, ConstructParams(seed=0))
    assert trace.outcome == "verified"
    rep = bound_report(C3C3, BoundOptions(assignment=a))
    assert rep.exact == 16 and rep.lower_log2 == 4 and rep.upper_log2 == 4


def test_bound_report_clique_chain_exact():
    h = clique_chain(11, 2)
    rep = bound_report(h, BoundOptions(family=clique_chain_family(11, 2)))
    assert rep.exact == 4
    assert bound_report(h, BoundOptions(family="auto")).exact == 4


def test_bound_report_cycle():
    rep = bound_report(cycle(8))
    assert (rep.lower_value, rep.upper_value, rep.exact) == (2, 4, None)
    assert bound_report(cycle(8), BoundOptions(use_exact=True)).exact == 2


def test_canonical_family_recognizes_relabelled_edges():
    h = clique_chain(11, 2)
    shuffled = Graph(h.n, tuple(reversed(h.edges)))
    fam = canonical_family(shuffled)
    assert fam is not None and lemma31_upper(shuffled, fam) == 2
    assert canonical_family(complete_graph(5)) is None
    assert canonical_family(cycle_power(40, 2)).name == "squared_cycle(40)"


def test_explicit_code_lower():
    k3 = complete_graph(3)
    code = ConnectivityCode(k3, [k3.empty(), k3.subset([0, 1]), k3.subset([1, 2])])
    rep = bound_report(k3, BoundOptions(codes=(code,)))
    kinds = {e.kind for e in rep.entries}
    assert "explicit_code" in kinds and rep.lower_log2 == 1


@pytest.mark.parametrize(
    "h",
    [complete_graph(3), complete_graph(4), cycle(5), cycle(6), cycle_power(7, 2), cartesian_product(complete_graph(2), cycle(4))],
)
def test_bounds_sandwich_exact(h):
    rep = bound_report(h, BoundOptions(family="auto"))
    value, _ = exact_m(h)
    assert rep.lower_value <= value <= rep.upper_value
