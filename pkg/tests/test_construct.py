from __future__ import annotations

import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphcode import gf2
from graphcode.codes import EdgeAssignment, codeword, assignment_cut_condition_oracle, verify_linear, verify_pairwise
from graphcode.construct import (
    ConstructParams,
    StarDependentError,
    choose_k,
    clique_assignment,
    greedy_complete,
    h_n_code,
    pack_spanning_trees,
    petersen_spanning_subgraph,
    random_assignment,
    repair_construct,
    tree_packing_assignment,
    tree_packing_code,
    two_factor,
)
from graphcode.generators import (
    cartesian_product,
    clique_chain,
    complete_graph,
    cycle,
    cycle_power,
    random_regular,
    three_matching_cubic,
)
from graphcode.graph import EdgeSubset, GraphError, graph_stats
from oracles import connected_spanning, nx_graph

C3C3 = cartesian_product(cycle(3), cycle(3))


def degrees_in(h, sub):
    return [len(EdgeSubset(h, sub.mask & inc)) for inc in h.incidence]


def star_rank(a, x):
    return gf2.rank([a.vectors[e] for e in EdgeSubset(a.host, a.host.incidence[x])], a.dim)


@pytest.mark.parametrize("n", [2, 3, 6])
def test_clique_assignment_examples(n):
    a = clique_assignment(n)
    assert a.dim == n - 1
    rep = verify_linear(a)
    assert rep.ok and rep.checked == 2 ** (n - 1) - 1


def test_clique_codewords_are_complete_bipartite_cuts():
    a = clique_assignment(6)
    h = a.host
    for u in range(1, 32):
        side = {i for i in range(5) if u >> i & 1}
        expected = {e for e, (x, y) in enumerate(h.edges) if (x in side) != (y in side)}
        assert set(codeword(a, u)) == expected


def test_two_factor_examples():
    c5 = cycle(5)
    assert two_factor(c5) == c5.full()
    k5 = complete_graph(5)
    assert degrees_in(k5, two_factor(k5)) == [2] * 5
    sq = cycle_power(7, 2)
    f = two_factor(sq)
    rest = EdgeSubset(sq, sq.full_mask & ~f.mask)
    assert degrees_in(sq, f) == [2] * 7 and degrees_in(sq, rest) == [2] * 7
    with pytest.raises(GraphError):
        two_factor(complete_graph(4))


@pytest.mark.parametrize("n,d", [(n, d) for n in (8, 10, 12, 15) for d in (2, 4, 6)])
def test_two_factor_on_random_even_regular(n, d):
    h = random_regular(n, d, seed=n * 31 + d)
    assert degrees_in(h, two_factor(h)) == [2] * n


def test_petersen_examples():
    k5 = complete_graph(5)
    assert degrees_in(k5, petersen_spanning_subgraph(k5, 2)) == [2] * 5
    k4 = complete_graph(4)
    assert set(degrees_in(k4, petersen_spanning_subgraph(k4, 2))) <= {1, 2}
    h = random_regular(50, 10, 3)
    assert degrees_in(h, petersen_spanning_subgraph(h, 6)) == [6] * 50
    with pytest.raises(GraphError):
        petersen_spanning_subgraph(k5, 3)


@given(st.integers(6, 24), st.integers(3, 9), st.integers(0, 10**6), st.data())
@settings(max_examples=30)
def test_petersen_degrees_property(n, d, seed, data):
    if d >= n or n * d % 2:
        return
    h = random_regular(n, d, seed)
    k = data.draw(st.sampled_from([x for x in range(2, d + 1, 2)]))
    degs = degrees_in(h, petersen_spanning_subgraph(h, k))
    assert set(degs) <= ({k} if d % 2 == 0 else {k - 1, k})


def test_choose_k_examples():
    assert choose_k(16) == 4
    assert choose_k(1000) == 970
    assert choose_k(8) is None


def test_random_assignment_examples():
    k4 = complete_graph(4)
    empty = random_assignment(k4, k4.empty(), 3, 0)
    assert empty.vectors == (None,) * 6
    assert random_assignment(k4, k4.full(), 3, 5) == random_assignment(k4, k4.full(), 3, 5)


def test_random_star_independence_rate():
    k4 = complete_graph(4)
    hits = 0
    for seed in range(1000):
        a = random_assignment(k4, k4.full(), 3, seed)
        hits += star_rank(a, 0) == 3
    assert abs(hits / 1000 - 21 / 64) <= 0.05


@pytest.mark.parametrize("rng", [None, random.Random(3)])
def test_greedy_complete_examples(rng):
    k4 = complete_graph(4)
    a = greedy_complete(EdgeAssignment.empty(k4, 3), rng)
    assert a.is_total and all(star_rank(a, x) == 3 for x in range(4))
    assert greedy_complete(a, rng) == a
    ids = k4.edge_ids()
    vecs = [None] * 6
    vecs[ids[(0, 1)]] = vecs[ids[(0, 2)]] = 1
    with pytest.raises(StarDependentError) as info:
        greedy_complete(EdgeAssignment(k4, 3, tuple(vecs)), rng)
    assert info.value.vertex == 0


@given(st.integers(0, 10**6), st.integers(0, 2**18 - 1))
def test_greedy_complete_is_monotone(seed, keep):
    h = C3C3
    rng = random.Random(seed)
    full = greedy_complete(EdgeAssignment.empty(h, 4), rng)
    partial = tuple(v if keep >> e & 1 else None for e, v in enumerate(full.vectors))
    done = greedy_complete(EdgeAssignment(h, 4, partial), random.Random(seed + 1))
    assert all(p is None or p == v for p, v in zip(partial, done.vectors))
    assert all(star_rank(done, x) == 4 for x in range(h.n))


@pytest.mark.parametrize(
    "h,d,seed",
    [(complete_graph(7), 6, 1), (C3C3, 4, 0), (complete_graph(5), 4, 2), (cycle_power(9, 2), 4, 0), (cycle_power(7, 2), 4, 0)],
)
def test_repair_construct_success_double_checked(h, d, seed):
    a, trace = repair_construct(h, d, ConstructParams(seed=seed))
    assert trace.outcome == "verified"
    assert verify_linear(a).ok
    assert assignment_cut_condition_oracle(a).ok


def test_repair_construct_cycle_exhausts_with_certificate():
    c12 = cycle(12)
    a, trace = repair_construct(c12, 2, ConstructParams(seed=0, max_outer_retries=3))
    assert trace.outcome == "budget_exhausted"
    z, cert = trace.certificate
    assert cert.check()
    assert not connected_spanning(c12, codeword(a, z).mask)


@pytest.mark.parametrize("star_repair", ["complete", "resample"])
def test_repair_construct_deterministic(star_repair):
    params = ConstructParams(seed=4, star_repair=star_repair, max_outer_retries=2, max_repair_rounds=50)
    a1, t1 = repair_construct(C3C3, 4, params)
    a2, t2 = repair_construct(C3C3, 4, params)
    assert a1 == a2 and t1.as_dict() == t2.as_dict()


def test_repair_construct_with_thinning():
    h = random_regular(40, 16, 1)
    a, trace = repair_construct(h, 16, ConstructParams(seed=0, max_outer_retries=2))
    assert trace.chosen_k == 4 and trace.thinned_degrees == (4, 4)
    assert trace.outcome == "verified"


def test_construct_params_validation():
    with pytest.raises(ValueError):
        ConstructParams(max_outer_retries=0)
    with pytest.raises(ValueError):
        ConstructParams(star_repair="other")
    with pytest.raises(GraphError):
        repair_construct(cycle(6), 3)


@pytest.mark.parametrize(
    "h,k,size",
    [(complete_graph(5), 2, 4), (cycle(8), 1, 2), (clique_chain(11, 2), 2, 4), (C3C3, 2, 4)],
)
def test_tree_packing_examples(h, k, size):
    code = tree_packing_code(h)
    assert code.linear_generator.dim == k and len(code) == size
    trees = pack_spanning_trees(h, k)
    for t in trees:
        assert len(t) == h.n - 1 and connected_spanning(h, t.mask)
    for s, t in combinations(trees, 2):
        assert s.mask & t.mask == 0


@given(st.integers(5, 14), st.integers(0, 10**6))
@settings(max_examples=20)
def test_tree_packing_matches_nash_williams(n, seed):
    d = 4 if n * 5 % 2 else 5
    h = random_regular(n, d, seed)
    g = nx_graph(h)
    if not nx.is_connected(g):
        return
    a = tree_packing_assignment(h)
    assert a.dim == nx.edge_connectivity(nx.Graph(g)) // 2
    assert verify_linear(a).ok


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_h_n_code(n):
    code = h_n_code(n)
    h = code.host
    assert len(code) == 4 and verify_pairwise(code).ok
    for x, y in combinations(code.members, 2):
        g = nx.Graph([h.edges[e] for e in x ^ y])
        assert g.number_of_nodes() == 2 * n and nx.is_connected(g)
        assert all(deg == 2 for _, deg in g.degree())


def test_h_n_code_even_rejected():
    with pytest.raises(GraphError):
        h_n_code(4)
    assert graph_stats(three_matching_cubic(4)).is_regular
