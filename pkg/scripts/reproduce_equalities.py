"""Print lower bound, upper bound and (when small enough) exact m(H) for the named hosts."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from graphcode.bounds import BoundOptions, bound_report
from graphcode.construct import ConstructParams, h_n_code, repair_construct
from graphcode.exact import exact_m
from graphcode.generators import (
    cartesian_product,
    clique_chain,
    complete_graph,
    cycle,
    cycle_power,
    three_matching_cubic,
)
from graphcode.graph import Graph, graph_stats


@dataclass(frozen=True)
class Config:
    seed: int = 0
    exact_edge_cap: int = 16
    # a dim-d assignment need not exist (m can be below 2^d), so keep the search short
    retries: int = 2
    rounds: int = 300


def hosts() -> list[tuple[str, Graph]]:
    out = [(f"K{n}", complete_graph(n)) for n in range(3, 11)]
    out += [
        ("C3xC3", cartesian_product(cycle(3), cycle(3))),
        ("C8", cycle(8)),
        ("C7^(2)", cycle_power(7, 2)),
        ("K3xC37", cartesian_product(complete_graph(3), cycle(37))),
        ("H(11,2)", clique_chain(11, 2)),
    ]
    out += [(f"H_{n}", three_matching_cubic(n)) for n in (3, 5, 7, 9)]
    return out


def row(name: str, h: Graph, cfg: Config) -> str:
    start = time.perf_counter()
    st = graph_stats(h)
    opts = {"family": "auto"}
    if st.is_regular and st.min_degree >= 3:
        a, trace = repair_construct(h, st.min_degree, ConstructParams(seed=cfg.seed, max_outer_retries=cfg.retries, max_repair_rounds=cfg.rounds))
        if trace.outcome == "verified":
            opts["assignment"] = a
    codes = ()
    if name.startswith("H_") and h.n // 2 % 2:
        codes = (h_n_code(h.n // 2),)
    rep = bound_report(h, BoundOptions(codes=codes, **opts))
    exact = rep.exact
    if exact is None and h.m <= cfg.exact_edge_cap:
        exact = exact_m(h, cfg.exact_edge_cap)[0]
    return (
        f"{name:<9} n={h.n:<4} m={h.m:<4} lower={rep.lower_value!s:<5} upper={rep.upper_value!s:<5} "
        f"exact={exact!s:<5} "
        f"({time.perf_counter() - start:.2f}s)"
    )


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--edge-cap", type=int, default=16)
    p.add_argument("--retries", type=int, default=2)
    p.add_argument("--rounds", type=int, default=300)
    args = p.parse_args()
    cfg = Config(args.seed, args.edge_cap, args.retries, args.rounds)
    for name, h in hosts():
        print(row(name, h, cfg), flush=True)


if __name__ == "__main__":
    main()
