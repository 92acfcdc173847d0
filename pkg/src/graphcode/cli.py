"""Command-line interface: ``graphcode {gen,construct,verify,bounds,exact,report}``.

Exit codes: 0 success/verified, 1 verified false (certificate written),
2 usage or input error, 3 budget or cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__, io
from .bounds import BoundOptions, bound_report
from .codes import (
    CodeError,
    ConnectivityCode,
    EdgeAssignment,
    VerifyReport,
    assignment_cut_condition_oracle,
    code_from_assignment,
    codeword,
    verify_linear,
    verify_pairwise,
)
from .construct import (
    ConstructParams,
    clique_assignment,
    repair_construct,
    tree_packing_assignment,
)
from .exact import DEFAULT_EDGE_CAP, EdgeCapError, exact_m
from .generators import (
    cartesian_product,
    clique_chain,
    complete_graph,
    cycle,
    cycle_power,
    random_regular,
    three_matching_cubic,
)
from .graph import EnumerationCapError, Graph, GraphError, graph_stats, is_connected

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
MAX_DIM = 24


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- gen


def _factor(token: str) -> Graph:
    kind, num = token[:1].lower(), token[1:]
    if not num.isdigit() or kind not in "kc":
        raise UsageError(f"product factor must look like k3 or c5, got {token!r}")
    return complete_graph(int(num)) if kind == "k" else cycle(int(num))


def generate(family: str, params: Sequence[str], seed: int) -> Graph:
    def ints(count: int) -> list[int]:
        if len(params) != count:
            raise UsageError(f"{family} takes {count} parameter(s)")
        try:
            return [int(p) for p in params]
        except ValueError:
            raise UsageError(f"{family} parameters must be integers") from None

    if family == "kn":
        return complete_graph(*ints(1))
    if family == "cycle":
        return cycle(*ints(1))
    if family == "product":
        if len(params) != 2:
            raise UsageError("product takes two factors, e.g. c3 c3")
        return cartesian_product(_factor(params[0]), _factor(params[1]))
    if family == "cyclepow":
        return cycle_power(*ints(2))
    if family == "hn":
        return three_matching_cubic(*ints(1))
    if family == "cliquechain":
        return clique_chain(*ints(2))
    if family == "random":
        n, d = ints(2)
        return random_regular(n, d, seed)
    raise UsageError(f"unknown family {family!r}")


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        io.write_text(path, text)


def cmd_gen(args: argparse.Namespace) -> int:
    h = generate(args.family, args.params, args.seed)
    _emit(io.format_graph(h), args.output)
    return EXIT_OK


# ---------------------------------------------------------------- construct / verify


def _check_dim(d: int, allow: bool) -> None:
    if d > MAX_DIM and not allow:
        raise UsageError(f"dimension {d} exceeds {MAX_DIM}; pass --allow-large-dim")


def _cert_path(base: str | None, explicit: str | None) -> str | None:
    if explicit:
        return explicit
    if base and base != "-":
        return base + ".cert.txt"
    return None


def _write_pair_certificate(h: Graph, masks: tuple[int, int], path: str | None) -> str | None:
    """A two-member code whose difference is disconnected; ``verify --code`` rejects it."""
    if path is None:
        return None
    from .graph import EdgeSubset

    io.write_code(path, ConnectivityCode(h, [EdgeSubset(h, masks[0]), EdgeSubset(h, masks[1])]))
    return path


def _report_json(rep: VerifyReport, kind: str, size: int) -> dict:
    out: dict = {"ok": rep.ok, "method": kind, "size": size, "checked": rep.checked}
    if rep.counterexample is not None:
        ce = rep.counterexample
        out["counterexample"] = {
            "W": sorted(ce.cert.W),
            "crossing": ce.cert.crossing.hex(),
            "pair": list(ce.pair) if ce.pair else None,
            "z": format(ce.z, "x") if ce.z is not None else None,
        }
    return out


def cmd_construct(args: argparse.Namespace) -> int:
    h = io.read_graph(args.graph)
    st = graph_stats(h)
    if args.method == "clique":
        if h.m != h.n * (h.n - 1) // 2:
            raise UsageError("--method clique needs a complete graph")
        ref = clique_assignment(h.n)
        ids = ref.host.edge_ids()
        a = EdgeAssignment(h, ref.dim, tuple(ref.vectors[ids[(min(e), max(e))]] for e in h.edges))
        trace = {"method": "clique", "outcome": "verified"}
        failed = None
    elif args.method == "trees":
        a = tree_packing_assignment(h)
        trace = {"method": "trees", "outcome": "verified"}
        failed = None
    else:
        if not st.is_regular:
            raise UsageError("repair construction needs a regular graph")
        d = args.dim if args.dim is not None else st.min_degree
        _check_dim(d, args.allow_large_dim)
        params = ConstructParams(
            seed=args.seed,
            max_repair_rounds=args.rounds,
            max_outer_retries=args.retries,
            thinning_override=args.thinning,
            star_repair=args.star_repair,
        )
        a, tr = repair_construct(h, d, params)
        trace = {"method": "repair", **tr.as_dict()}
        failed = tr.certificate
    _emit(io.format_assignment(a), args.output)
    code = 1 << a.dim
    summary = {"graph": args.graph, "dim": a.dim, "code_size": code, "seed": args.seed, "trace": trace}
    if failed is not None:
        z, cert = failed
        cert_file = _write_pair_certificate(
            h, (0, codeword(a, z).mask), _cert_path(args.output, args.cert)
        )
        summary["certificate_file"] = cert_file
        sys.stderr.write(io.dump_json(summary))
        return EXIT_BUDGET
    if args.trace:
        io.write_text(args.trace, io.dump_json(summary))
    sys.stderr.write(io.dump_json(summary))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    h = io.read_graph(args.graph)
    if (args.assignment is None) == (args.code is None):
        raise UsageError("give exactly one of --assignment or --code")
    if args.assignment is not None:
        a = io.read_assignment(args.assignment, h)
        _check_dim(a.dim, args.allow_large_dim)
        if not a.is_total:
            raise UsageError("assignment is partial; verification needs every edge assigned")
        method = args.method if args.method != "auto" else "linear"
        if method == "linear":
            rep = verify_linear(a, args.threads)
        elif method == "cut-oracle":
            rep = assignment_cut_condition_oracle(a)
        else:
            rep = verify_pairwise(code_from_assignment(a))
        size = 1 << a.dim
        source = args.assignment
    else:
        c = io.read_code(args.code, h)
        method = "pairwise"
        rep = verify_pairwise(c)
        size = len(c)
        source = args.code
    out = _report_json(rep, method, size)
    if not rep.ok:
        ce = rep.counterexample
        if ce.pair is not None and args.code is not None:
            masks = (c.members[ce.pair[0]].mask, c.members[ce.pair[1]].mask)
        elif ce.pair is not None:
            code = code_from_assignment(a)
            masks = (code.members[ce.pair[0]].mask, code.members[ce.pair[1]].mask)
        else:
            masks = (0, codeword(a, ce.z).mask)
        out["certificate_file"] = _write_pair_certificate(h, masks, _cert_path(source, args.cert))
    sys.stdout.write(io.dump_json(out))
    return EXIT_OK if rep.ok else EXIT_FALSE


# ---------------------------------------------------------------- bounds / exact / report


def _bound_options(args: argparse.Namespace, h: Graph) -> BoundOptions:
    assignment = io.read_assignment(args.assignment, h) if args.assignment else None
    codes = (io.read_code(args.code, h),) if args.code else ()
    family = None if args.family == "none" else args.family
    return BoundOptions(
        family=family,
        assignment=assignment,
        codes=codes,
        use_exact=args.exact,
        exact_edge_cap=args.edge_cap,
        spectral_c=args.spectral_c,
    )


def cmd_bounds(args: argparse.Namespace) -> int:
    h = io.read_graph(args.graph)
    rep = bound_report(h, _bound_options(args, h))
    out = {"graph": args.graph, "n": h.n, "m": h.m, **rep.as_dict()}
    _emit(io.dump_json(out), args.output)
    return EXIT_OK


def cmd_exact(args: argparse.Namespace) -> int:
    h = io.read_graph(args.graph)
    try:
        value, witness = exact_m(h, args.edge_cap)
    except EdgeCapError as exc:
        sys.stderr.write(f"graphcode: {exc}\n")
        return EXIT_BUDGET
    if args.output:
        io.write_code(args.output, witness)
    out = {"graph": args.graph, "n": h.n, "m": h.m, "exact_m": value, "witness": [s.hex() for s in witness.members]}
    sys.stdout.write(io.dump_json(out))
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    h = io.read_graph(args.graph)
    st = graph_stats(h)
    outdir = Path(args.outdir) if args.outdir else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
    report: dict = {
        "schema": io.REPORT_SCHEMA,
        "tool_version": __version__,
        "graph": args.graph,
        "n": h.n,
        "m": h.m,
        "seed": args.seed,
        "stats": st._asdict(),
        "certificates": {},
    }
    assignment = None
    status = EXIT_OK
    if st.is_regular and is_connected(h) and h.n > 1 and st.min_degree <= MAX_DIM:
        params = ConstructParams(seed=args.seed, max_outer_retries=args.retries, max_repair_rounds=args.rounds)
        a, tr = repair_construct(h, st.min_degree, params)
        report["construct"] = tr.as_dict()
        verdict = verify_linear(a, args.threads)
        report["verify"] = _report_json(verdict, "linear", 1 << a.dim)
        if verdict.ok:
            assignment = a
        else:
            status = EXIT_BUDGET
        if outdir:
            io.write_assignment(outdir / "assignment.txt", a)
            report["certificates"]["assignment"] = "assignment.txt"
    opts = BoundOptions(
        family=None if args.family == "none" else args.family,
        assignment=assignment,
        use_exact=args.exact,
        exact_edge_cap=args.edge_cap,
    )
    rep = bound_report(h, opts)
    report["bounds"] = rep.as_dict()
    if outdir:
        for entry in rep.entries:
            if entry.kind == "tree_packing":
                io.write_code(outdir / "tree_code.txt", entry.certificate)
                report["certificates"]["tree_packing"] = "tree_code.txt"
            if entry.kind == "exact_search":
                io.write_code(outdir / "exact_witness.txt", entry.certificate)
                report["certificates"]["exact_search"] = "exact_witness.txt"
    report["sidecar"] = {"wall_time_s": round(time.perf_counter() - started, 3)}
    _emit(io.dump_json(report), args.output)
    return status


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphcode", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"graphcode {__version__}")
    p.add_argument("--threads", type=int, default=None, help="worker processes (env GRAPHCODE_THREADS)")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a graph family")
    g.add_argument("family", choices=["kn", "cycle", "product", "cyclepow", "hn", "cliquechain", "random"])
    g.add_argument("params", nargs="*")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("construct", help="build an edge assignment")
    c.add_argument("graph")
    c.add_argument("-d", "--dim", type=int)
    c.add_argument("--method", choices=["repair", "clique", "trees"], default="repair")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--retries", type=int, default=64)
    c.add_argument("--rounds", type=int, default=None, help="repair rounds per attempt (default 10*m)")
    c.add_argument("--thinning", type=int, default=None, help="override the thinned degree k")
    c.add_argument("--star-repair", choices=["complete", "resample"], default="complete")
    c.add_argument("--allow-large-dim", action="store_true")
    c.add_argument("--cert")
    c.add_argument("--trace")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="verify a code or assignment")
    v.add_argument("graph")
    v.add_argument("--assignment")
    v.add_argument("--code")
    v.add_argument("--method", choices=["auto", "linear", "pairwise", "cut-oracle"], default="auto")
    v.add_argument("--allow-large-dim", action="store_true")
    v.add_argument("--cert")
    v.set_defaults(func=cmd_verify)

    for name, func, helptext in (
        ("bounds", cmd_bounds, "bound m(H)"),
        ("report", cmd_report, "bounds + construct + verify"),
    ):
        b = sub.add_parser(name, help=helptext)
        b.add_argument("graph")
        b.add_argument("--family", choices=["auto", "none"], default="auto")
        b.add_argument("--exact", action="store_true", help="also run the exact search")
        b.add_argument("--edge-cap", type=int, default=DEFAULT_EDGE_CAP)
        b.add_argument("-o", "--output")
        b.set_defaults(func=func)
        if name == "bounds":
            b.add_argument("--assignment")
            b.add_argument("--code")
            b.add_argument("--spectral-c", type=float)
        else:
            b.add_argument("--seed", type=int, default=0)
            b.add_argument("--retries", type=int, default=64)
            b.add_argument("--rounds", type=int, default=None)
            b.add_argument("--outdir")

    e = sub.add_parser("exact", help="exact m(H) for tiny graphs")
    e.add_argument("graph")
    e.add_argument("--edge-cap", type=int, default=DEFAULT_EDGE_CAP)
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_exact)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, io.FormatError, GraphError, CodeError, FileNotFoundError) as exc:
        sys.stderr.write(f"graphcode: {exc}\n")
        return EXIT_USAGE
    except EnumerationCapError as exc:
        sys.stderr.write(f"graphcode: {exc}\n")
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
