"""Text formats for graphs, assignments and codes, plus JSON reports.

graph:       ``n m`` then ``m`` lines ``u v``; edge id = line index
assignment:  ``m d`` then ``m`` lines of hex vectors or ``-``
code:        ``n m count`` then ``count`` lines of hex edge masks

Hex is lowercase, least significant bit = edge (or coordinate) 0. Lines
starting with ``#`` and blank lines are ignored.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterator

from .codes import ConnectivityCode, EdgeAssignment
from .graph import EdgeSubset, Graph, GraphError

REPORT_SCHEMA = "graphcode.report/1"


class FormatError(ValueError):
    def __init__(self, source: str, line: int, col: int, message: str):
        super().__init__(f"{source}:{line}:{col}: {message}")
        self.source, self.line, self.col = source, line, col


def _lines(text: str) -> Iterator[tuple[int, str]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            yield no, raw


def _col(raw: str, token_index: int) -> int:
    pos = 0
    for i, tok in enumerate(raw.split()):
        pos = raw.index(tok, pos)
        if i == token_index:
            return pos + 1
        pos += len(tok)
    return len(raw) + 1


def _ints(source: str, no: int, raw: str, count: int) -> list[int]:
    toks = raw.split()
    if len(toks) != count:
        raise FormatError(source, no, _col(raw, min(len(toks), count)), f"expected {count} fields, got {len(toks)}")
    out = []
    for i, tok in enumerate(toks):
        try:
            out.append(int(tok))
        except ValueError:
            raise FormatError(source, no, _col(raw, i), f"not an integer: {tok!r}") from None
    return out


def _hex(source: str, no: int, raw: str) -> int:
    tok = raw.strip()
    try:
        value = int(tok, 16)
    except ValueError:
        raise FormatError(source, no, _col(raw, 0), f"not a hex number: {tok!r}") from None
    if value < 0 or tok.lower() != tok or tok.startswith(("0x", "+", "-")):
        raise FormatError(source, no, _col(raw, 0), f"expected lowercase hex digits: {tok!r}")
    return value


def _header(source: str, lines: list[tuple[int, str]], count: int) -> list[int]:
    if not lines:
        raise FormatError(source, 1, 1, "missing header line")
    no, raw = lines[0]
    return _ints(source, no, raw, count)


def _body_length(source: str, lines: list[tuple[int, str]], expected: int) -> None:
    if len(lines) - 1 != expected:
        no = lines[-1][0] if lines else 1
        raise FormatError(source, no, 1, f"expected {expected} data lines, found {len(lines) - 1}")


def parse_graph(text: str, source: str = "<graph>") -> Graph:
    lines = list(_lines(text))
    n, m = _header(source, lines, 2)
    _body_length(source, lines, m)
    edges = []
    for no, raw in lines[1:]:
        u, v = _ints(source, no, raw, 2)
        edges.append((u, v))
    pairs = [(min(u, v), max(u, v)) for u, v in edges]
    multi = len(set(pairs)) != len(pairs)
    try:
        return Graph(n, tuple(edges), multigraph_allowed=multi)
    except GraphError as exc:
        raise FormatError(source, lines[0][0], 1, str(exc)) from None


def format_graph(h: Graph) -> str:
    return "".join([f"{h.n} {h.m}\n"] + [f"{u} {v}\n" for u, v in h.edges])


def parse_assignment(text: str, host: Graph, source: str = "<assignment>") -> EdgeAssignment:
    lines = list(_lines(text))
    m, d = _header(source, lines, 2)
    if m != host.m:
        raise FormatError(source, lines[0][0], 1, f"assignment is for {m} edges, graph has {host.m}")
    _body_length(source, lines, m)
    vecs: list[int | None] = []
    for no, raw in lines[1:]:
        if raw.strip() == "-":
            vecs.append(None)
            continue
        v = _hex(source, no, raw)
        if v >> d:
            raise FormatError(source, no, _col(raw, 0), f"vector exceeds dimension {d}")
        vecs.append(v)
    return EdgeAssignment(host, d, tuple(vecs))


def format_assignment(a: EdgeAssignment) -> str:
    body = ["-\n" if v is None else f"{v:x}\n" for v in a.vectors]
    return "".join([f"{a.host.m} {a.dim}\n"] + body)


def parse_code(text: str, host: Graph, source: str = "<code>") -> ConnectivityCode:
    lines = list(_lines(text))
    n, m, count = _header(source, lines, 3)
    if (n, m) != (host.n, host.m):
        raise FormatError(source, lines[0][0], 1, f"code is for n={n} m={m}, graph has n={host.n} m={host.m}")
    _body_length(source, lines, count)
    members = []
    for no, raw in lines[1:]:
        mask = _hex(source, no, raw)
        if mask >> m:
            raise FormatError(source, no, _col(raw, 0), "edge mask exceeds the edge count")
        members.append(EdgeSubset(host, mask))
    return ConnectivityCode(host, members)


def format_code(c: ConnectivityCode) -> str:
    return "".join([f"{c.host.n} {c.host.m} {len(c)}\n"] + [f"{s.mask:x}\n" for s in c.members])


def read_text(path: str | Path) -> tuple[str, str]:
    """Read a file; ``-`` means standard input."""
    if str(path) == "-":
        import sys

        return sys.stdin.read(), "<stdin>"
    p = Path(path)
    return p.read_text(), str(p)


def read_graph(path: str | Path) -> Graph:
    text, source = read_text(path)
    return parse_graph(text, source)


def read_assignment(path: str | Path, host: Graph) -> EdgeAssignment:
    text, source = read_text(path)
    return parse_assignment(text, host, source)


def read_code(path: str | Path, host: Graph) -> ConnectivityCode:
    text, source = read_text(path)
    return parse_code(text, host, source)


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text)


def write_graph(path: str | Path, h: Graph) -> None:
    write_text(path, format_graph(h))


def write_assignment(path: str | Path, a: EdgeAssignment) -> None:
    write_text(path, format_assignment(a))


def write_code(path: str | Path, c: ConnectivityCode) -> None:
    write_text(path, format_code(c))


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def deterministic_view(report: dict) -> dict:
    """The report without its ``sidecar`` (wall time is not reproducible)."""
    return {k: v for k, v in report.items() if k != "sidecar"}
