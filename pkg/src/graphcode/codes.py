"""Connectivity codes: data model and the verification routes.

Three independent checks are provided and are expected to agree:

* :func:`verify_pairwise` tests every symmetric difference of a materialized code;
* :func:`verify_linear` tests the ``2**dim - 1`` nonzero codewords of a linear code;
* :func:`assignment_cut_condition_oracle` tests that every connected vertex set
  of at most half the vertices sees a spanning set of vectors on its cut.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence, overload

from . import gf2
from .graph import (
    DEFAULT_ENUM_CAP,
    CutCertificate,
    EdgeSubset,
    Graph,
    GraphError,
    components,
    crossing_mask,
    cut_edges,
    enumerate_connected_subsets,
    iter_bits,
    mask_is_connected_spanning,
)

MATERIALIZE_MAX_DIM = 20


class CodeError(ValueError):
    pass


class PartialAssignmentError(CodeError):
    pass


class CodewordCollisionError(CodeError):
    def __init__(self, u: int, u2: int):
        super().__init__(f"codewords of u={u:#x} and u'={u2:#x} coincide")
        self.pair = (u, u2)


@dataclass(frozen=True)
class EdgeAssignment:
    host: Graph = field(repr=False)
    dim: int
    vectors: tuple[int | None, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vectors", tuple(self.vectors))
        if len(self.vectors) != self.host.m:
            raise CodeError(f"assignment has {len(self.vectors)} entries for {self.host.m} edges")
        for v in self.vectors:
            if v is not None:
                gf2.check_vector(v, self.dim)

    @classmethod
    def empty(cls, host: Graph, dim: int) -> "EdgeAssignment":
        return cls(host, dim, (None,) * host.m)

    @property
    def is_total(self) -> bool:
        return all(v is not None for v in self.vectors)

    def assigned(self) -> EdgeSubset:
        return self.host.subset(i for i, v in enumerate(self.vectors) if v is not None)

    def star(self, vertex: int) -> list[int]:
        """Assigned vectors on edges incident with ``vertex``, by edge id."""
        return [
            self.vectors[i]
            for i in iter_bits(self.host.incidence[vertex])
            if self.vectors[i] is not None
        ]

    def basis_masks(self) -> tuple[int, ...]:
        """Edge mask of ``codeword(e_i)`` for each coordinate ``i``."""
        if not self.is_total:
            raise PartialAssignmentError("assignment is partial")
        out = [0] * self.dim
        for e, v in enumerate(self.vectors):
            for i in iter_bits(v):
                out[i] |= 1 << e
        return tuple(out)


@dataclass(frozen=True)
class Counterexample:
    cert: CutCertificate
    pair: tuple[int, int] | None = None
    z: int | None = None


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    counterexample: Counterexample | None
    checked: int

    def __post_init__(self) -> None:
        assert self.ok == (self.counterexample is None)


class LazyCodewords(Sequence[EdgeSubset]):
    """Codewords of a linear code, produced on demand in order of ``u``."""

    def __init__(self, a: EdgeAssignment):
        self.assignment = a
        self._basis = a.basis_masks()

    def __len__(self) -> int:
        return 1 << self.assignment.dim

    @overload
    def __getitem__(self, u: int) -> EdgeSubset: ...

    @overload
    def __getitem__(self, u: slice) -> list[EdgeSubset]: ...

    def __getitem__(self, u):
        if isinstance(u, slice):
            return [self[i] for i in range(*u.indices(len(self)))]
        if u < 0:
            u += len(self)
        if not 0 <= u < len(self):
            raise IndexError(u)
        return EdgeSubset(self.assignment.host, _combine(self._basis, u))

    def __iter__(self) -> Iterator[EdgeSubset]:
        for u in range(len(self)):
            yield self[u]


@dataclass(frozen=True)
class ConnectivityCode:
    host: Graph = field(repr=False)
    members: Sequence[EdgeSubset]
    linear_generator: EdgeAssignment | None = None

    def __len__(self) -> int:
        return len(self.members)

    def masks(self) -> list[int]:
        return [s.mask for s in self.members]


def _combine(basis: Sequence[int], u: int) -> int:
    mask = 0
    for i in iter_bits(u):
        mask ^= basis[i]
    return mask


def codeword(a: EdgeAssignment, u: int) -> EdgeSubset:
    """Edges ``e`` with ``<u, v(e)> = 1``."""
    if not a.is_total:
        raise PartialAssignmentError("codeword needs a total assignment")
    gf2.check_vector(u, a.dim)
    return EdgeSubset(a.host, _combine(a.basis_masks(), u))


def code_from_assignment(
    a: EdgeAssignment, materialize_max_dim: int = MATERIALIZE_MAX_DIM
) -> ConnectivityCode:
    """The linear code ``{codeword(u)}``; lazy above ``materialize_max_dim``.

    Two codewords coincide exactly when some nonzero ``z`` is orthogonal to every
    edge vector, so distinctness is a span check.
    """
    if not a.is_total:
        raise PartialAssignmentError("code_from_assignment needs a total assignment")
    z = gf2.nullspace_witness(list(a.vectors), a.dim)
    if z is not None:
        raise CodewordCollisionError(0, z)
    lazy = LazyCodewords(a)
    members: Sequence[EdgeSubset] = lazy if a.dim > materialize_max_dim else list(lazy)
    return ConnectivityCode(a.host, members, a)


def small_side_certificate(h: Graph, mask: int) -> CutCertificate:
    """Cut certificate for a disconnected ``(V, mask)``: its smallest component."""
    comps = components(h, mask)
    if len(comps) < 2:
        raise GraphError("edge set is connected spanning; no cut to certify")
    W = min(comps, key=lambda c: (len(c), c[0]))
    return cut_edges(h, W)


def verify_pairwise(c: ConnectivityCode) -> VerifyReport:
    h = c.host
    masks = c.masks()
    checked = 0
    for i in range(len(masks)):
        mi = masks[i]
        for j in range(i + 1, len(masks)):
            checked += 1
            diff = mi ^ masks[j]
            if not mask_is_connected_spanning(h, diff):
                cert = small_side_certificate(h, diff)
                return VerifyReport(False, Counterexample(cert, pair=(i, j)), checked)
    return VerifyReport(True, None, checked)


def _first_bad_z(args: tuple[Graph, tuple[int, ...], int, int]) -> tuple[int | None, int]:
    h, basis, lo, hi = args
    for z in range(lo, hi):
        mask = 0
        for i in iter_bits(z):
            mask ^= basis[i]
        if not mask_is_connected_spanning(h, mask):
            return z, z - lo + 1
    return None, hi - lo


def resolve_threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("GRAPHCODE_THREADS", "1") or 1)
    return max(1, threads)


def verify_linear(a: EdgeAssignment, threads: int | None = 1) -> VerifyReport:
    """Check every nonzero codeword is connected spanning.

    The counterexample is always the smallest failing ``z`` (as an integer),
    also when the range is split across worker processes.
    """
    basis = a.basis_masks()
    total = 1 << a.dim
    workers = resolve_threads(threads)
    if workers == 1 or total < 4096:
        z, checked = _first_bad_z((a.host, basis, 1, total))
    else:
        step = -(-(total - 1) // workers)
        chunks = [(a.host, basis, lo, min(lo + step, total)) for lo in range(1, total, step)]
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_first_bad_z, chunks))
        z, checked = None, 0
        for bad, cnt in results:
            checked += cnt
            if bad is not None:
                z = bad
                break
    if z is None:
        return VerifyReport(True, None, checked)
    cert = small_side_certificate(a.host, _combine(basis, z))
    return VerifyReport(False, Counterexample(cert, z=z), checked)


def assignment_cut_condition_oracle(
    a: EdgeAssignment, cap: int = DEFAULT_ENUM_CAP
) -> VerifyReport:
    """Check that cut vectors span for every connected ``W`` with ``|W| <= n/2``.

    Failing reports carry a ``z`` orthogonal to every vector on the cut.
    """
    if not a.is_total:
        raise PartialAssignmentError("oracle needs a total assignment")
    h = a.host
    checked = 0
    for W in enumerate_connected_subsets(h, h.n // 2, cap):
        checked += 1
        elim = gf2.Eliminator(a.dim)
        for e in iter_bits(crossing_mask(h, W)):
            elim.add(a.vectors[e])
            if elim.full():
                break
        if not elim.full():
            z = gf2.nullspace_witness(list(elim.pivots.values()), a.dim)
            return VerifyReport(False, Counterexample(cut_edges(h, W), z=z), checked)
    return VerifyReport(True, None, checked)


def find_violating_cut(
    a: EdgeAssignment, threads: int | None = 1
) -> tuple[int, CutCertificate] | None:
    rep = verify_linear(a, threads)
    if rep.ok:
        return None
    assert rep.counterexample is not None and rep.counterexample.z is not None
    return rep.counterexample.z, rep.counterexample.cert


def verify_code(c: ConnectivityCode, threads: int | None = 1) -> VerifyReport:
    """Linear check when a generator is attached, pairwise otherwise."""
    if c.linear_generator is not None:
        return verify_linear(c.linear_generator, threads)
    return verify_pairwise(c)
