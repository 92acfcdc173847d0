"""Linear algebra over GF(2) on int-packed vectors.

A vector of dimension ``dim`` is a non-negative int below ``2**dim``; bit ``i``
is coordinate ``i``. Python ints are unbounded, so no word-size split is needed.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class GF2Error(ValueError):
    pass


def check_vector(v: int, dim: int) -> int:
    if v < 0 or v >> dim:
        raise GF2Error(f"vector {v:#x} does not fit in dimension {dim}")
    return v


def dot(u: int, v: int) -> int:
    return (u & v).bit_count() & 1


def unit(i: int) -> int:
    return 1 << i


def to_hex(v: int) -> str:
    return format(v, "x")


def from_hex(text: str, dim: int | None = None) -> int:
    v = int(text, 16)
    if dim is not None:
        check_vector(v, dim)
    return v


class Eliminator:
    """Incremental row reduction keeping one reduced row per leading bit."""

    def __init__(self, dim: int, vectors: Iterable[int] = ()):
        self.dim = dim
        self.pivots: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: int) -> int:
        pivots = self.pivots
        while v:
            lead = v.bit_length() - 1
            row = pivots.get(lead)
            if row is None:
                return v
            v ^= row
        return 0

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def add(self, v: int) -> bool:
        """Insert ``v``; return False (and change nothing) if it is dependent."""
        check_vector(v, self.dim)
        r = self.reduce(v)
        if not r:
            return False
        self.pivots[r.bit_length() - 1] = r
        return True

    def full(self) -> bool:
        return self.rank == self.dim

    def outside(self) -> int:
        """Smallest unit vector not in the span; requires rank < dim."""
        for i in range(self.dim):
            if not self.contains(1 << i):
                return 1 << i
        raise GF2Error("span is the whole space")

    def copy(self) -> "Eliminator":
        e = Eliminator(self.dim)
        e.pivots = dict(self.pivots)
        return e


def rank(vectors: Sequence[int], dim: int) -> int:
    return Eliminator(dim, vectors).rank


def is_independent(vectors: Sequence[int], dim: int) -> bool:
    return rank(vectors, dim) == len(vectors)


def spans_full(vectors: Sequence[int], dim: int) -> bool:
    return rank(vectors, dim) == dim


def nullspace_witness(vectors: Sequence[int], dim: int) -> int | None:
    """A nonzero ``z`` orthogonal to every vector, or None if they span.

    Uses the reduced echelon form; ``z`` is built from the lowest free column.
    """
    rows = _rref(vectors, dim)
    pivot_cols = {r.bit_length() - 1: r for r in rows}
    for col in range(dim):
        if col in pivot_cols:
            continue
        z = 1 << col
        for lead, row in pivot_cols.items():
            if row >> col & 1:
                z |= 1 << lead
        return z
    return None


def _rref(vectors: Iterable[int], dim: int) -> list[int]:
    e = Eliminator(dim, vectors)
    rows = sorted(e.pivots.values(), reverse=True)
    # clear each leading bit from every other row
    for i, r in enumerate(rows):
        lead = 1 << (r.bit_length() - 1)
        for j in range(len(rows)):
            if j != i and rows[j] & lead:
                rows[j] ^= r
    return rows


def vector_outside_two_spans(
    a: Eliminator | Sequence[int], b: Eliminator | Sequence[int], dim: int | None = None
) -> int:
    """A vector in neither span; both spans must be proper subspaces.

    Accepts eliminators or plain vector lists (then ``dim`` is required).
    If ``x`` escapes ``a`` but lies in ``b`` and ``y`` escapes ``b`` but lies in
    ``a``, then ``x ^ y`` lies in neither.
    """
    if not isinstance(a, Eliminator) or not isinstance(b, Eliminator):
        if dim is None:
            raise GF2Error("dim is required for plain vector families")
        a = a if isinstance(a, Eliminator) else Eliminator(dim, a)
        b = b if isinstance(b, Eliminator) else Eliminator(dim, b)
    if a.dim != b.dim:
        raise GF2Error("dimension mismatch")
    if a.full() or b.full():
        raise GF2Error("one of the spans is already the whole space")
    x = a.outside()
    if not b.contains(x):
        v = x
    else:
        y = b.outside()
        v = y if not a.contains(y) else x ^ y
    assert not a.contains(v) and not b.contains(v)
    return v
