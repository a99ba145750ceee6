"""Linear algebra over GF(2) with rows packed into Python integers.

Bit ``j`` of a row integer is the entry in column ``j``.  Python integers are
arbitrary width, so a row XOR is a single word-parallel operation regardless
of the number of columns.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .errors import BudgetExceededError, DomainError

# log2 of the largest vector count an enumeration may produce.
ENUMERATION_LIMIT_BITS = int(os.environ.get("TRAPRED_ENUM_LIMIT_BITS", "24"))


def popcount(x: int) -> int:
    return x.bit_count()


@dataclass(frozen=True)
class BinaryMatrix:
    """An immutable ``rows x cols`` matrix over GF(2).

    ``data[i]`` holds row ``i`` as an integer whose bit ``j`` is column ``j``.
    """

    data: tuple[int, ...]
    cols: int

    def __post_init__(self) -> None:
        if self.cols < 0:
            raise DomainError("cols must be nonnegative")
        object.__setattr__(self, "data", tuple(int(r) for r in self.data))
        limit = 1 << self.cols
        for i, r in enumerate(self.data):
            if r < 0 or r >= limit:
                raise DomainError(f"row {i} has bits outside {self.cols} columns")

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.data), self.cols)

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "BinaryMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        packed = []
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise DomainError(f"row {i} has {len(row)} entries, expected {cols}")
            packed.append(pack_bits(row))
        return cls(tuple(packed), cols)

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BinaryMatrix":
        return cls((0,) * rows, cols)

    def to_lists(self) -> list[list[int]]:
        return [unpack_bits(r, self.cols) for r in self.data]

    def column(self, j: int) -> int:
        """Column ``j`` packed so that bit ``i`` is row ``i``."""
        if not 0 <= j < self.cols:
            raise IndexError(f"column {j} out of range for {self.cols} columns")
        out = 0
        for i, r in enumerate(self.data):
            if (r >> j) & 1:
                out |= 1 << i
        return out

    def columns(self) -> list[int]:
        """All columns packed as row-indexed bit vectors (a transpose)."""
        cols = [0] * self.cols
        for i, r in enumerate(self.data):
            bit = 1 << i
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= bit
                r ^= low
        return cols

    def append_rows(self, rows: Iterable[int]) -> "BinaryMatrix":
        return BinaryMatrix(self.data + tuple(rows), self.cols)

    def __str__(self) -> str:
        return "\n".join(bits_to_str(r, self.cols) for r in self.data)


def pack_bits(bits: Sequence[int]) -> int:
    out = 0
    for j, b in enumerate(bits):
        if b not in (0, 1):
            raise DomainError(f"entry {b!r} is not a bit")
        if b:
            out |= 1 << j
    return out


def unpack_bits(x: int, n: int) -> list[int]:
    return [(x >> j) & 1 for j in range(n)]


def bits_to_str(x: int, n: int) -> str:
    return "".join("1" if (x >> j) & 1 else "0" for j in range(n))


def str_to_bits(s: str) -> int:
    return pack_bits([int(c) for c in s])


def pivot_table(rows: Iterable[int]) -> dict[int, int]:
    """Reduce ``rows`` to a pivot table ``{top bit index: row}``."""
    pivots: dict[int, int] = {}
    for r in rows:
        r = reduce_vector(r, pivots)
        if r:
            pivots[r.bit_length() - 1] = r
    return pivots


def reduce_vector(v: int, pivots: dict[int, int]) -> int:
    """Reduce ``v`` against a pivot table; returns 0 iff ``v`` lies in its span.

    Pivot rows have distinct top bits, so a vector whose top bit is not a
    pivot cannot be in the span.
    """
    while v:
        p = pivots.get(v.bit_length() - 1)
        if p is None:
            return v
        v ^= p
    return v


def rank(M: BinaryMatrix) -> int:
    """Dimension of the row space of ``M``."""
    return len(pivot_table(M.data))


def rank_of_rows(rows: Iterable[int]) -> int:
    return len(pivot_table(rows))


def in_rowspace(v: int, M: BinaryMatrix) -> bool:
    return reduce_vector(v, pivot_table(M.data)) == 0


def rref(M: BinaryMatrix) -> tuple[list[int], list[int]]:
    """Reduced row echelon form.

    Returns ``(rows, pivot_cols)``; row ``i`` has a 1 in ``pivot_cols[i]`` and
    every other row has a 0 there.
    """
    work = list(M.data)
    pivot_cols: list[int] = []
    r = 0
    for col in range(M.cols):
        bit = 1 << col
        sel = next((i for i in range(r, len(work)) if work[i] & bit), None)
        if sel is None:
            continue
        work[r], work[sel] = work[sel], work[r]
        for i in range(len(work)):
            if i != r and work[i] & bit:
                work[i] ^= work[r]
        pivot_cols.append(col)
        r += 1
        if r == len(work):
            break
    return work[:r], pivot_cols


def nullspace_basis(M: BinaryMatrix) -> BinaryMatrix:
    """Basis of ``{x : M x^T = 0}`` as a ``(cols - rank) x cols`` matrix."""
    red, pivots = rref(M)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.cols):
        if free in pivot_set:
            continue
        v = 1 << free
        for row, pc in zip(red, pivots):
            if (row >> free) & 1:
                v |= 1 << pc
        basis.append(v)
    return BinaryMatrix(tuple(basis), M.cols)


def independent_basis(M: BinaryMatrix) -> BinaryMatrix:
    """A basis of the row space of ``M`` (reduced rows)."""
    red, _ = rref(M)
    return BinaryMatrix(tuple(red), M.cols)


def _check_budget(r: int, limit_bits: Optional[int]) -> None:
    limit = ENUMERATION_LIMIT_BITS if limit_bits is None else limit_bits
    if r > limit:
        raise BudgetExceededError(
            f"enumerating 2^{r} vectors exceeds the budget of 2^{limit}"
        )


def enumerate_rowspace(basis: BinaryMatrix, limit_bits: Optional[int] = None) -> Iterator[int]:
    """Yield every vector of the row space once, in Gray-code order.

    Consecutive outputs differ by exactly one basis row.  Rows of ``basis``
    must be independent.
    """
    r = basis.rows
    _check_budget(r, limit_bits)
    rows = basis.data
    v = 0
    yield v
    for i in range(1, 1 << r):
        # index of the bit flipped between gray(i-1) and gray(i)
        v ^= rows[(i & -i).bit_length() - 1]
        yield v


def sample_codeword(basis: BinaryMatrix, rng: random.Random) -> int:
    """Uniform element of the row space of ``basis`` (independent rows), zero included."""
    coeffs = rng.getrandbits(basis.rows) if basis.rows else 0
    v = 0
    rows = basis.data
    while coeffs:
        low = coeffs & -coeffs
        v ^= rows[low.bit_length() - 1]
        coeffs ^= low
    return v


class CodewordSampler:
    """Uniform sampler over a fixed row space.

    Draws the same coefficient stream as :func:`sample_codeword`, so results
    are identical for identical seeds; small spaces use a lookup table.
    """

    TABLE_BITS = 14

    def __init__(self, basis: BinaryMatrix) -> None:
        self.basis = basis
        self.dim = basis.rows
        self._table: Optional[list[int]] = None
        if self.dim <= self.TABLE_BITS:
            table = [0] * (1 << self.dim)
            for mask in range(1, 1 << self.dim):
                low = mask & -mask
                table[mask] = table[mask ^ low] ^ basis.data[low.bit_length() - 1]
            self._table = table

    def __call__(self, rng: random.Random) -> int:
        if self._table is not None:
            return self._table[rng.getrandbits(self.dim)] if self.dim else 0
        return sample_codeword(self.basis, rng)


@dataclass(frozen=True)
class LinearCode:
    """A binary ``[n, k, d]`` code held through a basis of its dual.

    ``dual_basis`` may be ``None`` for parameters-only entries, which can be
    used for bound computations but not by matrix-level routines.
    ``d_exact`` distinguishes a verified minimum distance from an asserted
    lower bound.
    """

    n: int
    k: int
    dual_basis: Optional[BinaryMatrix]
    d_known: Optional[int] = None
    d_exact: bool = False
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.n < 1 or not 0 <= self.k <= self.n:
            raise DomainError(f"invalid code parameters n={self.n}, k={self.k}")
        if self.dual_basis is not None:
            if self.dual_basis.cols != self.n:
                raise DomainError("dual basis width differs from n")
            if self.dual_basis.rows != self.n - self.k or rank(self.dual_basis) != self.n - self.k:
                raise DomainError("dual basis must have n-k independent rows")
        if self.d_known is not None:
            if self.d_known < 1 or (self.d_exact and self.k >= 1 and self.d_known > self.n):
                raise DomainError(f"invalid minimum distance {self.d_known}")

    @property
    def redundancy(self) -> int:
        return self.n - self.k

    @property
    def has_matrix(self) -> bool:
        return self.dual_basis is not None

    def require_matrix(self) -> BinaryMatrix:
        if self.dual_basis is None:
            raise DomainError(f"code {self.name or ''} has parameters only, no matrix")
        return self.dual_basis

    @classmethod
    def from_parity_check(cls, H: BinaryMatrix, name: str = "") -> "LinearCode":
        """Code defined as the null space of ``H`` (rows need not be independent)."""
        basis = independent_basis(H)
        return cls(H.cols, H.cols - basis.rows, basis, name=name)

    @classmethod
    def from_generator(cls, G: BinaryMatrix, name: str = "") -> "LinearCode":
        k = rank(G)
        return cls(G.cols, k, nullspace_basis(G), name=name)

    def with_distance(self, d: Optional[int], exact: bool) -> "LinearCode":
        return LinearCode(self.n, self.k, self.dual_basis, d, exact, self.name)


def minimum_distance(code: LinearCode, limit_bits: Optional[int] = None) -> int:
    """Smallest weight of a nonzero codeword, by enumerating the primal code."""
    if code.k < 1:
        raise DomainError("minimum distance undefined for k = 0")
    dual = code.require_matrix()
    _check_budget(code.k, limit_bits)
    gen = nullspace_basis(dual)
    best = code.n
    it = enumerate_rowspace(gen, limit_bits)
    next(it)
    for v in it:
        w = popcount(v)
        if w < best:
            best = w
            if best == 1:
                break
    return best
