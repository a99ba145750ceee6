"""Matrix serialization (alist and dense text) and a catalog of small codes."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .errors import AlistError, DomainError, UnknownCodeError
from .gf2core import (
    BinaryMatrix,
    LinearCode,
    bits_to_str,
    minimum_distance,
    nullspace_basis,
    rank,
)

Text = Union[str, bytes]


def _as_lines(text: Text) -> list[str]:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [ln.rstrip("\r") for ln in lines]


def _ints(line: str, lineno: int, kind: str) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise AlistError(kind, lineno, f"non-integer token in {line!r}") from None


# ---------------------------------------------------------------------------
# alist


def parse_alist(text: Text) -> BinaryMatrix:
    """Parse an alist description into an ``m x n`` matrix.

    Adjacency lines may be padded with zeros.  Row lists are checked against
    the column lists.
    """
    lines = _as_lines(text)

    # Adjacency lists of empty rows or columns are blank lines, so a line
    # past the end reads as blank and the degree checks report truncation.
    def line(i: int) -> str:
        return lines[i] if i < len(lines) else ""

    head = _ints(line(0), 1, "malformed-header")
    if len(head) != 2 or min(head) < 0:
        raise AlistError("malformed-header", 1, "expected 'n m'")
    n, m = head
    maxdeg = _ints(line(1), 2, "malformed-header")
    if len(maxdeg) != 2 or min(maxdeg) < 0:
        raise AlistError("malformed-header", 2, "expected two maximum degrees")
    col_deg = _ints(line(2), 3, "malformed-header")
    if len(col_deg) != n or any(x < 0 for x in col_deg):
        raise AlistError("malformed-header", 3, f"expected {n} column degrees")
    row_deg = _ints(line(3), 4, "malformed-header")
    if len(row_deg) != m or any(x < 0 for x in row_deg):
        raise AlistError("malformed-header", 4, f"expected {m} row degrees")
    if max(col_deg, default=0) != maxdeg[0]:
        raise AlistError("degree-mismatch", 2, "maximum column degree disagrees with line 3")
    if max(row_deg, default=0) != maxdeg[1]:
        raise AlistError("degree-mismatch", 2, "maximum row degree disagrees with line 4")

    rows = [0] * m
    for j in range(n):
        lineno = 5 + j
        idx = [x for x in _ints(line(4 + j), lineno, "malformed-row") if x != 0]
        if len(idx) != col_deg[j]:
            raise AlistError("degree-mismatch", lineno,
                             f"column {j + 1} lists {len(idx)} entries, degree is {col_deg[j]}")
        for x in idx:
            if not 1 <= x <= m:
                raise AlistError("index-out-of-range", lineno, f"row index {x} not in 1..{m}")
            if (rows[x - 1] >> j) & 1:
                raise AlistError("degree-mismatch", lineno, f"row index {x} repeated")
            rows[x - 1] |= 1 << j
    for i in range(m):
        lineno = 5 + n + i
        idx = [x for x in _ints(line(4 + n + i), lineno, "malformed-row") if x != 0]
        if len(idx) != row_deg[i]:
            raise AlistError("degree-mismatch", lineno,
                             f"row {i + 1} lists {len(idx)} entries, degree is {row_deg[i]}")
        mask = 0
        for x in idx:
            if not 1 <= x <= n:
                raise AlistError("index-out-of-range", lineno, f"column index {x} not in 1..{n}")
            mask |= 1 << (x - 1)
        if mask != rows[i]:
            raise AlistError("degree-mismatch", lineno,
                             f"row {i + 1} disagrees with the column lists")
    for i in range(4 + n + m, len(lines)):
        if lines[i].strip():
            raise AlistError("degree-mismatch", i + 1, "trailing content after row lists")
    return BinaryMatrix(tuple(rows), n)


def emit_alist(M: BinaryMatrix) -> bytes:
    """Canonical alist text: no padding, ascending indices, newline-terminated."""
    cols = M.columns()
    col_lists = [[i + 1 for i in range(M.rows) if (c >> i) & 1] for c in cols]
    row_lists = [[j + 1 for j in range(M.cols) if (r >> j) & 1] for r in M.data]
    col_deg = [len(x) for x in col_lists]
    row_deg = [len(x) for x in row_lists]
    out = [
        f"{M.cols} {M.rows}",
        f"{max(col_deg, default=0)} {max(row_deg, default=0)}",
        " ".join(map(str, col_deg)),
        " ".join(map(str, row_deg)),
    ]
    out += [" ".join(map(str, x)) for x in col_lists]
    out += [" ".join(map(str, x)) for x in row_lists]
    return ("\n".join(out) + "\n").encode("ascii")


# ---------------------------------------------------------------------------
# dense text

_DENSE_ROW = re.compile(r"^[01]+$")


def parse_dense(text: Text) -> BinaryMatrix:
    """One row per line of ``0``/``1`` characters; blank and ``#`` lines are ignored."""
    rows = []
    width = None
    for lineno, raw in enumerate(_as_lines(text), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        s = s.replace(" ", "")
        if not _DENSE_ROW.match(s):
            raise AlistError("malformed-row", lineno, f"not a 0/1 row: {raw!r}")
        if width is None:
            width = len(s)
        elif len(s) != width:
            raise AlistError("malformed-row", lineno, f"row has {len(s)} entries, expected {width}")
        rows.append(int(s[::-1], 2))
    return BinaryMatrix(tuple(rows), width or 0)


def emit_dense(M: BinaryMatrix) -> bytes:
    return "".join(bits_to_str(r, M.cols) + "\n" for r in M.data).encode("ascii")


def read_matrix(text: Text, fmt: str = "auto") -> BinaryMatrix:
    """Parse alist or dense text; ``auto`` treats a first line of bare bits as dense."""
    if fmt == "alist":
        return parse_alist(text)
    if fmt == "dense":
        return parse_dense(text)
    if fmt != "auto":
        raise DomainError(f"unknown matrix format {fmt!r}")
    for raw in _as_lines(text):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        return parse_dense(text) if _DENSE_ROW.match(s) else parse_alist(text)
    raise AlistError("malformed-header", 1, "empty input")


# ---------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class CodeCatalogEntry:
    name: str
    code: LinearCode
    provenance: str


GOLAY_POLY = 0b110001110101  # 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11

CATALOG_NAMES = (
    "repetition-<n>", "hamming-7-4", "hamming-15-11", "ext-hamming-8-4",
    "golay-23-12", "ext-golay-24-12", "universe-<n>", "margulis-params",
)


def _hamming_check(r: int) -> BinaryMatrix:
    n = (1 << r) - 1
    # column j holds the binary expansion of j + 1
    rows = []
    for bit in range(r):
        row = 0
        for j in range(n):
            if ((j + 1) >> bit) & 1:
                row |= 1 << j
        rows.append(row)
    return BinaryMatrix(tuple(rows), n)


def _golay_generator() -> BinaryMatrix:
    return BinaryMatrix(tuple(GOLAY_POLY << i for i in range(12)), 23)


def _extend_with_parity(G: BinaryMatrix) -> BinaryMatrix:
    n = G.cols
    return BinaryMatrix(tuple(r | ((r.bit_count() & 1) << n) for r in G.data), n + 1)


def _build(name: str) -> tuple[LinearCode, int, str]:
    """Return (code, declared d, provenance)."""
    m = re.fullmatch(r"repetition-(\d+)", name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise UnknownCodeError(name)
        dual = BinaryMatrix(tuple(1 | (1 << i) for i in range(1, n)), n)
        return LinearCode(n, 1, dual, name=name), n, "checks x0 + xi = 0 for i >= 1"
    m = re.fullmatch(r"universe-(\d+)", name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise UnknownCodeError(name)
        return LinearCode(n, n, BinaryMatrix((), n), name=name), 1, "all of GF(2)^n, empty dual"
    if name == "hamming-7-4":
        return LinearCode(7, 4, _hamming_check(3), name=name), 3, "columns are binary 1..7"
    if name == "hamming-15-11":
        return LinearCode(15, 11, _hamming_check(4), name=name), 3, "columns are binary 1..15"
    if name == "ext-hamming-8-4":
        H = _hamming_check(3)
        rows = tuple(H.data) + ((1 << 8) - 1,)
        return (LinearCode(8, 4, BinaryMatrix(rows, 8), name=name), 4,
                "Hamming [7,4] checks padded with a zero column, plus the all-ones check")
    if name == "golay-23-12":
        G = _golay_generator()
        return (LinearCode.from_generator(G, name=name), 7,
                "cyclic, generator polynomial 1+x^2+x^4+x^5+x^6+x^10+x^11")
    if name == "ext-golay-24-12":
        G = _extend_with_parity(_golay_generator())
        return LinearCode(24, 12, nullspace_basis(G), name=name), 8, "binary Golay code plus overall parity"
    if name == "margulis-params":
        return (LinearCode(2640, 1320, None, None, False, name=name), 0,
                "parameters only: length 2640, dimension 1320 (Margulis construction), d unverified")
    raise UnknownCodeError(f"unknown code {name!r}; known: {', '.join(CATALOG_NAMES)}")


@lru_cache(maxsize=None)
def catalog_entry(name: str) -> CodeCatalogEntry:
    """Build and verify a catalog code.

    Rank of the dual basis is checked by :class:`LinearCode`; the declared
    minimum distance is confirmed by enumeration when ``2^k`` is within
    budget, otherwise kept as an asserted lower bound.
    """
    code, d, provenance = _build(name)
    if code.dual_basis is None:
        return CodeCatalogEntry(name, code, provenance)
    if rank(code.dual_basis) != code.n - code.k:
        raise AssertionError(f"catalog code {name} has a deficient dual basis")
    if code.k <= 20:
        found = minimum_distance(code)
        if found != d:
            raise AssertionError(f"catalog code {name}: d = {found}, declared {d}")
        code = code.with_distance(d, True)
    else:
        code = code.with_distance(d, False)
    return CodeCatalogEntry(name, code, provenance)


def catalog(name: str) -> LinearCode:
    return catalog_entry(name).code
