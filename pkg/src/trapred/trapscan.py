"""Detection of small trapping sets in a parity-check matrix.

An ``(s, t)``-trapping set is a set ``S`` of ``s`` columns whose restriction
has exactly ``t`` odd-weight rows, i.e. the XOR of the columns in ``S`` has
Hamming weight ``t``.  :func:`scan` reports every ``S`` with ``|S| <= a``
whose odd-row count is below ``b``.
"""

from __future__ import annotations

import itertools
import logging
import os
from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Optional

from .errors import DomainError
from .gf2core import BinaryMatrix, popcount

logger = logging.getLogger(__name__)

# Subset count above which scan() attaches a cost warning to its report.
SCAN_WARN_SUBSETS = int(os.environ.get("TRAPRED_SCAN_WARN_SUBSETS", str(10**7)))


@dataclass(frozen=True)
class TrapProfile:
    """Forbid ``(s, t)``-trapping sets for ``1 <= s <= a`` and ``0 <= t <= b - 1``."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a < 1:
            raise DomainError(f"a must be at least 1, got {self.a}")
        if self.b < 0:
            raise DomainError(f"b must be nonnegative, got {self.b}")

    def check_distance(self, d: Optional[int], exact: bool) -> None:
        """Raise if an exactly known minimum distance makes the profile unavoidable."""
        if d is not None and exact and self.a > d - 1:
            raise DomainError(f"a = {self.a} exceeds d - 1 = {d - 1}")


@dataclass
class TrapReport:
    violations: list[tuple[tuple[int, ...], int]]
    scanned_subsets: int
    cap: Optional[int] = None
    truncated: bool = False
    warnings: list[str] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "clean": self.clean,
            "violations": [
                {"columns": list(s), "odd_count": c} for s, c in self.violations
            ],
            "violation_count": len(self.violations),
            "scanned_subsets": self.scanned_subsets,
            "cap": self.cap,
            "truncated": self.truncated,
            "warnings": list(self.warnings),
        }


def revolving_door(n: int, t: int) -> Iterator[tuple[int, int]]:
    """Walk all ``t``-subsets of ``range(n)`` in revolving-door order.

    The walk starts at ``{0, ..., t-1}`` (not yielded) and each yielded pair
    ``(out, in)`` turns the current subset into the next one by removing
    ``out`` and inserting ``in``.  Exactly ``C(n, t) - 1`` pairs are produced.
    This is Knuth's Algorithm R (TAOCP 7.2.1.3) with 1-based ``c``.
    """
    if t < 0 or t > n:
        raise DomainError(f"cannot choose {t} of {n}")
    if t == 0 or t == n:
        return
    if t == 1:
        for j in range(1, n):
            yield j - 1, j
        return
    c = [0] + list(range(t)) + [n]
    while True:
        if t % 2:
            if c[1] + 1 < c[2]:
                c[1] += 1
                yield c[1] - 1, c[1]
                continue
            j = 2
            state = 4
        else:
            if c[1] > 0:
                c[1] -= 1
                yield c[1] + 1, c[1]
                continue
            j = 2
            state = 5
        while True:
            if state == 4:
                # c[j] == c[j-1] + 1
                if c[j] >= j:
                    out = c[j]
                    c[j] = c[j - 1]
                    c[j - 1] = j - 2
                    yield out, j - 2
                    break
                j += 1
                state = 5
            else:
                # c[j-1] == j - 2
                if c[j] + 1 < c[j + 1]:
                    c[j - 1] = c[j]
                    c[j] += 1
                    yield j - 2, c[j]
                    break
                j += 1
                if j > t:
                    return
                state = 4


def revolving_door_subsets(n: int, t: int) -> Iterator[frozenset[int]]:
    """All ``t``-subsets of ``range(n)`` in revolving-door order."""
    if t < 0 or t > n:
        raise DomainError(f"cannot choose {t} of {n}")
    cur = set(range(t))
    yield frozenset(cur)
    for out, inn in revolving_door(n, t):
        cur.remove(out)
        cur.add(inn)
        yield frozenset(cur)


def odd_row_count(H: BinaryMatrix, S: Iterable[int]) -> int:
    """Number of odd-weight rows of ``H`` restricted to the columns in ``S``."""
    S = list(S)
    if not S:
        raise DomainError("column set must be nonempty")
    acc = 0
    for j in S:
        if not 0 <= j < H.cols:
            raise IndexError(f"column {j} out of range for {H.cols} columns")
        acc ^= H.column(j)
    return popcount(acc)


def subset_count(n: int, a: int) -> int:
    return sum(comb(n, s) for s in range(1, min(a, n) + 1))


def _scan_size(cols: list[int], s: int, b: int, cap_left: Optional[int],
               out: list[tuple[tuple[int, ...], int]]) -> tuple[int, bool]:
    """Scan all ``s``-subsets; returns (visited, hit cap)."""
    n = len(cols)
    cur = list(range(s))
    acc = 0
    for j in cur:
        acc ^= cols[j]
    members = set(cur)
    visited = 1
    w = popcount(acc)
    if w < b:
        out.append((tuple(sorted(members)), w))
        if cap_left is not None and len(out) >= cap_left:
            return visited, True
    for o, i in revolving_door(n, s):
        acc ^= cols[o] ^ cols[i]
        members.remove(o)
        members.add(i)
        visited += 1
        w = popcount(acc)
        if w < b:
            out.append((tuple(sorted(members)), w))
            if cap_left is not None and len(out) >= cap_left:
                return visited, True
    return visited, False


def scan(H: BinaryMatrix, profile: TrapProfile, cap: Optional[int] = None) -> TrapReport:
    """Report every column subset ``S`` with ``|S| <= a`` and odd-row count ``<= b - 1``.

    With ``cap`` set the scan stops after that many violations and the report
    is marked truncated.  Violations are sorted by subset size, then
    lexicographically.
    """
    a, b = profile.a, profile.b
    if a > H.cols:
        raise DomainError(f"a = {a} exceeds the number of columns {H.cols}")
    if cap is not None and cap < 1:
        raise DomainError("cap must be positive")
    report = TrapReport([], 0, cap=cap)
    if b == 0:
        return report
    total = subset_count(H.cols, a)
    if total > SCAN_WARN_SUBSETS:
        msg = f"scanning {total} column subsets (threshold {SCAN_WARN_SUBSETS})"
        logger.warning(msg)
        report.warnings.append(msg)
    cols = H.columns()
    for s in range(1, a + 1):
        found: list[tuple[tuple[int, ...], int]] = []
        left = None if cap is None else cap - len(report.violations)
        visited, hit = _scan_size(cols, s, b, left, found)
        report.scanned_subsets += visited
        report.violations.extend(sorted(found))
        if hit:
            report.truncated = True
            break
    return report


def check_oa(M: BinaryMatrix, s: int) -> bool:
    """True iff ``M`` is an orthogonal array of strength ``s`` over {0, 1}."""
    if s < 1 or s > M.cols:
        raise DomainError(f"strength {s} outside 1..{M.cols}")
    if M.rows % (1 << s):
        return False
    want = M.rows >> s
    cols = M.columns()
    for S in itertools.combinations(range(M.cols), s):
        counts: Counter[int] = Counter()
        for i in range(M.rows):
            pattern = 0
            for pos, j in enumerate(S):
                pattern |= ((cols[j] >> i) & 1) << pos
            counts[pattern] += 1
        if len(counts) != (1 << s) or any(v != want for v in counts.values()):
            return False
    return True
