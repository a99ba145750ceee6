"""Brute-force reference computations used as test oracles.

Everything here enumerates directly and shares no code with the package
beyond the BinaryMatrix container, so agreement is meaningful.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def span(rows):
    """Set of all XOR combinations of ``rows``."""
    out = {0}
    for r in rows:
        out |= {x ^ r for x in out}
    return out


def brute_rank(rows) -> int:
    return len(span(rows)).bit_length() - 1


def parity(x: int) -> int:
    return bin(x).count("1") & 1


def odd_rows(rows, S) -> int:
    """Odd-weight rows of the column restriction, counted row by row."""
    return sum(sum((r >> j) & 1 for j in S) % 2 for r in rows)


def naive_violations(rows, n, a, b):
    """Every subset of size <= a with fewer than b odd rows, sorted by size then lex."""
    out = []
    for s in range(1, a + 1):
        for S in itertools.combinations(range(n), s):
            c = odd_rows(rows, S)
            if c < b:
                out.append((S, c))
    return out


def brute_min_distance(H_rows, n) -> int:
    best = None
    for x in range(1, 1 << n):
        if all(parity(r & x) == 0 for r in H_rows):
            w = bin(x).count("1")
            best = w if best is None else min(best, w)
    return best


def rank_frequencies(m: int, t: int) -> dict[int, Fraction]:
    """Exact rank law of t uniform vectors of F_2^m by full enumeration."""
    counts: dict[int, int] = {}
    for rows in itertools.product(range(1 << m), repeat=t):
        r = brute_rank(rows)
        counts[r] = counts.get(r, 0) + 1
    total = 1 << (m * t)
    return {r: Fraction(c, total) for r, c in counts.items()}


def count_subspaces(x: int, y: int) -> int:
    spaces = set()
    for rows in itertools.combinations(range(1, 1 << x), y):
        sp = span(rows)
        if len(sp) == 1 << y:
            spaces.add(frozenset(sp))
    return len(spaces)


def exact_expectations(dual_words, n, m, a, b, t):
    """E[repair mass] and E[rank deficiency] over all ordered t-tuples of dual codewords."""
    total_mass = 0
    total_def = 0
    count = 0
    for rows in itertools.product(dual_words, repeat=t):
        total_def += m - brute_rank(rows)
        for s in range(1, a + 1):
            for S in itertools.combinations(range(n), s):
                total_mass += max(0, b - odd_rows(rows, S))
        count += 1
    return Fraction(total_mass, count), Fraction(total_def, count)


def brute_bound(dual_words, n, m, a, b, t_max):
    """min over 1 <= t <= t_max of t + floor(E[Z_t]) by enumeration."""
    best = None
    for t in range(1, t_max + 1):
        mass, deficiency = exact_expectations(dual_words, n, m, a, b, t)
        z = mass + deficiency
        val = t + z.numerator // z.denominator
        best = val if best is None else min(best, val)
    return best


def brute_redundancy(dual_words, n, m, a, b, sizes, max_rows):
    """Fewest distinct nonzero dual codewords forming a full-rank clean matrix."""
    words = [w for w in dual_words if w]
    for size in range(m, max_rows + 1):
        for rows in itertools.combinations(words, size):
            if brute_rank(rows) != m:
                continue
            if all(odd_rows(rows, S) >= b
                   for s in sizes for S in itertools.combinations(range(n), s)):
                return size
    return None
