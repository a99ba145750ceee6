"""Upper bounds on the collective trapping redundancy of a binary linear code.

A matrix built from ``t`` uniform dual codewords needs, on average, ``E[Y_t]``
extra rows to reach full rank and ``R_t`` extra rows to lift every small
column subset to at least ``b`` odd rows.  Any ``t`` therefore certifies a
parity-check matrix with ``t + floor(R_t + E[Y_t])`` rows; the bound is the
minimum over ``t``.

Two arithmetic modes are available:

``exact``
    Python integers and :class:`fractions.Fraction`; results are exact.
``certified``
    Binary floating point with 96-bit mantissas and every operation rounded
    toward +infinity (``mpmath.libmp`` with ``rnd='c'``), plus a proven
    majorant for the truncated tail of the rank-deficiency series.  Every
    returned quantity is an upper bound of the exact one, so the integer
    bound stays valid.

``auto`` picks ``exact`` whenever ``t * (n - k) <= EXACT_BITS_THRESHOLD``.
Certified results are returned as the exact :class:`Fraction` value of the
rounded binary float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional

from mpmath import libmp

from .errors import BudgetExceededError, DomainError

EXACT = "exact-rational"
CERTIFIED = "certified-float"

EXACT_BITS_THRESHOLD = 1 << 16
PREC = 96
CORANK_CUTOFF = 64
# E[Y_t] is only bounded for redundancies up to this size.
MAX_REDUNDANCY = 10**5

_UP = libmp.round_ceiling


def resolve_mode(mode: str, m: int, t: int) -> str:
    if mode in ("exact", EXACT):
        return EXACT
    if mode in ("certified", CERTIFIED):
        return CERTIFIED
    if mode == "auto":
        return EXACT if t * m <= EXACT_BITS_THRESHOLD else CERTIFIED
    raise DomainError(f"unknown arithmetic mode {mode!r}")


def _mpf_to_fraction(x) -> Fraction:
    p, q = libmp.to_rational(x)
    return Fraction(int(p), int(q))


def _up_rational(q: Fraction):
    return libmp.from_rational(q.numerator, q.denominator, PREC, _UP)


# ---------------------------------------------------------------------------
# exact combinatorics


def gaussian_binomial(x: int, y: int) -> int:
    """Number of ``y``-dimensional subspaces of GF(2)^x."""
    if y < 0 or x < 0:
        raise DomainError("gaussian_binomial needs nonnegative arguments")
    if y > x:
        return 0
    y = min(y, x - y)
    num = 1
    den = 1
    for i in range(y):
        num *= (1 << (x - i)) - 1
        den *= (1 << (i + 1)) - 1
    q, rem = divmod(num, den)
    assert rem == 0
    return q


def _rank_counts(m: int, t: int):
    """Yield ``(r, N_r)`` where ``N_r`` counts the ``t``-tuples of vectors of GF(2)^m with rank ``r``.

    ``N_r = [m, r]_2 prod_{i<r} (2^t - 2^i)``; each step multiplies by a
    small factor and divides exactly by another, so big-by-big products
    never occur.
    """
    count = 1
    for r in range(min(t, m) + 1):
        if r:
            count = count * ((1 << (m - r + 1)) - 1) * ((1 << t) - (1 << (r - 1))) // ((1 << r) - 1)
        yield r, count


@dataclass(frozen=True)
class RankDistribution:
    """Law of the rank of ``t`` uniform vectors drawn from an ``m``-dimensional space."""

    m: int
    t: int
    probabilities: dict[int, Fraction]

    def mean_deficiency(self) -> Fraction:
        return sum(((self.m - r) * p for r, p in self.probabilities.items()), Fraction(0))


def rank_distribution(m: int, t: int) -> RankDistribution:
    if m < 0 or t < 0:
        raise DomainError("m and t must be nonnegative")
    total = 1 << (t * m)
    probs: dict[int, Fraction] = {}
    for r, count in _rank_counts(m, t):
        if count:
            probs[r] = Fraction(count, total)
    return RankDistribution(m, t, probs)


# ---------------------------------------------------------------------------
# expectations


def _exact_rank_deficiency(m: int, t: int) -> Fraction:
    total = 1 << (t * m)
    acc = 0
    for r, count in _rank_counts(m, t):
        acc += (m - r) * count
    return Fraction(acc, total)


def _certified_rank_deficiency(m: int, t: int) -> Fraction:
    """Upper bound on E[m - rank] for ``t`` uniform rows in an ``m``-dimensional space.

    Uses P(corank = c) = [m, c] 2^(-tc) prod_{i<m-c} (1 - 2^(i-t)) for
    c = c0 .. c0 + CORANK_CUTOFF with c0 = max(0, m - t).  For larger c,
    [m, c] <= 2^(c(m-c)) / prod_j (1 - 2^-j) < 4 * 2^(c(m-c)), so
    c P(corank = c) <= 4c 2^(-c(c + t - m)) <= 4c 2^(-c(C+1)) with C the
    cutoff, and the tail sums to at most 2^(3 - C(C+1)).
    """
    if m > MAX_REDUNDANCY:
        raise BudgetExceededError(f"redundancy {m} exceeds certified limit {MAX_REDUNDANCY}")
    c_lo = max(0, m - t)
    c_hi = min(m, c_lo + CORANK_CUTOFF)

    # upper bound on [m, c_lo] via the shorter product
    y = min(c_lo, m - c_lo)
    gb = libmp.fone
    for i in range(y):
        f = libmp.from_rational((1 << (m - i)) - 1, (1 << (i + 1)) - 1, PREC, _UP)
        gb = libmp.mpf_mul(gb, f, PREC, _UP)

    # prefix[j] >= prod_{i<j} (1 - 2^(i-t)); factors with i - t < -PREC-2 round up to 1
    r_max = m - c_lo
    prefix = [libmp.fone] * (r_max + 1)
    acc = libmp.fone
    start = max(0, t - PREC - 2)
    for j in range(r_max):
        if j >= start:
            f = libmp.mpf_sub(libmp.fone, libmp.mpf_shift(libmp.fone, j - t), PREC, _UP)
            acc = libmp.mpf_mul(acc, f, PREC, _UP)
        prefix[j + 1] = acc

    total = libmp.fzero
    for c in range(c_lo, c_hi + 1):
        if c > c_lo:
            f = libmp.from_rational((1 << (m - c + 1)) - 1, (1 << c) - 1, PREC, _UP)
            gb = libmp.mpf_mul(gb, f, PREC, _UP)
        if c == 0:
            continue
        term = libmp.mpf_mul(gb, prefix[m - c], PREC, _UP)
        term = libmp.mpf_shift(term, -t * c)
        term = libmp.mpf_mul(term, libmp.from_int(c), PREC, _UP)
        total = libmp.mpf_add(total, term, PREC, _UP)
    if c_hi < m:
        C = CORANK_CUTOFF
        total = libmp.mpf_add(total, libmp.mpf_shift(libmp.fone, 3 - C * (C + 1)), PREC, _UP)
    out = _mpf_to_fraction(total)
    return min(out, Fraction(m))


def expected_rank_deficiency(m: int, t: int, mode: str = "auto") -> Fraction:
    """E[m - rank(H_t)] for ``t`` uniform rows of an ``m``-dimensional dual.

    Exact in exact mode; an upper bound in certified mode.
    """
    if m < 0 or t < 0:
        raise DomainError("m and t must be nonnegative")
    if t == 0 or m == 0:
        return Fraction(m)
    if resolve_mode(mode, m, t) == EXACT:
        return _exact_rank_deficiency(m, t)
    return _certified_rank_deficiency(m, t)


def _repair_numerator(n: int, a: int, b: int, t: int) -> int:
    subsets = sum(comb(n, u) for u in range(1, a + 1))
    inner = sum(i * comb(t, b - i) for i in range(1, b + 1))
    return subsets * inner


def expected_repair_mass(n: int, a: int, b: int, t: int, mode: str = "auto") -> Fraction:
    """Expected total odd-row shortfall over all column subsets of size <= ``a``.

    Equals 2^-t * sum_{u<=a} C(n, u) * sum_{i=1..b} i C(t, b - i).
    """
    if not 1 <= a <= n:
        raise DomainError(f"need 1 <= a <= n, got a={a}, n={n}")
    if b < 0 or t < 0:
        raise DomainError("b and t must be nonnegative")
    exact = Fraction(_repair_numerator(n, a, b, t), 1 << t)
    if mode == "auto" or resolve_mode(mode, 0, 0) == EXACT or exact == 0:
        return exact
    return _mpf_to_fraction(_up_rational(exact))


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


# ---------------------------------------------------------------------------
# reports


def format_rational(q: Fraction, digits: int = 6) -> str:
    """Decimal text for ``q``, including values far below the float range."""
    if q == 0:
        return "0"
    try:
        f = float(q)
    except OverflowError:
        f = math.inf
    if f != 0 and math.isfinite(f):
        return f"{f:.{digits}g}"
    sign = "-" if q < 0 else ""
    e = math.log10(abs(q.numerator)) - math.log10(q.denominator)
    exp = math.floor(e)
    return f"{sign}{10 ** (e - exp):.{digits - 1}f}e{exp}"


@dataclass
class BoundReport:
    value: int
    optimizer_t: Optional[int]
    mode: str
    expectation_breakdown: Optional[tuple[Fraction, Fraction]] = None
    assumptions: list[str] = field(default_factory=list)
    family: str = "theorem1"
    params: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {
            "family": self.family,
            "params": dict(self.params),
            "value": self.value,
            "optimizer_t": self.optimizer_t,
            "mode": self.mode,
            "assumptions": list(self.assumptions),
        }
        if self.expectation_breakdown is not None:
            rm, rd = self.expectation_breakdown
            out["expectation_breakdown"] = {
                "repair_mass": float(rm),
                "rank_deficiency": float(rd),
                "repair_mass_text": format_rational(rm),
                "rank_deficiency_text": format_rational(rd),
            }
        out.update(self.extra)
        return out


def distance_assumptions(a: int, d: Optional[int], d_exact: bool, limit: int,
                          what: str, strict: bool) -> list[str]:
    notes = []
    if d is None:
        notes.append(f"{what} assumed; minimum distance not verified")
    elif a > limit:
        if d_exact and strict:
            raise DomainError(f"a = {a} violates {what} with d = {d}")
        notes.append(f"a = {a} exceeds the range {what} for d = {d}")
    elif not d_exact:
        notes.append(f"d >= {d} asserted by user, not verified")
    return notes


def _objective(n: int, k: int, a: int, b: int, t: int, mode: str) -> tuple[int, Fraction, Fraction, str]:
    m = n - k
    used = resolve_mode(mode, m, t)
    rm = expected_repair_mass(n, a, b, t, used)
    rd = expected_rank_deficiency(m, t, used)
    if used == CERTIFIED:
        s = libmp.mpf_add(_up_rational(rm) if rm else libmp.fzero,
                          _up_rational(rd) if rd else libmp.fzero, PREC, _UP)
        total = _mpf_to_fraction(s)
    else:
        total = rm + rd
    return t + _floor(total), rm, rd, used


def theorem1_bound(n: int, k: int, a: int, b: int, d: Optional[int] = None,
                   d_exact: bool = True, mode: str = "auto") -> BoundReport:
    """Minimum over ``t >= 1`` of ``t + floor(R_t + E[Y_t])``.

    Search: ``t = n - k`` is evaluated first to seed the incumbent.  Any
    ``t < n - k`` has objective at least ``n - k + floor(R_t)`` because
    ``Y_t >= n - k - t``; those are skipped when that cannot beat the
    incumbent.  The scan stops once ``t`` reaches the incumbent, since the
    objective is at least ``t``.
    """
    if not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")
    if not 1 <= a <= n:
        raise DomainError(f"need 1 <= a <= n, got a={a}")
    if b < 0:
        raise DomainError("b must be nonnegative")
    resolve_mode(mode, 0, 0)
    assumptions = distance_assumptions(a, d, d_exact, (d or 0) - 1, "a <= d-1", True)
    m = n - k

    best: Optional[tuple[int, int, Fraction, Fraction]] = None
    modes_used = set()

    def consider(t: int) -> None:
        nonlocal best
        val, rm, rd, used = _objective(n, k, a, b, t, mode)
        modes_used.add(used)
        if best is None or val < best[0]:
            best = (val, t, rm, rd)

    if m >= 1:
        consider(m)
    t = 1
    while best is None or t < best[0]:
        if t == m:
            t += 1
            continue
        if t < m:
            lb = m + _floor(Fraction(_repair_numerator(n, a, b, t), 1 << t))
            if best is not None and lb >= best[0]:
                t += 1
                continue
        consider(t)
        t += 1

    assert best is not None
    val, t_opt, rm, rd = best
    report_mode = CERTIFIED if CERTIFIED in modes_used else EXACT
    return BoundReport(
        value=val, optimizer_t=t_opt, mode=report_mode,
        expectation_breakdown=(rm, rd), assumptions=assumptions,
        family="theorem1", params={"n": n, "k": k, "a": a, "b": b, "d": d},
    )


def corollary2_check(n: int, k: int, a: int, b: int, mode: str = "auto",
                     d: Optional[int] = None, d_exact: bool = True) -> tuple[bool, Fraction]:
    """Whether ``n - k`` uniform dual rows already give ``E[Z] < 1``.

    Returns ``(holds, lhs)``; in certified mode ``lhs`` is an upper bound, so
    ``holds`` can only err toward ``False``.
    """
    if not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")
    if not 1 <= a <= n:
        raise DomainError(f"need 1 <= a <= n, got a={a}")
    distance_assumptions(a, d, d_exact, (d or 0) - 1, "a <= d-1", True)
    m = n - k
    used = resolve_mode(mode, m, m)
    rm = expected_repair_mass(n, a, b, m, used)
    rd = expected_rank_deficiency(m, m, used)
    if used == CERTIFIED:
        s = libmp.mpf_add(_up_rational(rm) if rm else libmp.fzero,
                          _up_rational(rd) if rd else libmp.fzero, PREC, _UP)
        lhs = _mpf_to_fraction(s)
    else:
        lhs = rm + rd
    return lhs < 1, lhs


# ---------------------------------------------------------------------------
# baselines


def inv_e_enclosure(bits: int) -> tuple[Fraction, Fraction]:
    """Rationals ``lo < 1/e < hi`` with ``hi - lo <= 2^-bits``.

    Consecutive partial sums of the alternating series sum (-1)^j / j!
    bracket 1/e.
    """
    prev = Fraction(1)
    j = 0
    fact = 1
    while True:
        j += 1
        fact *= j
        cur = prev + Fraction((-1) ** j, fact)
        if fact >= (1 << bits):
            return min(prev, cur), max(prev, cur)
        prev = cur


def _le_inv_e(x: Fraction) -> bool:
    bits = 64
    while True:
        lo, hi = inv_e_enclosure(bits)
        if x <= lo:
            return True
        if x > hi:
            return False
        bits *= 2


def lll_bound(n: int, k: int, a: int, b: int, d: Optional[int] = None,
              d_exact: bool = True) -> BoundReport:
    """The earlier Local-Lemma bound ``m + n - k - 1``.

    ``m`` is the smallest positive integer with
    ``2^-m (C(n, a) - C(n-a, a)) sum_{j<b} C(m, j) <= 1/e``.
    """
    if not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")
    if not 1 <= a <= n:
        raise DomainError(f"need 1 <= a <= n, got a={a}")
    if b < 1:
        raise DomainError("the LLL baseline needs b >= 1")
    assumptions = distance_assumptions(
        a, d, d_exact, ((d or 0) - 1) // 2, "a <= floor((d-1)/2)", False)
    dependents = comb(n, a) - comb(n - a, a)
    m = 1
    while not _le_inv_e(Fraction(dependents * sum(comb(m, j) for j in range(b)), 1 << m)):
        m += 1
    return BoundReport(
        value=m + n - k - 1, optimizer_t=None, mode=EXACT,
        assumptions=assumptions, family="lll",
        params={"n": n, "k": k, "a": a, "b": b, "d": d}, extra={"lll_m": m},
    )


def gv_check(n: int, k: int, d: int) -> bool:
    """Gilbert-Varshamov existence condition ``2^(n-k) >= sum_{i<d} C(n, i)``."""
    if not 1 <= d <= n:
        raise DomainError(f"need 1 <= d <= n, got d={d}")
    if not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got k={k}")
    return (1 << (n - k)) >= sum(comb(n, i) for i in range(d))
