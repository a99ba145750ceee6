"""Randomized constructions of parity-check matrices without small trapping sets.

All rows are dual codewords drawn uniformly at random (zero included).  The
repair loop appends rows until the matrix has full rank ``n - k`` and every
column subset of size at most ``a`` has at least ``b`` odd rows; each appended
row can only raise the rank and the odd-row counts.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional, Union

from .errors import AttemptsExhaustedError, BudgetExceededError, CapExceededError, DomainError
from .gf2core import BinaryMatrix, CodewordSampler, LinearCode, pivot_table, popcount, rank, reduce_vector
from .trapscan import TrapProfile, scan, subset_count

Seed = Union[int, random.Random, None]

# Draws allowed while looking for a row that is odd on one subset.  For
# |S| <= d - 1 each draw succeeds with probability 1/2.
MAX_PARITY_DRAWS = 256

# Total subset visits allowed for one estimate_Z call.
ESTIMATE_SUBSET_BUDGET = 10**8


def make_rng(seed: Seed) -> tuple[random.Random, Optional[int]]:
    if isinstance(seed, random.Random):
        return seed, None
    if seed is None:
        seed = random.SystemRandom().randrange(1 << 63)
    return random.Random(seed), seed


@dataclass
class ConstructionResult:
    matrix: BinaryMatrix
    sampled_rows: int
    repair_rows_added: int
    attempts: int
    seed: Optional[int]

    def as_dict(self) -> dict:
        return {
            "rows": self.matrix.rows,
            "cols": self.matrix.cols,
            "sampled_rows": self.sampled_rows,
            "repair_rows_added": self.repair_rows_added,
            "attempts": self.attempts,
            "seed": self.seed,
        }


def default_max_repair(n: int, m: int, profile: TrapProfile) -> int:
    return 4 * m + 4 * profile.b * subset_count(n, profile.a)


def _prepare(code: LinearCode, profile: TrapProfile) -> BinaryMatrix:
    basis = code.require_matrix()
    if code.redundancy < 1:
        raise DomainError("dual dimension must be at least 1")
    if profile.a > code.n:
        raise DomainError(f"a = {profile.a} exceeds n = {code.n}")
    profile.check_distance(code.d_known, code.d_exact)
    return basis


def sample_and_repair(code: LinearCode, profile: TrapProfile, t: int, seed: Seed = None,
                      max_repair: Optional[int] = None) -> ConstructionResult:
    """Draw ``t`` dual rows, then append rows until full rank and scanner-clean.

    Rank completion appends a uniform dual codeword outside the current row
    space.  Parity repair takes the first deficient subset in (size,
    lexicographic) order and appends the first uniform dual codeword that is
    odd on it.  Both conditions are rechecked after every append.
    """
    basis = _prepare(code, profile)
    if t < 0:
        raise DomainError("t must be nonnegative")
    rng, seed_used = make_rng(seed)
    m = code.redundancy
    if max_repair is None:
        max_repair = default_max_repair(code.n, m, profile)
    sampler = CodewordSampler(basis)

    rows = [sampler(rng) for _ in range(t)]
    pivots = pivot_table(rows)
    H = BinaryMatrix(tuple(rows), code.n)
    deficits: dict[int, int] = {}
    for S, odd in scan(H, profile).violations:
        mask = 0
        for j in S:
            mask |= 1 << j
        deficits[mask] = odd

    added = 0
    b = profile.b
    while len(pivots) < m or deficits:
        if added >= max_repair:
            raise CapExceededError(
                f"repair exceeded {max_repair} rows", BinaryMatrix(tuple(rows), code.n))
        if len(pivots) < m:
            while True:
                row = sampler(rng)
                if reduce_vector(row, pivots):
                    break
        else:
            target = next(iter(deficits))
            for _ in range(MAX_PARITY_DRAWS):
                row = sampler(rng)
                if popcount(row & target) & 1:
                    break
            else:
                raise DomainError(
                    f"no dual codeword is odd on columns {_mask_columns(target)}; "
                    "the subset contains a codeword support (a >= d)")
        rows.append(row)
        added += 1
        r = reduce_vector(row, pivots)
        if r:
            pivots[r.bit_length() - 1] = r
        for mask in list(deficits):
            if popcount(row & mask) & 1:
                deficits[mask] += 1
                if deficits[mask] >= b:
                    del deficits[mask]

    return ConstructionResult(BinaryMatrix(tuple(rows), code.n), t, added, 1, seed_used)


def _mask_columns(mask: int) -> list[int]:
    return [j for j in range(mask.bit_length()) if (mask >> j) & 1]


def las_vegas_minimal(code: LinearCode, profile: TrapProfile, seed: Seed = None,
                      max_attempts: int = 1000) -> ConstructionResult:
    """Resample exactly ``n - k`` dual rows until full rank and scanner-clean."""
    basis = _prepare(code, profile)
    if max_attempts < 1:
        raise DomainError("max_attempts must be positive")
    rng, seed_used = make_rng(seed)
    m = code.redundancy
    sampler = CodewordSampler(basis)
    for attempt in range(1, max_attempts + 1):
        rows = tuple(sampler(rng) for _ in range(m))
        H = BinaryMatrix(rows, code.n)
        if rank(H) == m and scan(H, profile, cap=1).clean:
            return ConstructionResult(H, m, 0, attempt, seed_used)
    raise AttemptsExhaustedError(f"no clean full-rank {m}-row sample in {max_attempts} attempts")


def z_value(H: BinaryMatrix, m: int, profile: TrapProfile) -> int:
    """Rank deficiency plus total odd-row shortfall over subsets of size <= a."""
    shortfall = sum(profile.b - odd for _, odd in scan(H, profile).violations)
    return m - rank(H) + shortfall


def estimate_Z(code: LinearCode, profile: TrapProfile, t: int, trials: int,
               seed: Seed = None, budget: Optional[int] = None) -> tuple[float, float]:
    """Monte Carlo mean and standard error of Z_t over ``trials`` samples of ``t`` rows."""
    basis = code.require_matrix()
    if trials < 1:
        raise DomainError("trials must be at least 1")
    if t < 0:
        raise DomainError("t must be nonnegative")
    if profile.a > code.n:
        raise DomainError(f"a = {profile.a} exceeds n = {code.n}")
    per_trial = subset_count(code.n, profile.a)
    limit = ESTIMATE_SUBSET_BUDGET if budget is None else budget
    if per_trial * trials > limit:
        raise BudgetExceededError(
            f"{trials} trials of {per_trial} subsets exceed the scanning budget")
    rng, _ = make_rng(seed)
    sampler = CodewordSampler(basis)
    m = code.redundancy
    total = 0
    total_sq = 0
    for _ in range(trials):
        H = BinaryMatrix(tuple(sampler(rng) for _ in range(t)), code.n)
        z = z_value(H, m, profile)
        total += z
        total_sq += z * z
    mean = total / trials
    if trials == 1:
        return mean, 0.0
    var = (trials * total_sq - total * total) / (trials * (trials - 1))
    return mean, math.sqrt(var / trials)
