"""Exact trapping redundancy of tiny codes by exhaustive search.

The search picks rows from the dual code, ascending in row count from
``n - k``, so the first qualifying selection is a minimum.  ``distinct`` mode
uses distinct codewords; ``multiset`` mode allows repeats, matching the
sampling space of the randomized construction.  The zero vector is left out
of both: deleting it from a qualifying selection leaves a smaller one.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .errors import BudgetExceededError, DomainError, NotFoundError
from .gf2core import (
    BinaryMatrix,
    LinearCode,
    enumerate_rowspace,
    pivot_table,
    popcount,
    rank,
    reduce_vector,
)
from .trapscan import TrapProfile, scan

MAX_DUAL_BITS = 12
DEFAULT_NODE_BUDGET = int(os.environ.get("TRAPRED_ORACLE_NODES", "5000000"))


@dataclass
class OracleResult:
    value: int
    witness: BinaryMatrix
    search_space: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "witness": [format(r, "b").zfill(self.witness.cols)[::-1] for r in self.witness.data],
            "search_space": dict(self.search_space),
        }


def _subset_masks(n: int, sizes: range) -> list[int]:
    masks = []
    for s in sizes:
        for S in itertools.combinations(range(n), s):
            mask = 0
            for j in S:
                mask |= 1 << j
            masks.append(mask)
    return masks


class _Search:
    """Depth-first choice of rows with two prunings.

    Rank: the chosen rows plus the slots left must be able to reach ``m``.
    Shortfall: ``levels[j]`` is the bitmask of subsets with at least ``j + 1``
    odd rows.  One more row raises each count by at most 1 and serves at
    most ``best_fix`` subsets, so the total shortfall must fit in the slots
    left.
    """

    def __init__(self, candidates: list[int], masks: list[int], b: int, m: int,
                 multiset: bool, budget: int) -> None:
        self.cands = candidates
        # odd_on[i]: bitmask over subsets on which candidate i has odd weight
        self.odd_on = []
        for c in candidates:
            bits = 0
            for k, mask in enumerate(masks):
                if popcount(c & mask) & 1:
                    bits |= 1 << k
            self.odd_on.append(bits)
        # best_fix[i] = max popcount(odd_on[j]) over j >= i
        self.best_fix = [0] * (len(candidates) + 1)
        for i in range(len(candidates) - 1, -1, -1):
            self.best_fix[i] = max(self.best_fix[i + 1], popcount(self.odd_on[i]))
        self.nsub = len(masks)
        self.full = (1 << self.nsub) - 1
        self.b = b
        self.m = m
        self.multiset = multiset
        self.budget = budget
        self.nodes = 0

    def _push(self, levels: tuple[int, ...], i: int) -> tuple[int, ...]:
        odd = self.odd_on[i]
        new = list(levels)
        for j in range(self.b - 1, 0, -1):
            new[j] |= new[j - 1] & odd
        if self.b:
            new[0] |= odd
        return tuple(new)

    def run(self, size: int, first: Optional[int] = None) -> Optional[list[int]]:
        """Search selections of ``size`` rows; with ``first`` set, that row is forced in."""
        levels = (0,) * self.b
        if first is None:
            return self._dfs(size, 0, [], {}, levels, None)
        pivots: dict[int, int] = {}
        r = self.cands[first]
        if r:
            pivots[r.bit_length() - 1] = r
        return self._dfs(size - 1, 0, [first], pivots, self._push(levels, first), first)

    def _dfs(self, left: int, start: int, chosen: list[int], pivots: dict[int, int],
             levels: tuple[int, ...], skip: Optional[int]) -> Optional[list[int]]:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceededError(f"oracle search exceeded {self.budget} nodes")
        if len(pivots) + left < self.m:
            return None
        if self.b:
            need = self.b - left
            if need >= 1 and levels[need - 1] != self.full:
                return None
            shortfall = self.b * self.nsub - sum(popcount(x) for x in levels)
            if shortfall > left * self.best_fix[start]:
                return None
        if left == 0:
            return sorted(chosen)
        stop = len(self.cands) if self.multiset else len(self.cands) - left + 1
        for i in range(start, stop):
            if i == skip and not self.multiset:
                continue
            v = self.cands[i]
            r = reduce_vector(v, pivots)
            new_pivots = pivots
            if r:
                new_pivots = dict(pivots)
                new_pivots[r.bit_length() - 1] = r
            chosen.append(i)
            found = self._dfs(left - 1, i if self.multiset else i + 1, chosen, new_pivots,
                              self._push(levels, i), skip)
            chosen.pop()
            if found is not None:
                return found
        return None


@lru_cache(maxsize=64)
def _automorphisms(basis: BinaryMatrix, limit: int = 9) -> Optional[list[tuple[int, ...]]]:
    """Column permutations preserving the row space, or None when n is too large to brute force."""
    n = basis.cols
    if n > limit:
        return None
    pivots = pivot_table(basis.data)
    out = []
    for perm in itertools.permutations(range(n)):
        ok = True
        for r in basis.data:
            img = 0
            for j in range(n):
                if (r >> j) & 1:
                    img |= 1 << perm[j]
            if reduce_vector(img, pivots):
                ok = False
                break
        if ok:
            out.append(perm)
    return out


def _orbit_representatives(cands: list[int], perms: Optional[list[tuple[int, ...]]]) -> list[int]:
    """Candidate indices, one per orbit under ``perms`` (all of them without symmetry)."""
    if perms is None:
        return list(range(len(cands)))
    seen: set[int] = set()
    reps = []
    n = len(perms[0])
    for i, c in enumerate(cands):
        if c in seen:
            continue
        reps.append(i)
        for perm in perms:
            img = 0
            for j in range(n):
                if (c >> j) & 1:
                    img |= 1 << perm[j]
            seen.add(img)
    return reps


def _exact(code: LinearCode, a: int, b: int, sizes: range, max_rows: Optional[int],
           mode: str, budget: int, label: str) -> OracleResult:
    basis = code.require_matrix()
    m = code.redundancy
    if m > MAX_DUAL_BITS:
        raise BudgetExceededError(f"dual dimension {m} exceeds oracle limit {MAX_DUAL_BITS}")
    if mode not in ("distinct", "multiset"):
        raise DomainError(f"unknown search mode {mode!r}")
    if a > code.n:
        raise DomainError(f"a = {a} exceeds n = {code.n}")
    multiset = mode == "multiset"
    words = sorted(enumerate_rowspace(basis))
    # a zero row never helps, so no minimal selection contains one
    cands = [w for w in words if w]
    if max_rows is None:
        max_rows = m + 8 if multiset else min(len(cands), m + 8)
    masks = _subset_masks(code.n, sizes) if b else []
    search = _Search(cands, masks, b, m, multiset, budget)
    profile = TrapProfile(a, b)
    # any clean selection can be mapped by a code automorphism onto one
    # containing an orbit representative, so the first row is restricted
    reps = _orbit_representatives(cands, _automorphisms(basis)) if b else []
    for size in range(m, max_rows + 1):
        if size == 0 or not reps:
            hit = search.run(size)
        else:
            hit = None
            for rep in reps:
                hit = search.run(size, rep)
                if hit is not None:
                    break
        if hit is None:
            continue
        witness = BinaryMatrix(tuple(cands[i] for i in hit), code.n)
        _verify(witness, m, profile, sizes)
        return OracleResult(size, witness, {
            "mode": mode, "max_rows": max_rows, "nodes": search.nodes, "criterion": label,
            "first_row_orbits": len(reps),
        })
    raise NotFoundError(f"no qualifying matrix with at most {max_rows} rows ({mode} mode)")


def _verify(H: BinaryMatrix, m: int, profile: TrapProfile, sizes: range) -> None:
    if rank(H) != m:
        raise AssertionError("oracle witness is rank deficient")
    bad = [v for v in scan(H, profile).violations if len(v[0]) in sizes]
    if bad:
        raise AssertionError(f"oracle witness has violations {bad[:3]}")


def exact_collective(code: LinearCode, profile: TrapProfile, max_rows: Optional[int] = None,
                     mode: str = "distinct", budget: int = DEFAULT_NODE_BUDGET) -> OracleResult:
    """Fewest rows of a full-rank dual matrix with no ``(s, t)``-trapping set, ``s <= a``, ``t < b``."""
    return _exact(code, profile.a, profile.b, range(1, profile.a + 1), max_rows, mode, budget,
                  "collective")


def exact_plain(code: LinearCode, a: int, b: int, max_rows: Optional[int] = None,
                mode: str = "distinct", budget: int = DEFAULT_NODE_BUDGET) -> OracleResult:
    """As :func:`exact_collective` but only subsets of size exactly ``a`` are constrained."""
    TrapProfile(a, b)
    return _exact(code, a, b, range(a, a + 1), max_rows, mode, budget, "plain")
