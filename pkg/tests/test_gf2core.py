import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_min_distance, brute_rank, parity, span
from trapred.errors import BudgetExceededError, DomainError
from trapred.gf2core import (
    BinaryMatrix,
    CodewordSampler,
    LinearCode,
    bits_to_str,
    enumerate_rowspace,
    in_rowspace,
    independent_basis,
    minimum_distance,
    nullspace_basis,
    pack_bits,
    rank,
    rref,
    sample_codeword,
    str_to_bits,
    unpack_bits,
)


def matrices(max_rows=8, max_cols=12):
    return st.integers(1, max_cols).flatmap(
        lambda n: st.lists(st.integers(0, (1 << n) - 1), min_size=0, max_size=max_rows).map(
            lambda rows: BinaryMatrix(tuple(rows), n)))


HAMMING_H = BinaryMatrix.from_lists([
    [1, 0, 1, 0, 1, 0, 1],
    [0, 1, 1, 0, 0, 1, 1],
    [0, 0, 0, 1, 1, 1, 1],
])


class TestBinaryMatrix:
    def test_bit_packing(self):
        assert pack_bits([1, 0, 1, 1]) == 0b1101
        assert unpack_bits(0b1101, 5) == [1, 0, 1, 1, 0]
        assert bits_to_str(0b1101, 5) == "10110"
        assert str_to_bits("10110") == 0b1101

    def test_list_round_trip(self):
        rows = [[1, 1, 0], [0, 1, 1]]
        M = BinaryMatrix.from_lists(rows)
        assert M.shape == (2, 3)
        assert M.to_lists() == rows

    def test_columns_are_transpose(self):
        M = BinaryMatrix.from_lists([[1, 1, 0], [0, 1, 1]])
        assert M.columns() == [0b01, 0b11, 0b10]
        assert M.column(2) == 0b10

    def test_rejects_stray_bits(self):
        with pytest.raises((DomainError, ValueError)):
            BinaryMatrix((0b1000,), 3)

    def test_identity_and_zeros(self):
        assert rank(BinaryMatrix.identity(5)) == 5
        assert rank(BinaryMatrix.zeros(4, 6)) == 0


class TestRank:
    def test_dependent_triangle(self):
        M = BinaryMatrix.from_lists([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
        assert rank(M) == 2

    def test_hamming_check_matrix(self):
        assert rank(HAMMING_H) == 3

    def test_empty(self):
        assert rank(BinaryMatrix((), 4)) == 0

    @given(matrices())
    def test_matches_span_size(self, M):
        assert rank(M) == brute_rank(M.data)

    @given(matrices(), st.data())
    def test_invariant_under_row_operations(self, M, data):
        rows = list(M.data)
        if len(rows) >= 2:
            for _ in range(data.draw(st.integers(0, 6))):
                i, j = data.draw(st.permutations(range(len(rows))))[:2]
                rows[i] ^= rows[j]
            data.draw(st.randoms()).shuffle(rows)
        assert rank(BinaryMatrix(tuple(rows), M.cols)) == rank(M)

    @given(matrices())
    def test_rref_pivots(self, M):
        rows, pivots = rref(M)
        assert len(rows) == len(pivots) == rank(M)
        assert span(rows) == span(M.data)
        for r, p in zip(rows, pivots):
            assert (r >> p) & 1
            assert sum((other >> p) & 1 for other in rows) == 1


class TestNullspace:
    def test_hamming_nullspace_is_the_code(self):
        N = nullspace_basis(HAMMING_H)
        assert N.rows == 4
        assert rank(N) == 4
        for x in N.data:
            assert all(parity(r & x) == 0 for r in HAMMING_H.data)

    @given(matrices())
    def test_rank_nullity(self, M):
        N = nullspace_basis(M)
        assert rank(N) == N.rows
        assert rank(M) + N.rows == M.cols
        for x in N.data:
            assert all(parity(r & x) == 0 for r in M.data)

    @given(matrices())
    def test_independent_basis(self, M):
        B = independent_basis(M)
        assert B.rows == rank(M)
        assert all(in_rowspace(r, B) for r in M.data)


class TestEnumeration:
    @given(matrices(max_rows=6, max_cols=10))
    def test_size_and_no_duplicates(self, M):
        B = independent_basis(M)
        words = list(enumerate_rowspace(B))
        assert len(words) == 1 << B.rows
        assert len(set(words)) == len(words)
        assert set(words) == span(M.data)

    def test_gray_order(self):
        words = list(enumerate_rowspace(HAMMING_H))
        assert words[0] == 0
        for x, y in zip(words, words[1:]):
            assert (x ^ y) in HAMMING_H.data

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            list(enumerate_rowspace(BinaryMatrix.identity(6), limit_bits=5))


class TestSampling:
    def test_sample_is_in_rowspace(self):
        rng = random.Random(1)
        for _ in range(100):
            assert in_rowspace(sample_codeword(HAMMING_H, rng), HAMMING_H)

    @pytest.mark.parametrize("use_table", [False, True])
    def test_uniform_over_codewords(self, use_table):
        rng = random.Random(7)
        trials = 40_000
        draw = CodewordSampler(HAMMING_H) if use_table else (lambda r: sample_codeword(HAMMING_H, r))
        counts: dict[int, int] = {}
        for _ in range(trials):
            w = draw(rng)
            counts[w] = counts.get(w, 0) + 1
        assert len(counts) == 8
        p = 1 / 8
        sigma = (trials * p * (1 - p)) ** 0.5
        for c in counts.values():
            assert abs(c - trials * p) < 5 * sigma

    def test_table_and_direct_agree(self):
        a, b = random.Random(3), random.Random(3)
        sampler = CodewordSampler(HAMMING_H)
        assert [sampler(a) for _ in range(50)] == [sample_codeword(HAMMING_H, b) for _ in range(50)]


class TestLinearCode:
    def test_hamming_distance(self):
        code = LinearCode.from_parity_check(HAMMING_H)
        assert (code.n, code.k, code.redundancy) == (7, 4, 3)
        assert minimum_distance(code) == 3

    def test_repetition_from_generator(self):
        code = LinearCode.from_generator(BinaryMatrix.from_lists([[1, 1, 1, 1, 1]]))
        assert (code.n, code.k) == (5, 1)
        assert minimum_distance(code) == 5

    @settings(max_examples=40)
    @given(matrices(max_rows=5, max_cols=9))
    def test_distance_matches_brute_force(self, M):
        code = LinearCode.from_parity_check(M)
        if code.k == 0:
            return
        assert minimum_distance(code) == brute_min_distance(M.data, M.cols)

    def test_parameters_only_code(self):
        code = LinearCode(2640, 1320, None)
        assert not code.has_matrix
        with pytest.raises(DomainError):
            code.require_matrix()
