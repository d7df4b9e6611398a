"""Binary matrix core: expansion, rank, cycles, permutation, alist I/O."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from acldpc import (
    ExponentMatrix,
    MatrixError,
    SparseBitMatrix,
    expand,
    gf2_nullspace,
    gf2_rank,
    gf2_rref,
    girth,
    has_length4_cycle,
    permute,
    read_alist,
    write_alist,
)
from tests.conftest import SMALL_Q5


def dense_rank_oracle(M: np.ndarray) -> int:
    """Naive row-reduction rank over GF(2), independent of the library path."""
    M = M.copy().astype(np.uint8)
    rank = 0
    rows, cols = M.shape
    for c in range(cols):
        pivot = None
        for r in range(rank, rows):
            if M[r, c]:
                pivot = r
                break
        if pivot is None:
            continue
        M[[rank, pivot]] = M[[pivot, rank]]
        for r in range(rows):
            if r != rank and M[r, c]:
                M[r] ^= M[rank]
        rank += 1
    return rank


class TestExpand:
    def test_zero_exponent_gives_identity(self):
        exp = ExponentMatrix.from_rows([[0]], modulus=5)
        assert np.array_equal(expand(exp).to_dense(), np.eye(5, dtype=np.uint8))

    def test_unit_exponent_is_single_right_shift(self):
        exp = ExponentMatrix.from_rows([[1]], modulus=3)
        expected = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=np.uint8)
        assert np.array_equal(expand(exp).to_dense(), expected)

    def test_null_entry_gives_zero_block(self):
        exp = ExponentMatrix.from_rows([[0, None]], modulus=3)
        dense = expand(exp).to_dense()
        assert np.array_equal(dense[:, :3], np.eye(3, dtype=np.uint8))
        assert not dense[:, 3:].any()

    def test_small_code_shape_and_weights(self):
        from acldpc import build_array_exponents

        H = expand(build_array_exponents(SMALL_Q5))
        dense = H.to_dense()
        assert dense.shape == (15, 25)
        assert (dense.sum(axis=0) == 3).all()
        assert (dense.sum(axis=1) == 5).all()

    def test_density_matches_nonnull_entries(self):
        exp = ExponentMatrix.from_rows([[0, 2, None], [1, None, 3]], modulus=7)
        assert expand(exp).nnz == 7 * 4

    def test_rejects_out_of_range_exponent(self):
        with pytest.raises(MatrixError):
            ExponentMatrix.from_rows([[5]], modulus=5)


class TestRank:
    def test_identity(self):
        assert gf2_rank(SparseBitMatrix.identity(7)) == 7

    def test_all_zero(self):
        assert gf2_rank(np.zeros((4, 6), dtype=np.uint8)) == 0

    def test_small_expanded_code(self):
        from acldpc import build_array_exponents

        H = expand(build_array_exponents(SMALL_Q5))
        assert gf2_rank(H) == dense_rank_oracle(H.to_dense())

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 16), st.integers(1, 16), st.integers(0, 2**32 - 1))
    def test_agrees_with_dense_oracle(self, m, n, seed):
        M = np.random.default_rng(seed).integers(0, 2, size=(m, n), dtype=np.uint8)
        assert gf2_rank(M) == dense_rank_oracle(M)

    def test_rref_pivots_identify_identity_submatrix(self):
        rng = np.random.default_rng(3)
        M = rng.integers(0, 2, size=(8, 14), dtype=np.uint8)
        R, pivots = gf2_rref(M)
        sub = R[: len(pivots)][:, pivots]
        assert np.array_equal(sub, np.eye(len(pivots), dtype=np.uint8))

    def test_nullspace_vectors_are_annihilated(self):
        rng = np.random.default_rng(5)
        M = rng.integers(0, 2, size=(6, 12), dtype=np.uint8)
        basis = gf2_nullspace(M)
        assert basis.shape[0] == 12 - gf2_rank(M)
        assert not ((M @ basis.T) & 1).any()


class TestCycles:
    def test_two_rows_sharing_two_columns(self):
        M = SparseBitMatrix.from_dense(np.ones((2, 2), dtype=np.uint8))
        assert has_length4_cycle(M)
        assert girth(M) == 4

    def test_small_expanded_code_is_four_cycle_free(self):
        from acldpc import build_array_exponents

        H = expand(build_array_exponents(SMALL_Q5))
        assert not has_length4_cycle(H)
        g = girth(H)
        assert g is None or g >= 6

    def test_identity_has_no_cycles(self):
        M = SparseBitMatrix.identity(5)
        assert not has_length4_cycle(M)
        assert girth(M) is None

    def test_six_cycle_detected(self):
        M = SparseBitMatrix.from_dense(
            np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=np.uint8)
        )
        assert not has_length4_cycle(M)
        assert girth(M) == 6


class TestPermute:
    def test_identity_orders_unchanged(self):
        M = SparseBitMatrix.from_dense(
            np.random.default_rng(0).integers(0, 2, size=(4, 6), dtype=np.uint8)
        )
        P = permute(M, range(4), range(6))
        assert P.row_support == M.row_support

    def test_semantics_match_dense_indexing(self):
        rng = np.random.default_rng(1)
        dense = rng.integers(0, 2, size=(5, 7), dtype=np.uint8)
        rows = rng.permutation(5)
        cols = rng.permutation(7)
        P = permute(SparseBitMatrix.from_dense(dense), rows, cols)
        assert np.array_equal(P.to_dense(), dense[np.ix_(rows, cols)])

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 10), st.integers(1, 10), st.integers(0, 2**32 - 1))
    def test_inverse_round_trip(self, m, n, seed):
        rng = np.random.default_rng(seed)
        M = SparseBitMatrix.from_dense(rng.integers(0, 2, size=(m, n), dtype=np.uint8))
        rows, cols = rng.permutation(m), rng.permutation(n)
        inv_rows, inv_cols = np.argsort(rows), np.argsort(cols)
        back = permute(permute(M, rows, cols), inv_rows, inv_cols)
        assert back.row_support == M.row_support

    def test_rejects_non_permutation(self):
        M = SparseBitMatrix.identity(3)
        with pytest.raises(MatrixError):
            permute(M, [0, 0, 1], range(3))


class TestAlist:
    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(7)
        dense = rng.integers(0, 2, size=(6, 10), dtype=np.uint8)
        dense[:, dense.sum(axis=0) == 0] = 1  # alist needs nonzero columns
        M = SparseBitMatrix.from_dense(dense)
        path = tmp_path / "m.alist"
        write_alist(path, M)
        back = read_alist(path)
        assert np.array_equal(back.to_dense(), M.to_dense())

    def test_header_is_cols_rows(self, tmp_path):
        M = SparseBitMatrix.from_dense(np.ones((2, 3), dtype=np.uint8))
        path = tmp_path / "m.alist"
        write_alist(path, M)
        first = path.read_text().splitlines()[0].split()
        assert first == ["3", "2"]


class TestSparseBitMatrix:
    def test_transpose_consistency_enforced(self):
        with pytest.raises(MatrixError):
            SparseBitMatrix(
                rows=1, cols=2, row_support=((0,),), col_support=((0,), (0,))
            )

    def test_sorted_support_enforced(self):
        with pytest.raises(MatrixError):
            SparseBitMatrix(
                rows=1, cols=3, row_support=((2, 1),), col_support=((), (0,), (0,))
            )

    def test_from_dense_round_trip(self):
        dense = np.array([[1, 0, 1], [0, 1, 0]], dtype=np.uint8)
        assert np.array_equal(SparseBitMatrix.from_dense(dense).to_dense(), dense)
