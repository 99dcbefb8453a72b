import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homres import (DimensionError, IntMatrix, determinant, in_column_span, kernel_basis,
                    smith_normal_form, solve_linear)
from oracles import det_fraction, determinantal_invariants, random_int_matrix


def matrices(max_rows=6, max_cols=6, bound=9):
    return st.integers(0, max_rows).flatmap(
        lambda m: st.integers(0, max_cols).flatmap(
            lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                               min_size=m, max_size=m).map(lambda rows: IntMatrix(rows, m, n))))


def is_smith(S: IntMatrix) -> bool:
    m, n = S.shape
    for i in range(m):
        for j in range(n):
            if i != j and S[i, j]:
                return False
    diag = [S[i, i] for i in range(min(m, n))]
    if any(d < 0 for d in diag):
        return False
    nonzero = [d for d in diag if d]
    if diag[:len(nonzero)] != nonzero:
        return False
    return all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


# -- IntMatrix ------------------------------------------------------------


def test_shapes_of_empty_matrices_are_kept():
    a = IntMatrix.zeros(3, 0)
    b = IntMatrix.zeros(0, 2)
    assert a.shape == (3, 0)
    assert (a @ b).shape == (3, 2)
    assert (a @ b).is_zero()
    assert (b @ IntMatrix.zeros(2, 4)).shape == (0, 4)
    assert a.T.shape == (0, 3)


def test_ragged_rows_rejected():
    with pytest.raises(DimensionError):
        IntMatrix([[1, 2], [3]])
    with pytest.raises(DimensionError):
        IntMatrix([[1, 2]]) @ IntMatrix([[1, 2]])


def test_kron_indexing():
    A = IntMatrix([[1, 2], [3, 4]])
    B = IntMatrix([[0, 1], [1, 0]])
    K = A.kron(B)
    # K[(a, b), (c, d)] = A[a, c] * B[b, d]
    assert K[0, 1] == 1 and K[1, 0] == 1 and K[2, 1] == 3 and K[3, 0] == 3
    assert K[1, 2] == 2 and K[2, 3] == 4 and K[1, 3] == 0


def test_block_and_submatrix_roundtrip():
    A = IntMatrix([[1, 2], [3, 4]])
    M = IntMatrix.block([[A, IntMatrix.zeros(2, 1)], [IntMatrix.zeros(1, 2), IntMatrix([[7]])]])
    assert M.submatrix(range(2), range(2)) == A
    assert M[2, 2] == 7


# -- Smith normal form ----------------------------------------------------


def test_smith_textbook_example():
    A = IntMatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    dec = smith_normal_form(A)
    assert dec.diagonal == (2, 6, 12)
    assert dec.U @ A @ dec.V == dec.S


def test_smith_of_zero_and_empty():
    for A in (IntMatrix.zeros(2, 3), IntMatrix.zeros(0, 3), IntMatrix.zeros(2, 0)):
        dec = smith_normal_form(A)
        assert dec.rank == 0
        assert dec.U @ A @ dec.V == dec.S


def test_smith_is_deterministic():
    rng = random.Random(7)
    A = IntMatrix(random_int_matrix(rng, 5, 4))
    assert smith_normal_form(A) == smith_normal_form(A)


@given(matrices())
def test_smith_identities(A):
    dec = smith_normal_form(A)
    assert dec.U @ A @ dec.V == dec.S
    assert abs(determinant(dec.U)) == 1
    assert abs(determinant(dec.V)) == 1
    assert is_smith(dec.S)


@given(matrices(5, 5))
def test_smith_matches_determinantal_divisors(A):
    dec = smith_normal_form(A)
    assert (dec.invariant_factors, dec.rank) == determinantal_invariants(A.tolist())


@given(st.integers(0, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_fraction_oracle(rows):
    n = len(rows)
    assert determinant(IntMatrix(rows, n, n)) == (det_fraction(rows) if n else 1)


# -- solving --------------------------------------------------------------


@given(matrices(5, 5), st.integers(0, 2**32))
def test_solve_recovers_consistent_systems(A, seed):
    rng = random.Random(seed)
    x = IntMatrix(random_int_matrix(rng, A.cols, 2, 4), A.cols, 2)
    B = A @ x
    X = solve_linear(A, B)
    assert X is not None and A @ X == B


def test_solve_reports_no_integer_solution():
    assert solve_linear(IntMatrix([[2]]), IntMatrix([[1]])) is None
    assert solve_linear(IntMatrix([[1], [1]]), IntMatrix([[1], [2]])) is None
    assert solve_linear(IntMatrix([[2, 4]]), IntMatrix([[6]])) is not None


def test_solve_zero_right_side_gives_zero():
    A = IntMatrix([[1, 2], [3, 4]])
    assert solve_linear(A, IntMatrix.zeros(2, 1)) == IntMatrix.zeros(2, 1)


@given(matrices())
def test_kernel_basis_is_a_lattice_basis(A):
    K = kernel_basis(A)
    assert (A @ K).is_zero()
    # rank-nullity
    assert K.cols == A.cols - smith_normal_form(A).rank
    # saturated: K extends to a unimodular matrix, i.e. its maximal minors have gcd 1
    if K.cols:
        assert determinantal_invariants(K.tolist()) == ((), K.cols)


def test_in_column_span():
    A = IntMatrix([[2, 0], [0, 3]])
    assert in_column_span(A, IntMatrix([[4], [3]]))
    assert not in_column_span(A, IntMatrix([[1], [0]]))
