from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from conftest import int_matrices
from markov_complexity.intlin import (IntMatrix, InvalidInput, LatticeBasis, ext_gcd_coefficients,
                                      format_matrix, gale_transforms, hnf, integer_grading,
                                      kernel_basis, parse_matrix, positive_grading_witness, rank,
                                      row_space_basis, sign_normalize)


def det(rows):
    """Exact determinant by Fraction elimination (test oracle)."""
    M = [[Fraction(x) for x in r] for r in rows]
    n, d = len(M), Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def test_hnf_small_example():
    H, U = hnf(IntMatrix([[2, 4], [1, 3]]))
    assert H.rows == ((1, 1), (0, 2))
    assert U.matmul(IntMatrix([[2, 4], [1, 3]])) == H


def test_hnf_zero_rows_last():
    H, _ = hnf(IntMatrix([[0, 0], [2, 2], [1, 1]]))
    assert H.rows == ((1, 1), (0, 0), (0, 0))


@given(int_matrices(max_m=4, max_n=4))
def test_hnf_is_unimodular_echelon(M):
    H, U = hnf(M)
    assert U.matmul(M) == H
    assert abs(det(U.rows)) == 1
    last = -1
    seen_zero = False
    for row in H.rows:
        if not any(row):
            seen_zero = True
            continue
        assert not seen_zero
        p = next(j for j, x in enumerate(row) if x)
        assert p > last and row[p] > 0
        last = p
        for above in H.rows[:H.rows.index(row)]:
            assert 0 <= above[p] < row[p]


def test_kernel_basis_example():
    K = kernel_basis(IntMatrix([[3, 3, 4, 5], [2, 3, 0, 0]]))
    assert K.basis_rows == ((3, -2, 3, -3), (0, 0, 5, -4))


def test_kernel_of_full_column_rank_is_trivial():
    assert kernel_basis(IntMatrix.identity(3)).dim == 0


@given(int_matrices())
def test_kernel_basis_annihilates_and_has_right_dimension(A):
    K = kernel_basis(A)
    assert K.dim == A.n - rank(A)
    for v in K.basis_rows:
        assert not any(A.apply(v))


@given(int_matrices(max_n=4, lo=-2, hi=2), st.lists(st.integers(-2, 2), min_size=4, max_size=4))
def test_kernel_basis_is_saturated(A, coeffs):
    # any integer kernel vector divided by the gcd stays in the lattice
    K = kernel_basis(A)
    v = [0] * A.n
    for c, row in zip(coeffs, K.basis_rows):
        v = [a + c * b for a, b in zip(v, row)]
    g = gcd(*v)
    if g:
        assert K.contains([x // g for x in v])


def test_lattice_membership_and_equality():
    L = LatticeBasis(3, ((2, 0, 1), (0, 1, 1)), canonical=False)
    assert L.contains((2, 1, 2)) and not L.contains((1, 0, 0))
    assert L.same_lattice(LatticeBasis(3, ((2, 1, 2), (0, 1, 1)), canonical=False))


def test_gale_transforms_are_kernel_columns():
    A = IntMatrix([[3, 3, 4, 5], [2, 3, 0, 0]])
    assert gale_transforms(A) == [(3, 0), (-2, 0), (3, 5), (-3, -4)]


def test_positive_grading():
    y = positive_grading_witness(IntMatrix([[1, 2, 3]]))
    assert y is not None and y[0] > 0
    assert positive_grading_witness(IntMatrix([[1, -1]])) is None
    assert integer_grading(IntMatrix([[0, 1, 2, 3], [1, 1, 1, 1]])) is not None


@given(int_matrices(max_m=3, max_n=4))
def test_grading_witness_matches_orthant_test(A):
    y = positive_grading_witness(A)
    # oracle: a nonnegative nonzero kernel vector with small entries blocks any grading
    import itertools
    blocked = any(any(t) and not any(A.apply(t)) for t in itertools.product(range(4), repeat=A.n))
    if blocked:
        assert y is None
    if y is not None:
        assert all(sum(a * b for a, b in zip(y, A.column(j))) > 0 for j in range(A.n))


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=5).filter(any))
def test_ext_gcd_coefficients(c):
    lam = ext_gcd_coefficients(c)
    assert sum(a * b for a, b in zip(lam, c)) == gcd(*c)


def test_ext_gcd_prefers_short_support():
    assert ext_gcd_coefficients((3, 7, 2021)) == (-2, 1, 0)
    assert ext_gcd_coefficients((1, 11)) == (1, 0)


def test_sign_normalize():
    assert sign_normalize((0, -1, 2)) == (0, 1, -2)
    assert sign_normalize((0, 1, -2)) == (0, 1, -2)


def test_row_space_basis_keeps_original_rows():
    M = IntMatrix([[1, 1, 0], [2, 2, 0], [0, 1, 1]])
    assert row_space_basis(M).rows == ((1, 1, 0), (0, 1, 1))


def test_matrix_format_parse():
    M = parse_matrix("# comment\n2 3\n1 -2 3\n0 0 7\n")
    assert M.rows == ((1, -2, 3), (0, 0, 7))
    with pytest.raises(InvalidInput):
        parse_matrix("2 2\n1 2\n")
    with pytest.raises(InvalidInput):
        parse_matrix("1 2\n1 x\n")


@given(int_matrices(max_m=4, max_n=5, lo=-100, hi=100))
def test_matrix_format_round_trip(M):
    assert parse_matrix(format_matrix(M, comment="note")) == M
