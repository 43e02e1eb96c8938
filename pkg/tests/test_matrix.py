from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cutnorm_lab.matrix import (Matrix, closed_form_tri_cut_norm, harmonic, harmonic_numbers,
                                identity, kronecker, load_matrix, make_An, make_An_tensor,
                                matrix_from_csv, matrix_from_json, matrix_to_json, ones,
                                save_matrix, schur, triangular_cut, triangular_mask, zeros)
from oracles import an_entries, harmonic_fraction


def small_square(max_n=5):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.floats(-10, 10, allow_nan=False), min_size=n, max_size=n),
                           min_size=n, max_size=n))


def test_an_entries():
    for n in (1, 2, 3, 7):
        assert make_An(n).to_rows() == an_entries(n)
    A = make_An(4).entries
    assert A[1, 0] == 1.0 and A[0, 1] == -1.0 and A[3, 0] == pytest.approx(1 / 3)
    assert make_An(5).is_zero_diagonal


def test_an_tensor_is_lexicographic_kron():
    A = make_An(3).entries
    K = make_An_tensor(3).entries
    assert K.shape == (9, 9)
    for i1, j1, i2, j2 in np.ndindex(3, 3, 3, 3):
        assert K[3 * i1 + i2, 3 * j1 + j2] == A[i1, j1] * A[i2, j2]


def test_constructions():
    assert identity(3).equals(Matrix(np.eye(3)))
    assert ones(2).to_rows() == [[1.0, 1.0], [1.0, 1.0]]
    assert zeros(2).to_rows() == [[0.0, 0.0], [0.0, 0.0]]
    assert triangular_mask(3).to_rows() == [[1, 0, 0], [1, 1, 0], [1, 1, 1]]


def test_matrix_is_immutable_copy():
    src = np.zeros((2, 2))
    M = Matrix(src)
    src[0, 0] = 5
    assert M.entries[0, 0] == 0
    with pytest.raises(ValueError):
        M.entries[0, 0] = 1.0


def test_rejects_non_square():
    with pytest.raises(ValueError):
        Matrix(np.zeros((2, 3)))


def test_arithmetic_and_symmetry():
    A = Matrix([[0, 1], [1, 0]])
    assert A.is_symmetric
    assert (A + A).equals(2 * A)
    assert (A - A).equals(zeros(2))
    assert (-A).equals(A * -1)
    assert not make_An(3).is_symmetric
    assert Matrix([[0, 1], [1 + 1e-13, 0]]).symmetric_within(1e-12)


def test_schur_dimension_mismatch():
    with pytest.raises(ValueError):
        schur(identity(2), identity(3))


def test_triangular_cut_keeps_lower_and_diagonal():
    A = Matrix(np.arange(9.0).reshape(3, 3))
    assert triangular_cut(A).equals(schur(triangular_mask(3), A))
    assert triangular_cut(A).to_rows() == [[0, 0, 0], [3, 4, 0], [6, 7, 8]]


@settings(max_examples=50, deadline=None)
@given(small_square(3), small_square(3), small_square(3), small_square(3))
def test_mixed_product(a, b, c, d):
    if len(a) != len(b) or len(c) != len(d):
        return
    lhs = kronecker(schur(a, b), schur(c, d)).entries
    rhs = schur(kronecker(a, c), kronecker(b, d)).entries
    np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(small_square(4))
def test_mask_identity_zero_diagonal(rows):
    A = np.array(rows)
    np.fill_diagonal(A, 0.0)
    n = len(A)
    assert schur(triangular_mask(n * n), kronecker(A, A)).equals(kronecker(triangular_cut(A), A))


def test_mask_identity_needs_zero_diagonal():
    A = Matrix([[1.0, 1.0], [0.0, 0.0]])
    assert not schur(triangular_mask(4), kronecker(A, A)).equals(kronecker(triangular_cut(A), A))


def test_harmonic_matches_fractions():
    assert harmonic(0) == 0.0
    for k in (1, 2, 5, 11, 40):
        assert harmonic(k) == pytest.approx(float(harmonic_fraction(k)), rel=1e-15)
    np.testing.assert_allclose(harmonic_numbers(4), [0, 1, 1.5, 11 / 6, 25 / 12])


def test_closed_form_values():
    assert closed_form_tri_cut_norm(2) == 0.25
    assert closed_form_tri_cut_norm(3) == pytest.approx(2.5 / 9, abs=1e-15)
    for n in range(2, 13):
        exact = (n * (harmonic_fraction(n - 1) - 1) + 1) / Fraction(n * n)
        assert closed_form_tri_cut_norm(n) == pytest.approx(float(exact), abs=1e-15)
    with pytest.raises(ValueError):
        closed_form_tri_cut_norm(1)


@settings(max_examples=30, deadline=None)
@given(small_square())
def test_json_round_trip(rows):
    M = Matrix(rows)
    assert matrix_from_json(matrix_to_json(M)).equals(M)


def test_file_round_trip(tmp_path):
    M = make_An(6)
    for fmt in ("json", "csv"):
        p = tmp_path / f"m.{fmt}"
        save_matrix(p, M, fmt=fmt)
        assert load_matrix(p).equals(M)


def test_bad_files():
    with pytest.raises(ValueError):
        matrix_from_json('{"n": 3, "rows": [[1, 2], [3, 4]]}')
    with pytest.raises(ValueError):
        matrix_from_csv("1,2\n3\n")


def test_inductive_harmonic_identity():
    for n in range(1, 51):
        lhs = sum(i / (n + 1 - i) for i in range(n + 1))
        assert lhs == pytest.approx((n + 1) * harmonic(n) - n, rel=1e-12)
