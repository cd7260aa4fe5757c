"""Tests for the matrix substrate: tolerances, SVD, rank, equality, inversion."""

import numpy as np
import pytest
from hypothesis import given

from fixtures import A1, A1_PINV, A1_RANK, A2, A2_RANK, X1, jordan_nilpotent
from ginv.classical import moore_penrose
from ginv.matcore import (
    SingularError,
    Tol,
    approx_eq,
    as_matrix,
    ct,
    fro,
    inv,
    power_rank,
    rank,
    rel_residual,
    robust_rank,
    singular_values,
    svd,
    truncate_spectrum,
)
from strategies import complex_matrices


def test_tol_rejects_bad_values():
    with pytest.raises(ValueError):
        Tol(rank_rtol=-1.0)
    with pytest.raises(ValueError):
        Tol(eq_rtol=0.0)


def test_tol_strict_is_tighter():
    assert Tol.strict().eq_rtol < Tol().eq_rtol


def test_as_matrix_rejects_bad_input():
    with pytest.raises(ValueError):
        as_matrix([1, 2, 3])
    with pytest.raises(ValueError):
        as_matrix(np.zeros((0, 3)))
    with pytest.raises(ValueError):
        as_matrix([[np.nan, 0], [0, 1]])
    with pytest.raises(ValueError):
        as_matrix([[np.inf, 0], [0, 1]])


def test_svd_identity():
    u, s, v = svd(np.eye(3))
    assert np.allclose(s, [1.0, 1.0, 1.0])


def test_svd_zero():
    _, s, _ = svd(np.zeros((2, 2)))
    assert np.allclose(s, [0.0, 0.0])


def test_svd_fixture_has_two_nonzero_singular_values():
    # rank frozen from the exact rational oracle
    _, s, _ = svd(A1)
    assert np.count_nonzero(s > 1e-12 * s[0]) == A1_RANK
    assert s[:A1_RANK].min() > 0.1


@given(complex_matrices())
def test_svd_reconstructs(a):
    u, s, v = svd(a)
    n = a.shape[0]
    assert rel_residual(u @ (s[:, None] * np.eye(n)) @ ct(v), a) < 1e-12
    assert np.all(np.diff(s) <= 1e-12)
    assert rel_residual(ct(u) @ u, np.eye(n)) < 1e-12
    assert rel_residual(ct(v) @ v, np.eye(n)) < 1e-12


def test_rank_examples(strict):
    assert rank(A1, strict) == A1_RANK
    assert rank(A2, strict) == A2_RANK
    for n in (1, 3, 5):
        assert rank(np.eye(n), strict) == n
    assert rank(np.zeros((3, 3)), strict) == 0


@given(complex_matrices())
def test_rank_invariants(a):
    tol = Tol()
    r = rank(a, tol)
    assert rank(ct(a), tol) == r
    assert rank(moore_penrose(a, tol) @ a, tol) == r


def test_approx_eq_examples(tol):
    assert approx_eq(A1, A1, tol)
    assert approx_eq(np.zeros((2, 2)), np.zeros((2, 2)), tol)
    p = A1_PINV
    assert not approx_eq(p @ A1 @ X1 @ A1, A1 @ X1 @ A1 @ p, tol)


def test_approx_eq_shape_mismatch():
    with pytest.raises(ValueError):
        approx_eq(np.eye(2), np.eye(3))


@given(complex_matrices(), complex_matrices())
def test_approx_eq_reflexive_symmetric(a, b):
    tol = Tol()
    assert approx_eq(a, a, tol)
    if a.shape == b.shape:
        assert approx_eq(a, b, tol) == approx_eq(b, a, tol)


def test_inv_examples(tol):
    assert approx_eq(inv(np.eye(3), tol), np.eye(3), tol)
    assert approx_eq(inv(np.diag([2.0, 4.0]), tol), np.diag([0.5, 0.25]), tol)
    with pytest.raises(SingularError):
        inv(np.diag([1.0, 0.0]), tol)


def test_inv_of_fixture_shift(strict):
    # A1 + C with C = I - A1 @ Y1 is invertible; validated by residual
    y = A1_PINV @ A1 @ X1 @ A1 @ A1_PINV
    c = np.eye(4) - A1 @ y
    p = inv(A1 + c, strict)
    assert rel_residual(p @ (A1 + c), np.eye(4)) < 1e-10


@given(complex_matrices())
def test_inv_roundtrip(a):
    tol = Tol()
    try:
        b = inv(a, tol)
    except SingularError:
        return
    assert approx_eq(b @ a, np.eye(a.shape[0]), tol)


def test_power_rank_of_nilpotent():
    j3 = jordan_nilpotent(3)
    assert power_rank(j3, 0) == 3
    assert power_rank(j3, 1) == 2
    assert power_rank(j3, 2) == 1
    assert power_rank(j3, 3) == 0
    assert power_rank(j3, 4) == 0


def test_robust_rank_ignores_product_noise():
    rng = np.random.default_rng(0)
    q, _ = np.linalg.qr(rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6)))
    d = np.diag([1.0, 0.5, 0.25, 0.0, 0.0, 0.0]).astype(complex)
    a = q @ d @ ct(q)  # exactly rank 3 up to representation noise
    assert robust_rank(a) == 3


def test_truncate_spectrum_flattens_noise():
    noise = 1e-15 * np.ones((2, 2), dtype=complex)
    assert fro(truncate_spectrum(noise, 1e-12)) == 0.0
    a = np.diag([2.0, 1e-15]).astype(complex)
    t = truncate_spectrum(a, 1e-12)
    assert singular_values(t)[1] == 0.0
    assert abs(t[0, 0] - 2.0) < 1e-12
