"""Tests for the weak CMP / MPD / DMP inverses and their linking identities."""

import numpy as np
import pytest
from hypothesis import given

from fixtures import A1, A1_PINV, A2, X1, X2, Y1, jordan_nilpotent
from ginv.classical import dmp, drazin, moore_penrose, mpd
from ginv.classify import gen_ep, gen_with_index
from ginv.decomp import hs_decompose, index
from ginv.matcore import Tol, approx_eq, ct, inv, rel_residual
from ginv.weakdrazin import (
    LEFT,
    RIGHT,
    NotMrwdError,
    mrwd_mpd_right,
    sample_mrwd,
)
from ginv.weakinv import (
    NotComplementaryError,
    NotIdempotentError,
    bott_duffin_verify,
    cd_expression,
    jacobson_ad_inverses,
    oblique_projector,
    projector_characterization,
    wcmp_pinv_relation,
    weak_cmp,
    weak_cmp_hs,
    weak_dmp,
    weak_mpd,
    weak_mpd_hs,
)
from strategies import index_specs


def _invertible(seed=0, n=4):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((n, n)) + np.eye(n) * 5


def test_weak_cmp_fixture(strict):
    assert rel_residual(weak_cmp(A1, X1, strict), Y1) < 1e-10


def test_weak_cmp_invertible(tol):
    a = _invertible(1)
    assert approx_eq(weak_cmp(a, inv(a, tol), tol), inv(a, tol), tol)


def test_weak_cmp_nilpotent(tol):
    j = jordan_nilpotent(3)
    assert np.allclose(weak_cmp(j, np.zeros((3, 3)), tol), 0)


def test_weak_cmp_rejects_bad_member(strict):
    with pytest.raises(NotMrwdError):
        weak_cmp(A1, A1_PINV, strict)
    # bypass for negative experiments
    weak_cmp(A1, A1_PINV, strict, check=False)


def test_weak_cmp_rank_matches_core(tol):
    a = gen_with_index(5, 3, 2, seed=9)
    y = weak_cmp(a, sample_mrwd(a, LEFT, 2, tol), tol)
    from ginv.matcore import power_rank, robust_rank

    assert robust_rank(y, tol) == power_rank(a, index(a, tol), tol)


def test_weak_cmp_hs_invertible_collapse(tol):
    a = _invertible(2, 3)
    h = hs_decompose(a, tol)
    z = inv(h.core, tol)
    assert approx_eq(weak_cmp_hs(h, z, tol), inv(a, tol), tol)


def test_weak_cmp_hs_fixture(strict):
    h = hs_decompose(A1, strict)
    z = (ct(h.u) @ X1 @ h.u)[: h.r, : h.r]
    assert rel_residual(weak_cmp_hs(h, z, strict), Y1) < 1e-10
    assert approx_eq(weak_cmp_hs(h, z, strict), weak_cmp(A1, X1, strict), strict)


def test_weak_cmp_hs_self_consistency(tol):
    x = sample_mrwd(A2, LEFT, 6, tol)
    h = hs_decompose(A2, tol)
    z = (ct(h.u) @ x @ h.u)[: h.r, : h.r]
    assert rel_residual(weak_cmp_hs(h, z, tol), weak_cmp(A2, x, tol)) < 1e-8


@given(index_specs())
def test_weak_cmp_hs_w_independence(spec):
    n, r, k, seed = spec
    tol = Tol()
    a = gen_with_index(n, r, k, seed)
    h = hs_decompose(a, tol)
    rng = np.random.default_rng(seed + 11)
    x0 = sample_mrwd(a, LEFT, seed + 7, tol)
    z = (ct(h.u) @ x0 @ h.u)[:r, :r]
    want = weak_cmp_hs(h, z, tol)
    for _ in range(2):
        # same z, fresh w block: the weak CMP inverse must not move
        g = rng.standard_normal((r, n - r)) + 1j * rng.standard_normal((r, n - r))
        x = np.zeros((n, n), dtype=complex)
        x[:r, :r] = z
        x[:r, r:] = z @ g
        x = h.u @ x @ ct(h.u)
        assert approx_eq(weak_cmp(a, x, tol), want, tol)


def test_weak_mpd_fixture(strict):
    assert rel_residual(weak_mpd(A1, X1, strict), Y1) < 1e-10


def test_weak_mpd_collapses(tol):
    a = _invertible(3)
    assert approx_eq(weak_mpd(a, inv(a, tol), tol), inv(a, tol), tol)
    b = gen_with_index(5, 3, 2, seed=4)
    assert approx_eq(weak_mpd(b, drazin(b, tol), tol), mpd(b, tol), tol)


def test_weak_mpd_hs_matches_direct(tol):
    x = sample_mrwd(A2, LEFT, 8, tol)
    h = hs_decompose(A2, tol)
    z = (ct(h.u) @ x @ h.u)[: h.r, : h.r]
    assert approx_eq(weak_mpd_hs(h, z, tol), weak_mpd(A2, x, tol), tol)


def test_weak_dmp_collapses(tol):
    a = _invertible(5)
    assert approx_eq(weak_dmp(a, inv(a, tol), tol), inv(a, tol), tol)
    b = gen_with_index(5, 3, 2, seed=6)
    assert approx_eq(weak_dmp(b, drazin(b, tol), tol), dmp(b, tol), tol)


def test_weak_dmp_fixture_formula(strict):
    # canonical right member: pinv(a) a drazin(a); compare against the raw product
    p = moore_penrose(A2, strict)
    z = mrwd_mpd_right(A2, strict)
    assert approx_eq(z, p @ A2 @ drazin(A2, strict), strict)
    assert approx_eq(weak_dmp(A2, z, strict), A2 @ z @ p, strict)


def test_weak_dmp_requires_right_member(strict):
    with pytest.raises(NotMrwdError):
        weak_dmp(A2, X2, strict)  # X2 is a left member, not a right one


def test_cd_expression_invertible(tol):
    a = _invertible(7)
    rec = cd_expression(a, inv(a, tol), tol)
    assert np.allclose(rec.c, 0, atol=1e-8)
    assert np.allclose(rec.d, 0, atol=1e-8)
    assert approx_eq(rec.y, inv(a, tol), tol)


def test_cd_expression_fixture(strict):
    rec = cd_expression(A1, X1, strict)
    assert rel_residual(rec.y_plus, Y1) < 1e-8
    assert rel_residual(rec.y_minus, Y1) < 1e-8
    assert approx_eq(rec.series_plus, rec.inv_plus, strict)
    assert approx_eq(rec.series_minus, rec.inv_minus, strict)


def test_cd_expression_nilpotent(tol):
    j = jordan_nilpotent(3)
    rec = cd_expression(j, np.zeros((3, 3)), tol)
    assert approx_eq(rec.c, np.eye(3), tol)
    assert approx_eq(rec.d, np.eye(3), tol)
    # finite alternating sum inverts j + identity
    assert approx_eq(rec.series_plus, inv(j + np.eye(3), tol), tol)


def test_jacobson_inverses(strict, tol):
    rec = cd_expression(A1, X1, strict)
    got = jacobson_ad_inverses(A1, rec.c, rec.d, rec.y, strict)
    assert rel_residual(got.inv_a_plus_d, inv(A1 + rec.d, strict)) < 1e-8
    assert rel_residual(got.inv_a_minus_d, inv(A1 - rec.d, strict)) < 1e-8
    a = _invertible(8)
    rec2 = cd_expression(a, inv(a, tol), tol)
    got2 = jacobson_ad_inverses(a, rec2.c, rec2.d, rec2.y, tol)
    assert approx_eq(got2.inv_a_plus_d, inv(a, tol), tol)


def test_oblique_projector_basics(tol):
    assert approx_eq(oblique_projector(np.eye(2), np.eye(2), tol), np.eye(2), tol)
    e1 = np.array([[1.0], [0.0]])
    null_of = np.array([[1.0, 0.0]])  # null space = span(e2)
    assert approx_eq(oblique_projector(e1, null_of, tol), np.diag([1.0, 0.0]), tol)


def test_oblique_projector_fixture(strict):
    ak = np.linalg.matrix_power(A1, 2)
    null_of = X1 @ A1 @ moore_penrose(A1, strict)
    p = oblique_projector(ak, null_of, strict)
    assert rel_residual(p, A1 @ Y1) < 1e-8
    assert approx_eq(p @ p, p, strict)


def test_oblique_projector_not_complementary(tol):
    e1 = np.array([[1.0], [0.0]])
    with pytest.raises(NotComplementaryError):
        oblique_projector(e1, np.array([[0.0, 1.0]]), tol)  # null space = span(e1) = range
    with pytest.raises(NotComplementaryError):
        oblique_projector(np.eye(2), np.array([[1.0, 0.0]]), tol)  # dims differ


def test_projector_characterization_fixture(strict):
    y = weak_cmp(A1, X1, strict)
    rec = projector_characterization(A1, X1, y, strict)
    assert rec.clauses() == (True, True, True)
    assert rec.consistent


def test_projector_characterization_rejects_pinv(strict):
    rec = projector_characterization(A2, X2, moore_penrose(A2, strict), strict)
    assert rec.clauses() == (False, False, False)


def test_projector_characterization_rejects_perturbation(strict):
    y = weak_cmp(A1, X1, strict)
    rng = np.random.default_rng(12)
    noise = rng.standard_normal(y.shape)
    rec = projector_characterization(A1, X1, y + 1e-2 * noise / np.linalg.norm(noise), strict)
    assert rec.clauses() == (False, False, False)


def test_bott_duffin_triples_fixture(strict):
    p = moore_penrose(A1, strict)
    y = weak_cmp(A1, X1, strict)
    assert bott_duffin_verify(A1, y, p @ A1 @ X1 @ A1, A1 @ X1 @ A1 @ p, strict)
    ym = weak_mpd(A1, X1, strict)
    assert bott_duffin_verify(A1, ym, p @ X1 @ A1 @ A1, A1 @ p @ X1 @ A1, strict)
    z = mrwd_mpd_right(A1, strict)
    yd = weak_dmp(A1, z, strict)
    assert bott_duffin_verify(A1, yd, A1 @ z @ p @ A1, A1 @ A1 @ z @ p, strict)


def test_bott_duffin_rejects_non_idempotent(tol):
    a = np.eye(2)
    with pytest.raises(NotIdempotentError):
        bott_duffin_verify(a, a, 2 * np.eye(2), np.eye(2), tol)


def test_bott_duffin_false_for_wrong_projector(tol):
    a = _invertible(13, 3)
    y = inv(a, tol)
    e = np.eye(3)
    f = np.diag([1.0, 1.0, 0.0])  # idempotent but not equal to a @ y
    assert not bott_duffin_verify(a, y, e, f, tol)


def test_wcmp_pinv_relation_invertible(tol):
    a = _invertible(14, 3)
    b = inv(a, tol)
    rec = wcmp_pinv_relation(a, b, a, tol)  # the only members are a^-1 and a
    assert rec.lhs_holds and rec.rhs_holds
    assert approx_eq(rec.y, b, tol)
    assert approx_eq(rec.y1, a, tol)


def test_wcmp_pinv_relation_ep_drazin(tol):
    a = gen_ep(4, 2, seed=21)
    p = moore_penrose(a, tol)
    rec = wcmp_pinv_relation(a, drazin(a, tol), drazin(p, tol), tol)
    assert rec.lhs_holds and rec.rhs_holds


def test_wcmp_pinv_relation_fixture_agrees(strict):
    p = moore_penrose(A1, strict)
    x1 = sample_mrwd(p, LEFT, 17, strict)
    rec = wcmp_pinv_relation(A1, sample_mrwd(A1, LEFT, 16, strict), x1, strict)
    assert rec.consistent


@given(index_specs())
def test_wcmp_pinv_relation_generated(spec):
    n, r, k, seed = spec
    tol = Tol()
    a = gen_with_index(n, r, k, seed)
    p = moore_penrose(a, tol)
    x = sample_mrwd(a, LEFT, seed + 30, tol)
    x1 = sample_mrwd(p, LEFT, seed + 31, tol)
    assert wcmp_pinv_relation(a, x, x1, tol).consistent
