"""Minimal-rank weak Drazin inverses: certification, canonical members, sampling.

A left weak Drazin inverse of a square matrix a solves x a^(k+1) = a^k for
k = index(a); the minimal-rank members additionally satisfy
rank(x) = rank(a^D) = rank(a^k). The right-sided family mirrors this with
a^(k+1) x = a^k. Every weak inverse downstream is parameterized by a member
of one of these families.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classical import drazin, moore_penrose
from .decomp import hs_decompose, index
from .matcore import (
    DEFAULT_TOL,
    Tol,
    approx_eq,
    ct,
    fro,
    power_rank,
    rank,
    require_square,
    robust_rank,
    spectral_norm,
    truncate_spectrum,
)

LEFT = "left"
RIGHT = "right"


class NotMrwdError(ValueError):
    """The supplied matrix failed minimal-rank weak Drazin certification."""


@dataclass(frozen=True)
class WdCertificate:
    """Verified claim that x is a minimal-rank (left|right) weak Drazin inverse.

    residual_wd is |x a^(k+1) - a^k| (left) or |a^(k+1) x - a^k| (right) in
    Frobenius norm; validity requires the residual below the relative
    threshold and rank(x) equal to rank(a^k).
    """

    side: str
    k: int
    residual_wd: float
    rank_x: int
    rank_ad: int
    valid: bool


def _check_side(side: str) -> None:
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be {LEFT!r} or {RIGHT!r}, got {side!r}")


def certify_mrwd(a, x, side: str = LEFT, tol: Tol = DEFAULT_TOL) -> WdCertificate:
    """Check the weak Drazin equation and the rank condition for x against a."""
    a = require_square(a)
    x = require_square(x)
    _check_side(side)
    if a.shape != x.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {x.shape}")
    k = index(a, tol)
    ak = np.linalg.matrix_power(a, k)
    ak1 = np.linalg.matrix_power(a, k + 1)
    residual = fro(x @ ak1 - ak) if side == LEFT else fro(ak1 @ x - ak)
    rank_x = robust_rank(x, tol)
    rank_ad = power_rank(a, k, tol)
    valid = residual <= tol.eq_rtol * max(1.0, fro(ak)) and rank_x == rank_ad
    return WdCertificate(
        side=side,
        k=k,
        residual_wd=float(residual),
        rank_x=rank_x,
        rank_ad=rank_ad,
        valid=bool(valid),
    )


def require_mrwd(a, x, side: str = LEFT, tol: Tol = DEFAULT_TOL) -> WdCertificate:
    cert = certify_mrwd(a, x, side, tol)
    if not cert.valid:
        raise NotMrwdError(
            f"not a minimal-rank {side} weak Drazin inverse: "
            f"residual={cert.residual_wd:.3e}, rank {cert.rank_x} vs {cert.rank_ad}"
        )
    return cert


def mrwd_dmp(a, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """Canonical left member a^D a a^+ (the DMP inverse)."""
    a = require_square(a)
    return drazin(a, tol) @ a @ moore_penrose(a, tol)


def mrwd_mpd_right(a, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """Canonical right member a^+ a a^D (the MPD inverse)."""
    a = require_square(a)
    return moore_penrose(a, tol) @ a @ drazin(a, tol)


def _cgauss(rng: np.random.Generator, p: int, q: int) -> np.ndarray:
    return (rng.standard_normal((p, q)) + 1j * rng.standard_normal((p, q))) / np.sqrt(2.0)


def _sample_left(a: np.ndarray, rng: np.random.Generator, tol: Tol, floor: float) -> np.ndarray:
    # floor: absolute singular-value noise floor inherited from the original
    # matrix, so that a nilpotent core contaminated at eps * sigma1(top) is
    # recognized as rank-deficient instead of being inverted
    n = a.shape[0]
    u, s, vh = np.linalg.svd(a)
    cutoff = max(tol.rank_rtol * float(s[0]) * n, floor) if s.size else floor
    r = int(np.count_nonzero(s > cutoff))
    if r == 0:
        return np.zeros((n, n), dtype=np.complex128)
    if r == n:
        # invertible: the family is the singleton {a^-1}
        return np.linalg.solve(a, np.eye(n, dtype=np.complex128))
    w = vh @ u
    core = np.diag(s[:r]).astype(np.complex128) @ w[:r, :r]
    z = _sample_left(core, rng, tol, floor)  # strictly smaller problem
    wfree = z @ _cgauss(rng, r, n - r)  # columns stay inside range(z)
    x = np.zeros((n, n), dtype=np.complex128)
    x[:r, :r] = z
    x[:r, r:] = wfree
    return u @ x @ ct(u)


def sample_mrwd(a, side: str = LEFT, seed: int = 0, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """Draw a random minimal-rank weak Drazin inverse of a.

    The left family is exactly the set u [[z, w], [0, 0]] u* where z is a
    minimal-rank weak Drazin inverse of the core block sigma k and
    range(w) lies inside range(z); the sampler recurses on the core until
    it becomes invertible (unique member) or zero. Right-sided members are
    drawn through the conjugate-transpose duality with the left family of
    a*. Deterministic for a fixed (a, side, seed).
    """
    a = require_square(a)
    _check_side(side)
    rng = np.random.default_rng(seed)
    floor = tol.rank_rtol * spectral_norm(a) * 16 * max(a.shape[0], 2) ** 2
    if side == RIGHT:
        return ct(_sample_left(ct(a), rng, tol, floor))
    return _sample_left(a, rng, tol, floor)


def mrwd_pinv_structure_check(a, x1, tol: Tol = DEFAULT_TOL) -> bool:
    """Does x1 carry the block shape of a minimal-rank weak Drazin inverse of pinv(a)?

    In the basis of a's decomposition, pinv(a) has its nonzero content in the
    left column block, and the members x1 of its right-sided family are
    exactly u [[z1, 0], [w1, 0]] u* with z1 a certified right member for
    k* sigma^-1 and range(w1*) inside range(z1*). (The left-sided family of
    pinv(a) does not share this shape; the Drazin inverse of pinv(a) belongs
    to both families and always passes.)
    """
    a = require_square(a)
    x1 = require_square(x1)
    if rank(a, tol) == 0:
        # pinv(0) = 0, whose only minimal-rank weak Drazin inverse is 0
        return bool(approx_eq(x1, np.zeros_like(x1), tol))
    h = hs_decompose(a, tol)
    b = ct(h.u) @ x1 @ h.u
    r = h.r
    if not approx_eq(b[:r, r:], np.zeros_like(b[:r, r:]), tol):
        return False
    if not approx_eq(b[r:, r:], np.zeros_like(b[r:, r:]), tol):
        return False
    z1 = b[:r, :r]
    w1 = b[r:, :r]
    target = ct(h.k) @ h.sigma_inv()  # leading block of pinv(a)
    floor = tol.rank_rtol * spectral_norm(target) * 16 * max(r, 2) ** 2
    if not certify_mrwd(truncate_spectrum(target, floor), z1, RIGHT, tol).valid:
        return False
    stacked = np.hstack([ct(z1), ct(w1)])
    return robust_rank(stacked, tol) == robust_rank(ct(z1), tol)
