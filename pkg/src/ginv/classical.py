"""Classical generalized inverses: Moore-Penrose, Drazin, group, core, DMP, MPD, CMP."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decomp import HSD, index
from .matcore import (
    DEFAULT_TOL,
    NumericalError,
    Tol,
    ct,
    inv,
    rel_residual,
    require_square,
    spectral_norm,
)


class IndexTooLargeError(ValueError):
    """The requested inverse only exists for matrices of index at most one."""


def moore_penrose(a, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """Pseudoinverse via SVD with the shared rank cutoff."""
    a = np.asarray(a, dtype=np.complex128)
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((a.shape[1], a.shape[0]), dtype=np.complex128)
    cutoff = tol.rank_rtol * s[0] * max(a.shape)
    keep = s > cutoff
    inv_s = np.where(keep, 1.0 / np.where(keep, s, 1.0), 0.0)
    return ct(vh) @ (inv_s[:, None] * ct(u))


def _pinv_anchored(m: np.ndarray, p: int, tol: Tol) -> np.ndarray:
    # pseudoinverse of a p-fold product of a sigma1-normalized matrix; the
    # cutoff sits above accumulated rounding even when m is exactly zero
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    n = max(m.shape)
    cutoff = max(
        tol.rank_rtol * max(n, 2) ** 2 * (p + 1),
        tol.rank_rtol * (float(s[0]) if s.size else 0.0) * n,
    )
    keep = s > cutoff
    inv_s = np.where(keep, 1.0 / np.where(keep, s, 1.0), 0.0)
    return ct(vh) @ (inv_s[:, None] * ct(u))


def drazin(a, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """Drazin inverse a^k (a^(2k+1))^+ a^k with k = index(a).

    Validated against the three defining identities; fails loudly instead
    of returning a silently wrong inverse on ill-conditioned input.
    """
    a = require_square(a)
    k = index(a, tol)
    if k == 0:
        return inv(a, tol)
    s1 = spectral_norm(a)
    if s1 == 0.0:
        return np.zeros_like(a)
    b = a / s1
    bk = np.linalg.matrix_power(b, k)
    m = np.linalg.matrix_power(b, 2 * k + 1)
    ad = (bk @ _pinv_anchored(m, 2 * k + 1, tol) @ bk) / s1
    _validate_drazin(a, ad, k, tol)
    return ad


def _validate_drazin(a, x, k, tol: Tol) -> None:
    r = drazin_residuals(a, x, k)
    if max(r) > tol.eq_rtol:
        raise NumericalError(
            f"Drazin residuals {tuple(f'{v:.2e}' for v in r)} exceed {tol.eq_rtol:.1e}"
        )


def group_inverse(a, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """Drazin inverse restricted to index at most one."""
    a = require_square(a)
    k = index(a, tol)
    if k > 1:
        raise IndexTooLargeError(f"group inverse needs index <= 1, got {k}")
    return drazin(a, tol)


def core_inverse(a, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """a^# a a^+ for index at most one."""
    return group_inverse(a, tol) @ a @ moore_penrose(a, tol)


def dmp(a, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """a^D a a^+."""
    a = require_square(a)
    return drazin(a, tol) @ a @ moore_penrose(a, tol)


def mpd(a, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """a^+ a a^D."""
    a = require_square(a)
    return moore_penrose(a, tol) @ a @ drazin(a, tol)


def cmp(a, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """a^+ a a^D a a^+ (pseudoinverse sandwich of the core part)."""
    a = require_square(a)
    p = moore_penrose(a, tol)
    return p @ a @ drazin(a, tol) @ a @ p


def penrose_residuals(a, x) -> tuple[float, float, float, float]:
    """Relative residuals of the four defining pseudoinverse identities."""
    a = np.asarray(a, dtype=np.complex128)
    x = np.asarray(x, dtype=np.complex128)
    axa = a @ x @ a
    xax = x @ a @ x
    axp = a @ x
    xap = x @ a
    return (
        rel_residual(axa, a),
        rel_residual(xax, x),
        rel_residual(ct(axp), axp),
        rel_residual(ct(xap), xap),
    )


def drazin_residuals(a, x, k: int) -> tuple[float, float, float]:
    """Relative residuals of x a x = x, a x = x a, a^(k+1) x = a^k."""
    a = np.asarray(a, dtype=np.complex128)
    x = np.asarray(x, dtype=np.complex128)
    ak = np.linalg.matrix_power(a, k)
    return (
        rel_residual(x @ a @ x, x),
        rel_residual(a @ x, x @ a),
        rel_residual(np.linalg.matrix_power(a, k + 1) @ x, ak),
    )


@dataclass(frozen=True)
class BlockForms:
    """The Drazin, DMP and MPD inverses evaluated from the block decomposition."""

    drazin: np.ndarray
    dmp: np.ndarray
    mpd: np.ndarray


def classical_block_forms(h: HSD, tol: Tol = DEFAULT_TOL) -> BlockForms:
    """Evaluate a^D, a^D a a^+ and a^+ a a^D from the core block sigma k.

    With m = sigma k and d = m^D:
      a^D   = u [[d, d^2 sigma l], [0, 0]] u*
      dmp   = u [[d, 0], [0, 0]] u*
      mpd   = u [[k* k d, k* k d^2 sigma l], [l* k d, l* k d^2 sigma l]] u*
    The same Drazin routine is applied recursively to the r x r core.
    """
    d = drazin(h.core_clean(tol), tol)
    m = h.n - h.r
    d2sl = d @ d @ h.sigma @ h.l
    z_bl = np.zeros((m, h.r), dtype=np.complex128)
    z_br = np.zeros((m, m), dtype=np.complex128)
    kk = ct(h.k) @ h.k
    lk = ct(h.l) @ h.k
    return BlockForms(
        drazin=h.embed(d, d2sl, z_bl, z_br),
        dmp=h.embed(d, np.zeros((h.r, m), dtype=np.complex128), z_bl, z_br),
        mpd=h.embed(kk @ d, kk @ d2sl, lk @ d, lk @ d2sl),
    )
