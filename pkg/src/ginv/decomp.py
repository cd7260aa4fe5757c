"""Hartwig-Spindelbock decomposition, matrix index, and the block-form pseudoinverse."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matcore import (
    DEFAULT_TOL,
    Tol,
    block2x2,
    ct,
    power_rank,
    rank,
    require_square,
    truncate_spectrum,
)


class ZeroMatrixError(ValueError):
    """The block decomposition degenerates for the zero matrix (rank 0)."""


@dataclass(frozen=True)
class HSD:
    """Unitary block form a = u @ [[sigma k, sigma l], [0, 0]] @ u*.

    u is n x n unitary, sigma is the r x r positive diagonal of nonzero
    singular values, and the r rows of (k | l) are orthonormal, so
    k k* + l l* = I_r. l has zero width when a is invertible.
    """

    u: np.ndarray
    sigma: np.ndarray
    k: np.ndarray
    l: np.ndarray
    r: int

    @property
    def n(self) -> int:
        return self.u.shape[0]

    @property
    def core(self) -> np.ndarray:
        """Leading block sigma @ k; its weak inverses parameterize those of a."""
        return self.sigma @ self.k

    def core_clean(self, tol: Tol = DEFAULT_TOL) -> np.ndarray:
        """Core block with inherited rounding flattened to exact zeros.

        The core of a nilpotent (or nilpotent-heavy) matrix is exactly
        singular, but its computed entries carry eps * sigma1(a) residue;
        spectral routines (index, Drazin) need those directions at zero.
        """
        sigma1 = float(self.sigma[0, 0].real)
        floor = tol.rank_rtol * sigma1 * 16 * max(self.n, 2) ** 2
        return truncate_spectrum(self.core, floor)

    def sigma_inv(self) -> np.ndarray:
        return np.diag(1.0 / np.diag(self.sigma))

    def embed(self, tl, tr, bl, br) -> np.ndarray:
        """u @ [[tl, tr], [bl, br]] @ u* for r/(n-r)-sized blocks."""
        return self.u @ block2x2(tl, tr, bl, br) @ ct(self.u)

    def reconstruct(self) -> np.ndarray:
        m = self.n - self.r
        return self.embed(
            self.core,
            self.sigma @ self.l,
            np.zeros((m, self.r), dtype=np.complex128),
            np.zeros((m, m), dtype=np.complex128),
        )


def hs_decompose(a, tol: Tol = DEFAULT_TOL) -> HSD:
    """Decompose a square nonzero matrix into Hartwig-Spindelbock form.

    Construction: from the SVD a = p @ diag(s, 0) @ q*, take u = p and
    w = q* p, so a = u @ (diag(s, 0) w) @ u*; the first r rows of w split
    into (k | l) and are orthonormal by unitarity of w.
    """
    a = require_square(a)
    r = rank(a, tol)
    if r == 0:
        raise ZeroMatrixError("the zero matrix has no Hartwig-Spindelbock form")
    u, s, vh = np.linalg.svd(a)
    w = vh @ u
    return HSD(
        u=u,
        sigma=np.diag(s[:r]).astype(np.complex128),
        k=w[:r, :r],
        l=w[:r, r:],
        r=r,
    )


def index(a, tol: Tol = DEFAULT_TOL) -> int:
    """Smallest k with rank(a^k) = rank(a^(k+1)); 0 for invertible a."""
    a = require_square(a)
    n = a.shape[0]
    prev = n  # rank of a^0
    for k in range(n + 1):
        nxt = power_rank(a, k + 1, tol)
        if nxt == prev:
            return k
        prev = nxt
    return n


def mp_from_hs(h: HSD) -> np.ndarray:
    """Moore-Penrose inverse assembled from the block form: u [[k* s^-1, 0], [l* s^-1, 0]] u*."""
    si = h.sigma_inv()
    m = h.n - h.r
    return h.embed(
        ct(h.k) @ si,
        np.zeros((h.r, m), dtype=np.complex128),
        ct(h.l) @ si,
        np.zeros((m, m), dtype=np.complex128),
    )
