"""Dense complex-matrix substrate: tolerance policy, SVD, rank, equality, inversion.

Everything operates on plain 2-D numpy arrays of complex128. Values are never
mutated after construction, so results are safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

EPS = float(np.finfo(np.float64).eps)


class NumericalError(ArithmeticError):
    """A computed quantity failed its defining residual bound."""


class SingularError(NumericalError):
    """Inversion was requested for a numerically singular matrix."""


@dataclass(frozen=True)
class Tol:
    """Tolerance policy shared by every approximate decision.

    rank_rtol scales the singular-value cutoff behind rank decisions;
    eq_rtol scales the relative Frobenius threshold behind matrix equality.
    """

    rank_rtol: float = EPS
    eq_rtol: float = 1e-8

    def __post_init__(self) -> None:
        if self.rank_rtol < 0:
            raise ValueError("rank_rtol must be nonnegative")
        if self.eq_rtol <= 0:
            raise ValueError("eq_rtol must be positive")

    @classmethod
    def strict(cls) -> "Tol":
        """Tighter equality threshold for small integer fixtures."""
        return cls(eq_rtol=1e-10)


DEFAULT_TOL = Tol()


def as_matrix(obj) -> np.ndarray:
    """Coerce to a 2-D complex matrix, rejecting empty or non-finite input."""
    a = np.asarray(obj, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={a.ndim}")
    if a.shape[0] == 0 or a.shape[1] == 0:
        raise ValueError("matrix must have at least one row and one column")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix entries must be finite")
    return a


def require_square(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def ct(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a).conj().T


def fro(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def rel_residual(a, b) -> float:
    """Frobenius distance scaled by max(1, |a|, |b|)."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    return fro(a - b) / max(1.0, fro(a), fro(b))


def approx_eq(a, b, tol: Tol = DEFAULT_TOL) -> bool:
    """Relative Frobenius equality of two same-shaped matrices."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return rel_residual(a, b) <= tol.eq_rtol


def singular_values(a) -> np.ndarray:
    return np.linalg.svd(np.asarray(a, dtype=np.complex128), compute_uv=False)


def spectral_norm(a) -> float:
    return float(np.linalg.norm(np.asarray(a, dtype=np.complex128), 2))


def svd(a) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Full SVD a = u @ diag(s) @ v* with square unitary u, v."""
    a = as_matrix(a)
    u, s, vh = np.linalg.svd(a)
    return u, s, ct(vh)


def rank(a, tol: Tol = DEFAULT_TOL) -> int:
    """Singular values above rank_rtol * sigma1 * max(shape)."""
    a = np.asarray(a, dtype=np.complex128)
    s = singular_values(a)
    if s.size == 0 or s[0] == 0.0:
        return 0
    cutoff = tol.rank_rtol * s[0] * max(a.shape)
    return int(np.count_nonzero(s > cutoff))


def robust_rank(a, tol: Tol = DEFAULT_TOL) -> int:
    """Rank with extra cutoff headroom for matrices assembled from chained products.

    The plain cutoff rank_rtol * sigma1 * max(shape) is the same magnitude as
    the rounding that a few dense multiplications leave in exactly-zero
    directions; padding by another 4 * max(n, 2) keeps representation noise
    from registering as rank.
    """
    a = np.asarray(a, dtype=np.complex128)
    s = singular_values(a)
    if s.size == 0 or s[0] == 0.0:
        return 0
    cutoff = tol.rank_rtol * s[0] * max(a.shape) * 4 * max(max(a.shape), 2)
    return int(np.count_nonzero(s > cutoff))


def power_rank(a, k: int, tol: Tol = DEFAULT_TOL) -> int:
    """rank(a**k) with the cutoff anchored at sigma1(a)**k.

    Rounding in a k-fold product of a sigma1-normalized matrix stays near
    k*n*eps, while sigma1 of an exactly nilpotent power is pure residue;
    anchoring at sigma1(a)**k (= 1 after normalization) keeps such powers
    at rank zero instead of ranking their noise.
    """
    a = require_square(a)
    n = a.shape[0]
    if k == 0:
        return n
    s1 = spectral_norm(a)
    if s1 == 0.0:
        return 0
    b = np.linalg.matrix_power(a / s1, k)
    s = singular_values(b)
    cutoff = max(
        tol.rank_rtol * max(n, 2) ** 2 * (k + 1),
        tol.rank_rtol * float(s[0]) * n,
    )
    return int(np.count_nonzero(s > cutoff))


def truncate_spectrum(a, floor: float) -> np.ndarray:
    """Zero out singular values at or below an absolute noise floor.

    Blocks extracted from a larger decomposition inherit rounding at
    eps * sigma1(parent); flattening those directions to exact zero lets
    rank- and index-based routines see the true spectral structure.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.size == 0:
        return a
    u, s, vh = np.linalg.svd(a)
    if s.size == 0 or s[-1] > floor:
        return a
    keep = s > floor
    s_clean = np.where(keep, s, 0.0)
    return (u[:, : s.size] * s_clean) @ vh


def inv(a, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """Inverse via direct solve; SingularError below the rank cutoff."""
    a = require_square(a)
    n = a.shape[0]
    if rank(a, tol) < n:
        raise SingularError(f"matrix of size {n} is numerically singular")
    return np.linalg.solve(a, np.eye(n, dtype=np.complex128))


def block2x2(tl, tr, bl, br) -> np.ndarray:
    """Assemble [[tl, tr], [bl, br]], tolerating zero-width blocks."""
    top = np.hstack([tl, tr])
    bottom = np.hstack([bl, br])
    return np.vstack([top, bottom])
