"""Matrix-class predicates, equivalence checkers, generators, and an exact oracle.

Checkers evaluate both sides of an equivalence independently and report them;
callers assert agreement (that is the executable form of each "if and only
if"). Generators build matrices with prescribed rank and index by conjugating
a core-nilpotent block form with bounded conditioning. The exact oracle
row-reduces over the rationals and backs the floating-point rank, index,
Moore-Penrose and Drazin paths on small integer matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .classical import drazin, moore_penrose
from .decomp import hs_decompose, index
from .matcore import (
    DEFAULT_TOL,
    NumericalError,
    Tol,
    approx_eq,
    ct,
    power_rank,
    rank,
    require_square,
    robust_rank,
)
from .weakdrazin import LEFT, require_mrwd
from .weakinv import weak_cmp, weak_mpd


class InfeasibleSpecError(ValueError):
    """No matrix exists (or is constructible here) with the requested shape data."""


# ---------------------------------------------------------------------------
# class predicates
# ---------------------------------------------------------------------------


def is_nilpotent(a, tol: Tol = DEFAULT_TOL) -> bool:
    """True when some power of a vanishes."""
    a = require_square(a)
    return power_rank(a, index(a, tol), tol) == 0


def is_ep(a, tol: Tol = DEFAULT_TOL) -> bool:
    """True when a commutes with its pseudoinverse."""
    a = require_square(a)
    p = moore_penrose(a, tol)
    return bool(approx_eq(p @ a, a @ p, tol))


def is_partial_isometry(a, tol: Tol = DEFAULT_TOL) -> bool:
    """True when the pseudoinverse equals the conjugate transpose."""
    a = require_square(a)
    return bool(approx_eq(moore_penrose(a, tol), ct(a), tol))


def is_k_ep(a, tol: Tol = DEFAULT_TOL) -> bool:
    """True when the pseudoinverse commutes with a^index(a)."""
    a = require_square(a)
    k = index(a, tol)
    p = moore_penrose(a, tol)
    ak = np.linalg.matrix_power(a, k)
    return bool(approx_eq(p @ ak, ak @ p, tol))


def is_left_k_ep(a, tol: Tol = DEFAULT_TOL) -> bool:
    """True when pinv(a) a^(k+1) = a^k for k = index(a)."""
    a = require_square(a)
    k = index(a, tol)
    p = moore_penrose(a, tol)
    return bool(
        approx_eq(
            p @ np.linalg.matrix_power(a, k + 1), np.linalg.matrix_power(a, k), tol
        )
    )


def is_core_ep(a, tol: Tol = DEFAULT_TOL) -> bool:
    """True when pinv(a) commutes past the core part a a^D a."""
    a = require_square(a)
    p = moore_penrose(a, tol)
    core = a @ drazin(a, tol) @ a
    return bool(approx_eq(p @ core, core @ p, tol))


def is_chi_inverse(a, x, tol: Tol = DEFAULT_TOL) -> bool:
    """True when a x a = a and range(x) lies inside range(a)."""
    a = require_square(a)
    x = require_square(x)
    if not approx_eq(a @ x @ a, a, tol):
        return False
    return robust_rank(np.hstack([a, x]), tol) == robust_rank(a, tol)


# ---------------------------------------------------------------------------
# equivalence checkers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpecialValuesRecord:
    """Characterizations of the weak CMP inverse hitting 0, a, and a*.

    Each pair holds (value condition, structural condition). The adjoint
    pair's structural side states index == 1 verbatim; invertible matrices
    (index 0) fall outside that regime, so agreement there is asserted only
    for index >= 1 (see the stored index).
    """

    zero_case: tuple[bool, bool]
    self_case: tuple[bool, bool]
    adjoint_case: tuple[bool, bool]
    index: int


def check_special_values(a, x, tol: Tol = DEFAULT_TOL) -> SpecialValuesRecord:
    a = require_square(a)
    require_mrwd(a, x, LEFT, tol)
    y = weak_cmp(a, x, tol, check=False)
    p = moore_penrose(a, tol)
    k = index(a, tol)
    return SpecialValuesRecord(
        zero_case=(bool(approx_eq(y, np.zeros_like(y), tol)), is_nilpotent(a, tol)),
        self_case=(bool(approx_eq(y, a, tol)), bool(approx_eq(p, a, tol))),
        adjoint_case=(
            bool(approx_eq(y, ct(a), tol)),
            bool(is_partial_isometry(a, tol) and k == 1),
        ),
        index=k,
    )


@dataclass(frozen=True)
class PinvCoincidenceRecord:
    """Five equivalent statements for the weak CMP inverse equaling pinv(a)."""

    wcmp_is_pinv: bool
    index_at_most_one: bool
    core_reproduces: bool
    x_solves_left: bool
    chi_inverse: bool

    def clauses(self) -> tuple[bool, ...]:
        return (
            self.wcmp_is_pinv,
            self.index_at_most_one,
            self.core_reproduces,
            self.x_solves_left,
            self.chi_inverse,
        )

    @property
    def consistent(self) -> bool:
        return len(set(self.clauses())) == 1


def check_pinv_coincidence(a, x, tol: Tol = DEFAULT_TOL) -> PinvCoincidenceRecord:
    a = require_square(a)
    require_mrwd(a, x, LEFT, tol)
    y = weak_cmp(a, x, tol, check=False)
    p = moore_penrose(a, tol)
    ad = drazin(a, tol)
    return PinvCoincidenceRecord(
        wcmp_is_pinv=bool(approx_eq(y, p, tol)),
        index_at_most_one=index(a, tol) <= 1,
        core_reproduces=bool(approx_eq(a @ ad @ a, a, tol)),
        x_solves_left=bool(approx_eq(x @ a @ a, a, tol)),
        chi_inverse=is_chi_inverse(a, x, tol),
    )


@dataclass(frozen=True)
class WmpdPinvRecord:
    """Both sides of: weak MPD inverse equals pinv(a) iff index == 1 and l = 0.

    As with the adjoint case above, the structural side reads index == 1
    verbatim; index-0 input is flagged through the stored index.
    """

    lhs: bool
    rhs: bool
    index: int

    @property
    def consistent(self) -> bool:
        return self.lhs == self.rhs


def check_wmpd_pinv_coincidence(a, x, tol: Tol = DEFAULT_TOL) -> WmpdPinvRecord:
    a = require_square(a)
    require_mrwd(a, x, LEFT, tol)
    k = index(a, tol)
    lhs = bool(approx_eq(weak_mpd(a, x, tol, check=False), moore_penrose(a, tol), tol))
    if rank(a, tol) == 0:
        # all blocks empty; l = 0 holds vacuously
        return WmpdPinvRecord(lhs=lhs, rhs=(k == 1), index=k)
    h = hs_decompose(a, tol)
    l_zero = bool(approx_eq(h.l, np.zeros_like(h.l), tol))
    return WmpdPinvRecord(lhs=lhs, rhs=bool(k == 1 and l_zero), index=k)


@dataclass(frozen=True)
class WcmpWmpdRecord:
    """Both sides of: weak CMP equals weak MPD iff z = (sigma k)^D and z sigma l = 0."""

    lhs: bool
    rhs: bool

    @property
    def consistent(self) -> bool:
        return self.lhs == self.rhs


def check_wcmp_wmpd_coincidence(a, x, tol: Tol = DEFAULT_TOL) -> WcmpWmpdRecord:
    a = require_square(a)
    require_mrwd(a, x, LEFT, tol)
    lhs = bool(
        approx_eq(
            weak_cmp(a, x, tol, check=False), weak_mpd(a, x, tol, check=False), tol
        )
    )
    if rank(a, tol) == 0:
        return WcmpWmpdRecord(lhs=lhs, rhs=True)
    h = hs_decompose(a, tol)
    z = (ct(h.u) @ x @ h.u)[: h.r, : h.r]
    core_d = drazin(h.core_clean(tol), tol)
    dsl = core_d @ h.sigma @ h.l
    rhs = bool(
        approx_eq(z, core_d, tol) and approx_eq(dsl, np.zeros_like(dsl), tol)
    )
    return WcmpWmpdRecord(lhs=lhs, rhs=rhs)


@dataclass(frozen=True)
class WeakCoreEpRecord:
    """Both sides of: pinv(a) a x a = a x a pinv(a) iff the four block conditions hold."""

    lhs: bool
    rhs: bool

    @property
    def consistent(self) -> bool:
        return self.lhs == self.rhs


def check_weak_core_ep(a, x, tol: Tol = DEFAULT_TOL) -> WeakCoreEpRecord:
    a = require_square(a)
    require_mrwd(a, x, LEFT, tol)
    p = moore_penrose(a, tol)
    lhs = bool(approx_eq(p @ a @ x @ a, a @ x @ a @ p, tol))
    if rank(a, tol) == 0:
        return WeakCoreEpRecord(lhs=lhs, rhs=True)
    h = hs_decompose(a, tol)
    z = (ct(h.u) @ x @ h.u)[: h.r, : h.r]
    kz = h.k @ z
    zsl = z @ h.sigma @ h.l
    lkz = ct(h.l) @ kz
    rhs = bool(
        approx_eq(ct(h.k) @ kz, z, tol)
        and approx_eq(lkz, np.zeros_like(lkz), tol)
        and approx_eq(zsl, np.zeros_like(zsl), tol)
        and approx_eq(z, drazin(h.core_clean(tol), tol), tol)
    )
    return WeakCoreEpRecord(lhs=lhs, rhs=rhs)


@dataclass(frozen=True)
class DrazinCoincidenceRecord:
    """Four equivalent statements for the weak CMP inverse collapsing to a^D."""

    mixed_products_equal: bool
    wcmp_is_dmp_and_mpd: bool
    wcmp_is_drazin_dmp_mpd: bool
    projection_is_drazin_and_left_k_ep: bool

    def clauses(self) -> tuple[bool, ...]:
        return (
            self.mixed_products_equal,
            self.wcmp_is_dmp_and_mpd,
            self.wcmp_is_drazin_dmp_mpd,
            self.projection_is_drazin_and_left_k_ep,
        )

    @property
    def consistent(self) -> bool:
        return len(set(self.clauses())) == 1


def check_drazin_coincidence(a, x, tol: Tol = DEFAULT_TOL) -> DrazinCoincidenceRecord:
    a = require_square(a)
    require_mrwd(a, x, LEFT, tol)
    p = moore_penrose(a, tol)
    ad = drazin(a, tol)
    y = p @ a @ x @ a @ p
    dmp_ = ad @ a @ p
    mpd_ = p @ a @ ad
    return DrazinCoincidenceRecord(
        mixed_products_equal=bool(approx_eq(p @ a @ x @ a, a @ x @ a @ p, tol)),
        wcmp_is_dmp_and_mpd=bool(approx_eq(y, dmp_, tol) and approx_eq(y, mpd_, tol)),
        wcmp_is_drazin_dmp_mpd=bool(
            approx_eq(y, ad, tol)
            and approx_eq(y, dmp_, tol)
            and approx_eq(y, mpd_, tol)
        ),
        projection_is_drazin_and_left_k_ep=bool(
            approx_eq(x @ a @ p, ad, tol) and is_left_k_ep(a, tol)
        ),
    )


# ---------------------------------------------------------------------------
# structured random generators
# ---------------------------------------------------------------------------

# Condition-number cap for similarity transforms. The Drazin route forms
# a^(2k+1), whose nonzero singular values decay like (cond * core_spread)^-p;
# at index 4 (p = 9) a cap of 8 keeps them about an order of magnitude above
# the rounding floor of the power, while 1e3-class similarities push genuine
# content below machine noise and no cutoff can recover it.
_SIM_SPREAD = 8.0
_MAX_TRIES = 64


def _cgauss(rng: np.random.Generator, p: int, q: int) -> np.ndarray:
    return (rng.standard_normal((p, q)) + 1j * rng.standard_normal((p, q))) / np.sqrt(2.0)


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via phase-fixed QR of a complex Gaussian."""
    if n == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    q, r = np.linalg.qr(_cgauss(rng, n, n))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _invertible_core(rng: np.random.Generator, m: int) -> np.ndarray:
    # singular values drawn in [1, 2]: invertible with condition number <= 2
    if m == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    s = np.diag(rng.uniform(1.0, 2.0, m)).astype(np.complex128)
    return haar_unitary(m, rng) @ s @ ct(haar_unitary(m, rng))


def _similarity(rng: np.random.Generator, n: int, unitary: bool) -> np.ndarray:
    if unitary:
        return haar_unitary(n, rng)
    d = np.diag(rng.uniform(1.0, _SIM_SPREAD, n)).astype(np.complex128)
    return haar_unitary(n, rng) @ d @ ct(haar_unitary(n, rng))


def gen_with_index(
    n: int,
    r: int,
    k: int,
    seed: int,
    *,
    unitary_similarity: bool = False,
    tol: Tol = DEFAULT_TOL,
) -> np.ndarray:
    """Random n x n matrix with rank exactly r and index exactly k.

    Built as s @ blockdiag(core, nilpotent) @ s^-1: an invertible,
    well-conditioned core plus a single nilpotent chain of length k padded
    with zeros, conjugated by a bounded-condition similarity (unitary when
    unitary_similarity is set, which also makes the result k-EP). Rank and
    index are verified after construction.
    """
    if n < 1 or not 0 <= r <= n or not 0 <= k <= n:
        raise InfeasibleSpecError(f"invalid shape data n={n}, r={r}, k={k}")
    if k == 0 and r != n:
        raise InfeasibleSpecError("index 0 means invertible, so r must equal n")
    if k >= 1 and (r > n - 1 or r < k - 1):
        raise InfeasibleSpecError(
            f"index {k} needs a singular matrix with rank in [{k - 1}, {n - 1}]"
        )
    rng = np.random.default_rng(seed)
    core_size = n if k == 0 else r - k + 1
    for _ in range(_MAX_TRIES):
        b = np.zeros((n, n), dtype=np.complex128)
        b[:core_size, :core_size] = _invertible_core(rng, core_size)
        for i in range(k - 1):
            b[core_size + i, core_size + i + 1] = 1.0
        s = _similarity(rng, n, unitary_similarity)
        s_inv = ct(s) if unitary_similarity else np.linalg.inv(s)
        a = s @ b @ s_inv
        if rank(a, tol) == r and index(a, tol) == k:
            return a
    raise NumericalError("could not realize the requested rank and index")


def gen_nilpotent(n: int, k: int, seed: int, *, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """Random nilpotent n x n matrix with a^k = 0 and a^(k-1) != 0."""
    if not 1 <= k <= n:
        raise InfeasibleSpecError(f"nilpotency index must lie in [1, {n}], got {k}")
    return gen_with_index(n, k - 1, k, seed, tol=tol)


def gen_ep(n: int, r: int, seed: int, *, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """Random EP matrix (commutes with its pseudoinverse) of rank r."""
    if not 0 <= r <= n or n < 1:
        raise InfeasibleSpecError(f"rank must lie in [0, {n}], got {r}")
    rng = np.random.default_rng(seed)
    for _ in range(_MAX_TRIES):
        u = haar_unitary(n, rng)
        b = np.zeros((n, n), dtype=np.complex128)
        b[:r, :r] = _invertible_core(rng, r)
        a = u @ b @ ct(u)
        if rank(a, tol) == r and is_ep(a, tol):
            return a
    raise NumericalError("could not realize an EP matrix of the requested rank")


def gen_partial_isometry(n: int, r: int, seed: int, *, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """Random partial isometry (pinv equals conjugate transpose) of rank r."""
    if not 0 <= r <= n or n < 1:
        raise InfeasibleSpecError(f"rank must lie in [0, {n}], got {r}")
    rng = np.random.default_rng(seed)
    for _ in range(_MAX_TRIES):
        d = np.zeros((n, n), dtype=np.complex128)
        d[:r, :r] = np.eye(r)
        a = haar_unitary(n, rng) @ d @ ct(haar_unitary(n, rng))
        if rank(a, tol) == r and is_partial_isometry(a, tol):
            return a
    raise NumericalError("could not realize a partial isometry of the requested rank")


def gen_hermitian_singular(n: int, r: int, seed: int, *, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """Random singular Hermitian matrix of rank r < n."""
    if not 0 <= r < n:
        raise InfeasibleSpecError(f"rank must lie in [0, {n - 1}], got {r}")
    rng = np.random.default_rng(seed)
    for _ in range(_MAX_TRIES):
        u = haar_unitary(n, rng)
        eigs = np.zeros(n)
        eigs[:r] = rng.uniform(1.0, 2.0, r) * rng.choice([-1.0, 1.0], r)
        a = u @ np.diag(eigs).astype(np.complex128) @ ct(u)
        a = (a + ct(a)) / 2.0
        if rank(a, tol) == r and approx_eq(a, ct(a), tol):
            return a
    raise NumericalError("could not realize a singular Hermitian matrix")


# ---------------------------------------------------------------------------
# exact rational oracle (real matrices; used by the test suites)
# ---------------------------------------------------------------------------

FMat = list  # list[list[Fraction]]


def fraction_matrix(rows) -> FMat:
    """Copy a real matrix (ints, Fractions, strings) into exact Fractions."""
    return [[Fraction(v) for v in row] for row in rows]


def oracle_to_array(m: FMat) -> np.ndarray:
    return np.array([[complex(v) for v in row] for row in m], dtype=np.complex128)


def _frref(m: FMat) -> tuple[FMat, list[int]]:
    m = [row[:] for row in m]
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    pr = 0
    for c in range(n_cols):
        piv = next((i for i in range(pr, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[pr], m[piv] = m[piv], m[pr]
        lead = m[pr][c]
        m[pr] = [v / lead for v in m[pr]]
        for i in range(n_rows):
            if i != pr and m[i][c] != 0:
                f = m[i][c]
                m[i] = [u - f * v for u, v in zip(m[i], m[pr])]
        pivots.append(c)
        pr += 1
        if pr == n_rows:
            break
    return m, pivots


def exact_rank(m) -> int:
    return len(_frref(fraction_matrix(m))[1])


def _fmul(a: FMat, b: FMat) -> FMat:
    return [
        [sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def _fidentity(n: int) -> FMat:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def _fpow(a: FMat, k: int) -> FMat:
    out = _fidentity(len(a))
    for _ in range(k):
        out = _fmul(out, a)
    return out


def _ftranspose(a: FMat) -> FMat:
    return [list(col) for col in zip(*a)]


def _finverse(a: FMat) -> FMat:
    n = len(a)
    aug = [row[:] + ident_row[:] for row, ident_row in zip(a, _fidentity(n))]
    red, piv = _frref(aug)
    if len(piv) < n or piv[:n] != list(range(n)):
        raise ValueError("exact inverse of a singular matrix")
    return [row[n:] for row in red]


def exact_pinv(m) -> FMat:
    """Exact Moore-Penrose inverse of a real rational matrix.

    Uses the full-rank factorization a = f g read off the reduced row
    echelon form: pinv(a) = g^T (g g^T)^-1 (f^T f)^-1 f^T.
    """
    a = fraction_matrix(m)
    n_rows, n_cols = len(a), len(a[0])
    red, piv = _frref(a)
    r = len(piv)
    if r == 0:
        return [[Fraction(0)] * n_rows for _ in range(n_cols)]
    f = [[a[i][j] for j in piv] for i in range(n_rows)]
    g = red[:r]
    ft, gt = _ftranspose(f), _ftranspose(g)
    return _fmul(_fmul(gt, _finverse(_fmul(g, gt))), _fmul(_finverse(_fmul(ft, f)), ft))


def exact_index(m) -> int:
    a = fraction_matrix(m)
    n = len(a)
    prev = n
    power = _fidentity(n)
    for k in range(n + 1):
        power = _fmul(power, a)
        nxt = len(_frref(power)[1])
        if nxt == prev:
            return k
        prev = nxt
    return n


def exact_drazin(m) -> FMat:
    """Exact Drazin inverse a^k pinv(a^(2k+1)) a^k over the rationals."""
    a = fraction_matrix(m)
    k = exact_index(a)
    if k == 0:
        return _finverse(a)
    ak = _fpow(a, k)
    return _fmul(_fmul(ak, exact_pinv(_fpow(a, 2 * k + 1))), ak)
