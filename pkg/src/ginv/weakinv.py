"""Weak CMP / MPD / DMP inverses and the identities tying them together.

The weak CMP inverse is a function of the pair (a, x): a^+ a x a a^+ for an
arbitrary but fixed minimal-rank left weak Drazin inverse x of a. Member
certification is enforced on entry (the identities below all assume it);
pass check=False only for deliberate negative tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classical import drazin, moore_penrose
from .decomp import HSD, hs_decompose, index
from .matcore import (
    DEFAULT_TOL,
    NumericalError,
    Tol,
    approx_eq,
    ct,
    inv,
    power_rank,
    rank,
    require_square,
    robust_rank,
)
from .weakdrazin import LEFT, RIGHT, require_mrwd


class NotComplementaryError(ValueError):
    """The requested range and null space do not split the ambient space."""


class NotIdempotentError(ValueError):
    """A claimed idempotent failed p @ p = p."""


def weak_cmp(a, x, tol: Tol = DEFAULT_TOL, *, check: bool = True) -> np.ndarray:
    """a^+ a x a a^+ for a certified minimal-rank left weak Drazin inverse x."""
    a = require_square(a)
    if check:
        require_mrwd(a, x, LEFT, tol)
    p = moore_penrose(a, tol)
    return p @ a @ x @ a @ p


def weak_cmp_hs(h: HSD, z, tol: Tol = DEFAULT_TOL, *, check: bool = True) -> np.ndarray:
    """Block evaluation u [[k* k z, 0], [l* k z, 0]] u* of the weak CMP inverse.

    z must be a minimal-rank weak Drazin inverse of the core block sigma k;
    the result does not depend on the free w block of the full member.
    """
    if check:
        require_mrwd(h.core_clean(tol), z, LEFT, tol)
    m = h.n - h.r
    kz = h.k @ z
    return h.embed(
        ct(h.k) @ kz,
        np.zeros((h.r, m), dtype=np.complex128),
        ct(h.l) @ kz,
        np.zeros((m, m), dtype=np.complex128),
    )


def weak_mpd(a, x, tol: Tol = DEFAULT_TOL, *, check: bool = True) -> np.ndarray:
    """a^+ x a for a certified minimal-rank left weak Drazin inverse x."""
    a = require_square(a)
    if check:
        require_mrwd(a, x, LEFT, tol)
    return moore_penrose(a, tol) @ x @ a


def weak_mpd_hs(h: HSD, z, tol: Tol = DEFAULT_TOL, *, check: bool = True) -> np.ndarray:
    """Full 2x2 block evaluation of a^+ x a from the core member z."""
    if check:
        require_mrwd(h.core_clean(tol), z, LEFT, tol)
    si = h.sigma_inv()
    ksz = ct(h.k) @ si @ z
    lsz = ct(h.l) @ si @ z
    sk = h.sigma @ h.k
    sl = h.sigma @ h.l
    return h.embed(ksz @ sk, ksz @ sl, lsz @ sk, lsz @ sl)


def weak_dmp(a, z, tol: Tol = DEFAULT_TOL, *, check: bool = True) -> np.ndarray:
    """a z a^+ for a certified minimal-rank right weak Drazin inverse z."""
    a = require_square(a)
    if check:
        require_mrwd(a, z, RIGHT, tol)
    return a @ z @ moore_penrose(a, tol)


@dataclass(frozen=True)
class CdExpression:
    """Reconstruction of the weak CMP inverse from the projections c, d.

    With y the weak CMP inverse, c = I - a y and d = I - y a, both a + c and
    a - c are invertible and y = (I - d)(a +/- c)^-1 (I - c). series_plus and
    series_minus are the closed finite-sum forms of those two inverses.
    """

    y: np.ndarray
    c: np.ndarray
    d: np.ndarray
    inv_plus: np.ndarray
    inv_minus: np.ndarray
    y_plus: np.ndarray
    y_minus: np.ndarray
    series_plus: np.ndarray
    series_minus: np.ndarray


def cd_expression(a, x, tol: Tol = DEFAULT_TOL, *, check: bool = True) -> CdExpression:
    a = require_square(a)
    if check:
        require_mrwd(a, x, LEFT, tol)
    n = a.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    y = weak_cmp(a, x, tol, check=False)
    c = eye - a @ y
    d = eye - y @ a
    inv_plus = inv(a + c, tol)
    inv_minus = inv(a - c, tol)
    k = index(a, tol)
    p = moore_penrose(a, tol)
    xaa = x @ a @ p
    powers = sum(
        (np.linalg.matrix_power(a, i) * ((-1.0) ** i) for i in range(k)),
        start=np.zeros_like(a),
    )
    powers_plain = sum(
        (np.linalg.matrix_power(a, i) for i in range(k)), start=np.zeros_like(a)
    )
    return CdExpression(
        y=y,
        c=c,
        d=d,
        inv_plus=inv_plus,
        inv_minus=inv_minus,
        y_plus=(eye - d) @ inv_plus @ (eye - c),
        y_minus=(eye - d) @ inv_minus @ (eye - c),
        series_plus=xaa + (eye - x @ a) @ powers,
        series_minus=xaa - (eye - x @ a) @ powers_plain,
    )


@dataclass(frozen=True)
class JacobsonInverses:
    """Inverses of a + d and a - d obtained from those of a + c and a - c."""

    inv_a_plus_d: np.ndarray
    inv_a_minus_d: np.ndarray


def jacobson_ad_inverses(a, c, d, y, tol: Tol = DEFAULT_TOL) -> JacobsonInverses:
    """(a+d)^-1 = I + (y-I)(a+c)^-1 a and (a-d)^-1 = -I + (y+I)(a-c)^-1 a.

    Both are cross-checked against direct inversion; a mismatch raises
    NumericalError rather than returning an unvalidated matrix.
    """
    a = require_square(a)
    n = a.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    plus = eye + (y - eye) @ inv(a + c, tol) @ a
    minus = -eye + (y + eye) @ inv(a - c, tol) @ a
    if not approx_eq(plus, inv(a + d, tol), tol) or not approx_eq(
        minus, inv(a - d, tol), tol
    ):
        raise NumericalError("swap-identity inverses disagree with direct inversion")
    return JacobsonInverses(inv_a_plus_d=plus, inv_a_minus_d=minus)


def oblique_projector(range_of, null_of, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """Projector onto range(range_of) along null(null_of).

    Realized as b (s b)^-1 s with b an orthonormal column basis of the range
    argument and s orthonormal rows spanning the row space of the null
    argument. Complementarity shows up as invertibility of s b.
    """
    range_of = np.asarray(range_of, dtype=np.complex128)
    null_of = np.asarray(null_of, dtype=np.complex128)
    n = range_of.shape[0]
    if null_of.shape[1] != n:
        raise ValueError(
            f"null_of must act on the same space: {null_of.shape[1]} != {n}"
        )
    d = robust_rank(range_of, tol)
    d_null = robust_rank(null_of, tol)
    if d != d_null:
        raise NotComplementaryError(
            f"range dimension {d} and null-space codimension {d_null} differ"
        )
    if d == 0:
        return np.zeros((n, n), dtype=np.complex128)
    ub, _, _ = np.linalg.svd(range_of)
    b = ub[:, :d]
    _, _, vsh = np.linalg.svd(null_of)
    s = vsh[:d, :]
    sb = s @ b
    if robust_rank(sb, tol) < d:
        raise NotComplementaryError("subspaces intersect: s @ b is singular")
    return b @ np.linalg.solve(sb, s)


@dataclass(frozen=True)
class ProjectorCharacterization:
    """Three equivalent descriptions of the weak CMP inverse, evaluated independently."""

    is_weak_cmp: bool
    projectors_and_outer: bool
    projectors_and_rank: bool

    def clauses(self) -> tuple[bool, bool, bool]:
        return (self.is_weak_cmp, self.projectors_and_outer, self.projectors_and_rank)

    @property
    def consistent(self) -> bool:
        return len(set(self.clauses())) == 1


def projector_characterization(
    a, x, y, tol: Tol = DEFAULT_TOL, *, check: bool = True
) -> ProjectorCharacterization:
    """Test y against the product, projector+outer, and projector+rank descriptions.

    The two oblique projectors are fixed by (a, x): a y must project onto
    range(a^k) along null(x a a^+), and y a onto range(a^+ a^k) along
    null(x a).
    """
    a = require_square(a)
    y = require_square(y)
    if check:
        require_mrwd(a, x, LEFT, tol)
    k = index(a, tol)
    p = moore_penrose(a, tol)
    ad = drazin(a, tol)
    # a @ ad and p @ a @ ad span range(a^k) and range(pinv(a) a^k) with O(1)
    # singular-value separation, unlike the raw power a^k whose zero
    # directions fill with rounding for nilpotent-heavy input
    core_range = a @ ad
    proj_left = oblique_projector(core_range, x @ a @ p, tol)
    proj_right = oblique_projector(p @ core_range, x @ a, tol)
    projectors_ok = approx_eq(a @ y, proj_left, tol) and approx_eq(
        y @ a, proj_right, tol
    )
    return ProjectorCharacterization(
        is_weak_cmp=bool(approx_eq(y, p @ a @ x @ a @ p, tol)),
        projectors_and_outer=bool(projectors_ok and approx_eq(y @ a @ y, y, tol)),
        projectors_and_rank=bool(
            projectors_ok and robust_rank(y, tol) == power_rank(a, k, tol)
        ),
    )


def bott_duffin_verify(a, y, e, f, tol: Tol = DEFAULT_TOL) -> bool:
    """Check y a y = y, y a = e, a y = f for idempotents e and f."""
    a = require_square(a)
    for name, p in (("e", e), ("f", f)):
        p = require_square(p)
        if not approx_eq(p @ p, p, tol):
            raise NotIdempotentError(f"{name} is not idempotent")
    return bool(
        approx_eq(y @ a @ y, y, tol)
        and approx_eq(y @ a, e, tol)
        and approx_eq(a @ y, f, tol)
    )


@dataclass(frozen=True)
class PinvRelation:
    """Weak CMP inverses of a and pinv(a), with both sides of their linking identity."""

    y: np.ndarray
    y1: np.ndarray
    lhs_holds: bool
    rhs_holds: bool

    @property
    def consistent(self) -> bool:
        return self.lhs_holds == self.rhs_holds


def wcmp_pinv_relation(
    a, x, x1, tol: Tol = DEFAULT_TOL, *, check: bool = True
) -> PinvRelation:
    """pinv(y) = y1 holds exactly when pinv(k z) matches x1's leading row block.

    x must be a certified left member for a, x1 one for pinv(a). z is x's
    leading block in the basis of a's decomposition; the right side compares
    pinv(k z) against z1 k* + q l*, where [z1 q] is x1's top row block. For
    x1 in the column-shaped family (for instance the Drazin inverse of
    pinv(a)), q vanishes and this is exactly pinv(k z) = z1 k*.
    """
    a = require_square(a)
    p = moore_penrose(a, tol)
    if check:
        require_mrwd(a, x, LEFT, tol)
        require_mrwd(p, x1, LEFT, tol)
    if rank(a, tol) == 0:
        # all blocks are empty: both identities hold vacuously
        z = np.zeros_like(a)
        return PinvRelation(y=z, y1=z, lhs_holds=True, rhs_holds=True)
    y = p @ a @ x @ a @ p
    y1 = a @ p @ x1 @ p @ a
    h = hs_decompose(a, tol)
    z = (ct(h.u) @ x @ h.u)[: h.r, : h.r]
    top_row = (ct(h.u) @ x1 @ h.u)[: h.r, :]
    effective_z1k = top_row @ ct(np.hstack([h.k, h.l]))
    return PinvRelation(
        y=y,
        y1=y1,
        lhs_holds=bool(approx_eq(moore_penrose(y, tol), y1, tol)),
        rhs_holds=bool(
            approx_eq(moore_penrose(h.k @ z, tol), effective_z1k, tol)
        ),
    )
