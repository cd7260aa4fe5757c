"""Randomized verification suites exercising the equivalence checkers.

Each suite draws (matrix, weak-Drazin member) pairs from the structured
generators and asserts that both sides of every characterization agree.
Failures carry the full fixture so a counterexample can be replayed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .classical import (
    drazin,
    drazin_residuals,
    moore_penrose,
    penrose_residuals,
)
from .classify import (
    check_drazin_coincidence,
    check_pinv_coincidence,
    check_special_values,
    check_wcmp_wmpd_coincidence,
    check_weak_core_ep,
    check_wmpd_pinv_coincidence,
    gen_ep,
    gen_hermitian_singular,
    gen_partial_isometry,
    gen_with_index,
)
from .decomp import hs_decompose, index
from .matcore import DEFAULT_TOL, Tol, ct, fro, rel_residual
from .weakdrazin import (
    LEFT,
    RIGHT,
    certify_mrwd,
    mrwd_dmp,
    mrwd_mpd_right,
    sample_mrwd,
)
from .weakinv import (
    bott_duffin_verify,
    cd_expression,
    jacobson_ad_inverses,
    projector_characterization,
    wcmp_pinv_relation,
    weak_cmp,
    weak_dmp,
    weak_mpd,
)

SUITE_NAMES = (
    "prop22",
    "prop-mp",
    "wmpd-mp",
    "wmpd-wcmp",
    "wcep",
    "main",
    "cd",
    "bott-duffin",
    "projector",
    "pinv-relation",
)


@dataclass(frozen=True)
class TrialFailure:
    suite: str
    trial: int
    seed: int
    messages: tuple[str, ...]
    fixture: dict = field(repr=False)


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    trials: int
    failures: tuple[TrialFailure, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def draw_matrix(rng: np.random.Generator, max_size: int, tol: Tol) -> tuple[np.ndarray, dict]:
    """Draw a test matrix with size in [2, max_size] and index in [0, 4].

    Mix: generic core-nilpotent draws, unitary-similarity (k-EP) draws,
    EP, singular Hermitian and partial-isometry draws, so every checker
    sees both sides of its equivalence come out true as well as false.
    Rank 0 is excluded (the zero matrix has no block decomposition).
    """
    n = int(rng.integers(2, max_size + 1))
    kind = float(rng.random())
    seed = int(rng.integers(0, 2**63 - 1))
    if kind < 0.60:
        k = int(rng.integers(0, min(4, n) + 1))
        r = n if k == 0 else int(rng.integers(max(1, k - 1), n))
        a = gen_with_index(n, r, k, seed, tol=tol)
        meta = {"kind": "index", "n": n, "r": r, "k": k, "seed": seed}
    elif kind < 0.75:
        k = int(rng.integers(1, min(4, n) + 1))
        r = int(rng.integers(max(1, k - 1), n))
        a = gen_with_index(n, r, k, seed, unitary_similarity=True, tol=tol)
        meta = {"kind": "index-unitary", "n": n, "r": r, "k": k, "seed": seed}
    elif kind < 0.85:
        r = int(rng.integers(1, n + 1))
        a = gen_ep(n, r, seed, tol=tol)
        meta = {"kind": "ep", "n": n, "r": r, "seed": seed}
    elif kind < 0.95:
        r = int(rng.integers(1, n))
        a = gen_hermitian_singular(n, r, seed, tol=tol)
        meta = {"kind": "hermitian", "n": n, "r": r, "seed": seed}
    else:
        r = int(rng.integers(1, n + 1))
        a = gen_partial_isometry(n, r, seed, tol=tol)
        meta = {"kind": "partial-isometry", "n": n, "r": r, "seed": seed}
    return a, meta


def draw_pair(rng: np.random.Generator, max_size: int, tol: Tol) -> tuple[np.ndarray, np.ndarray, dict]:
    """Draw a matrix together with a minimal-rank left weak Drazin inverse."""
    a, meta = draw_matrix(rng, max_size, tol)
    choice = float(rng.random())
    if choice < 0.65:
        x_seed = int(rng.integers(0, 2**63 - 1))
        x = sample_mrwd(a, LEFT, x_seed, tol)
        meta["x"] = {"source": "sampled", "seed": x_seed}
    elif choice < 0.85:
        x = drazin(a, tol)
        meta["x"] = {"source": "drazin"}
    else:
        x = mrwd_dmp(a, tol)
        meta["x"] = {"source": "dmp"}
    return a, x, meta


# --- per-suite violation checks; each returns human-readable messages -------


def _special_values_violations(a, x, rng, tol) -> list[str]:
    rec = check_special_values(a, x, tol)
    out = []
    if rec.zero_case[0] != rec.zero_case[1]:
        out.append(f"zero case disagrees: {rec.zero_case}")
    if rec.self_case[0] != rec.self_case[1]:
        out.append(f"self case disagrees: {rec.self_case}")
    if rec.index >= 1 and rec.adjoint_case[0] != rec.adjoint_case[1]:
        out.append(f"adjoint case disagrees: {rec.adjoint_case}")
    return out


def _pinv_coincidence_violations(a, x, rng, tol) -> list[str]:
    rec = check_pinv_coincidence(a, x, tol)
    if not rec.consistent:
        return [f"clauses disagree: {rec.clauses()}"]
    return []


def _wmpd_pinv_violations(a, x, rng, tol) -> list[str]:
    rec = check_wmpd_pinv_coincidence(a, x, tol)
    if rec.index >= 1 and not rec.consistent:
        return [f"sides disagree: lhs={rec.lhs}, rhs={rec.rhs}"]
    return []


def _wcmp_wmpd_violations(a, x, rng, tol) -> list[str]:
    rec = check_wcmp_wmpd_coincidence(a, x, tol)
    if not rec.consistent:
        return [f"sides disagree: lhs={rec.lhs}, rhs={rec.rhs}"]
    return []


def _weak_core_ep_violations(a, x, rng, tol) -> list[str]:
    rec = check_weak_core_ep(a, x, tol)
    out = []
    if not rec.consistent:
        out.append(f"sides disagree: lhs={rec.lhs}, rhs={rec.rhs}")
    if rec.lhs and not check_wcmp_wmpd_coincidence(a, x, tol).lhs:
        out.append("one-way implication broken: symmetric products but wcmp != wmpd")
    return out


def _drazin_coincidence_violations(a, x, rng, tol) -> list[str]:
    rec = check_drazin_coincidence(a, x, tol)
    if not rec.consistent:
        return [f"clauses disagree: {rec.clauses()}"]
    return []


def _cd_violations(a, x, rng, tol) -> list[str]:
    rec = cd_expression(a, x, tol)
    out = []
    for label, got in (
        ("plus reconstruction", rec.y_plus),
        ("minus reconstruction", rec.y_minus),
    ):
        res = rel_residual(got, rec.y)
        if res > tol.eq_rtol:
            out.append(f"{label} residual {res:.3e}")
    for label, series, direct in (
        ("plus series", rec.series_plus, rec.inv_plus),
        ("minus series", rec.series_minus, rec.inv_minus),
    ):
        res = rel_residual(series, direct)
        if res > tol.eq_rtol:
            out.append(f"{label} residual {res:.3e}")
    try:
        jacobson_ad_inverses(a, rec.c, rec.d, rec.y, tol)
    except Exception as exc:  # validation failure counts as a suite failure
        out.append(f"swap-identity inverses failed: {exc}")
    return out


def _bott_duffin_violations(a, x, rng, tol) -> list[str]:
    p = moore_penrose(a, tol)
    out = []
    y = weak_cmp(a, x, tol, check=False)
    if not bott_duffin_verify(a, y, p @ a @ x @ a, a @ x @ a @ p, tol):
        out.append("weak CMP triple failed")
    y2 = weak_mpd(a, x, tol, check=False)
    if not bott_duffin_verify(a, y2, p @ x @ a @ a, a @ p @ x @ a, tol):
        out.append("weak MPD triple failed")
    z_seed = int(rng.integers(0, 2**63 - 1))
    z = sample_mrwd(a, RIGHT, z_seed, tol)
    y3 = weak_dmp(a, z, tol, check=False)
    if not bott_duffin_verify(a, y3, a @ z @ p @ a, a @ a @ z @ p, tol):
        out.append(f"weak DMP triple failed (right seed {z_seed})")
    return out


def _projector_violations(a, x, rng, tol) -> list[str]:
    out = []
    y = weak_cmp(a, x, tol, check=False)
    rec = projector_characterization(a, x, y, tol, check=False)
    if rec.clauses() != (True, True, True):
        out.append(f"weak CMP inverse not recognized: {rec.clauses()}")
    noise = rng.standard_normal(a.shape) + 1j * rng.standard_normal(a.shape)
    y_bad = y + 1e-2 * max(1.0, fro(y)) * noise / fro(noise)
    rec_bad = projector_characterization(a, x, y_bad, tol, check=False)
    if rec_bad.clauses() != (False, False, False):
        out.append(f"perturbed candidate not rejected: {rec_bad.clauses()}")
    rec_mp = projector_characterization(a, x, moore_penrose(a, tol), tol, check=False)
    if not rec_mp.consistent:
        out.append(f"pseudoinverse candidate clauses disagree: {rec_mp.clauses()}")
    return out


def _pinv_relation_violations(a, x, rng, tol) -> list[str]:
    x1_seed = int(rng.integers(0, 2**63 - 1))
    x1 = sample_mrwd(moore_penrose(a, tol), LEFT, x1_seed, tol)
    rec = wcmp_pinv_relation(a, x, x1, tol)
    if not rec.consistent:
        return [f"sides disagree: lhs={rec.lhs_holds}, rhs={rec.rhs_holds}"]
    return []


_CHECKS = {
    "prop22": _special_values_violations,
    "prop-mp": _pinv_coincidence_violations,
    "wmpd-mp": _wmpd_pinv_violations,
    "wmpd-wcmp": _wcmp_wmpd_violations,
    "wcep": _weak_core_ep_violations,
    "main": _drazin_coincidence_violations,
    "cd": _cd_violations,
    "bott-duffin": _bott_duffin_violations,
    "projector": _projector_violations,
    "pinv-relation": _pinv_relation_violations,
}


def checker_violations(a, x, rng, tol: Tol = DEFAULT_TOL, names=SUITE_NAMES) -> list[str]:
    """Run the named checks on one pair, prefixing messages with the suite."""
    out = []
    for name in names:
        out.extend(f"{name}: {msg}" for msg in _CHECKS[name](a, x, rng, tol))
    return out


def residual_violations(a, x, rng, tol: Tol = DEFAULT_TOL) -> list[str]:
    """Axiom-level residual checks: pseudoinverse, Drazin, certificates, block form."""
    out = []
    k = index(a, tol)
    p = moore_penrose(a, tol)
    worst = max(penrose_residuals(a, p))
    if worst > tol.eq_rtol:
        out.append(f"pseudoinverse residual {worst:.3e}")
    ad = drazin(a, tol)
    worst = max(drazin_residuals(a, ad, k))
    if worst > tol.eq_rtol:
        out.append(f"Drazin residual {worst:.3e}")
    h = hs_decompose(a, tol)
    recon = rel_residual(h.reconstruct(), a)
    if recon > tol.eq_rtol:
        out.append(f"block reconstruction residual {recon:.3e}")
    members = [
        ("canonical left", mrwd_dmp(a, tol), LEFT),
        ("canonical right", mrwd_mpd_right(a, tol), RIGHT),
    ]
    for i in range(2):
        s = int(rng.integers(0, 2**63 - 1))
        members.append((f"sampled left {i}", sample_mrwd(a, LEFT, s, tol), LEFT))
        s = int(rng.integers(0, 2**63 - 1))
        members.append((f"sampled right {i}", sample_mrwd(a, RIGHT, s, tol), RIGHT))
    for label, member, side in members:
        cert = certify_mrwd(a, member, side, tol)
        if not cert.valid:
            out.append(
                f"{label} member failed certification: residual {cert.residual_wd:.3e}, "
                f"rank {cert.rank_x} vs {cert.rank_ad}"
            )
    return out


def run_suite(
    name: str,
    trials: int = 100,
    max_size: int = 6,
    seed: int = 0,
    tol: Tol = DEFAULT_TOL,
) -> SuiteResult:
    """Run one named suite over freshly drawn pairs; deterministic in seed."""
    if name not in _CHECKS:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(_CHECKS)}")
    failures = []
    for t in range(trials):
        rng = np.random.default_rng((seed, t))
        a, x, meta = draw_pair(rng, max_size, tol)
        messages = _CHECKS[name](a, x, rng, tol)
        if messages:
            failures.append(
                TrialFailure(
                    suite=name,
                    trial=t,
                    seed=seed,
                    messages=tuple(messages),
                    fixture={"a": a, "x": x, "meta": meta},
                )
            )
    return SuiteResult(suite=name, trials=trials, failures=tuple(failures))
