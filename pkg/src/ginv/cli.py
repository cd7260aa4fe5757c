"""Command-line front end: compute inverses, classify, verify identities, sample members.

Matrix files are JSON: {"rows": n, "cols": m, "data": [[re, im], ...]} in
row-major order, or a bare 2-D array of reals as shorthand. Reports go to
stdout (or --out); diagnostics go to stderr. Exit codes: 0 success/pass,
1 I/O or parse error, 2 mathematical validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import suites
from .classical import (
    cmp,
    core_inverse,
    dmp,
    drazin,
    drazin_residuals,
    group_inverse,
    moore_penrose,
    mpd,
    penrose_residuals,
)
from .classify import (
    is_chi_inverse,
    is_core_ep,
    is_ep,
    is_k_ep,
    is_left_k_ep,
    is_nilpotent,
    is_partial_isometry,
)
from .decomp import index
from .matcore import DEFAULT_TOL, EPS, Tol, as_matrix, rank, rel_residual, robust_rank
from .weakdrazin import (
    LEFT,
    RIGHT,
    WdCertificate,
    certify_mrwd,
    mrwd_mpd_right,
    require_mrwd,
    sample_mrwd,
)
from .weakinv import weak_cmp, weak_dmp, weak_mpd


class MatrixFormatError(ValueError):
    """A matrix file failed to parse against the JSON schema."""


def matrix_from_json(obj) -> np.ndarray:
    """Decode the dict form or the bare 2-D real-array shorthand."""
    if isinstance(obj, list):
        if not obj or not all(isinstance(row, list) for row in obj):
            raise MatrixFormatError("bare matrix must be a non-empty list of rows")
        widths = {len(row) for row in obj}
        if len(widths) != 1 or 0 in widths:
            raise MatrixFormatError("bare matrix rows must share a positive length")
        try:
            return as_matrix([[float(v) for v in row] for row in obj])
        except (TypeError, ValueError) as exc:
            raise MatrixFormatError(f"bad bare matrix: {exc}") from exc
    if not isinstance(obj, dict):
        raise MatrixFormatError("matrix JSON must be an object or a 2-D array")
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFormatError(f"matrix object needs rows, cols, data: {exc}") from exc
    if rows < 1 or cols < 1:
        raise MatrixFormatError("rows and cols must be positive")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise MatrixFormatError(f"data must hold rows*cols = {rows * cols} entries")
    entries = []
    for item in data:
        if not isinstance(item, list) or len(item) != 2:
            raise MatrixFormatError("each data entry must be an [re, im] pair")
        entries.append(complex(float(item[0]), float(item[1])))
    return as_matrix(np.array(entries, dtype=np.complex128).reshape(rows, cols))


def matrix_to_json(a: np.ndarray) -> dict:
    a = np.asarray(a, dtype=np.complex128)
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "data": [[float(v.real), float(v.imag)] for v in a.ravel()],
    }


def load_matrix(path: str) -> np.ndarray:
    """Read a matrix from a JSON file, or from stdin when path is '-'."""
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise MatrixFormatError(f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON in {path}: {exc}") from exc
    return matrix_from_json(obj)


def certificate_to_json(cert: WdCertificate) -> dict:
    return {
        "side": cert.side,
        "k": int(cert.k),
        "residual_wd": float(cert.residual_wd),
        "rank_x": int(cert.rank_x),
        "rank_ad": int(cert.rank_ad),
        "valid": bool(cert.valid),
    }


def _tol_from_args(args) -> Tol:
    return Tol(
        rank_rtol=EPS if args.tol_rank is None else args.tol_rank,
        eq_rtol=1e-8 if args.tol_eq is None else args.tol_eq,
    )


def _inverse_entry(matrix: np.ndarray, residuals: dict, tol: Tol) -> dict:
    worst = max(residuals.values()) if residuals else 0.0
    return {
        "matrix": matrix_to_json(matrix),
        "residuals": {k: float(v) for k, v in residuals.items()},
        "ok": bool(worst <= tol.eq_rtol),
    }


def _outer_residual(a, y) -> dict:
    return {"outer": rel_residual(y @ a @ y, y)}


def classify_matrix(a: np.ndarray, tol: Tol) -> dict:
    return {
        "nilpotent": is_nilpotent(a, tol),
        "ep": is_ep(a, tol),
        "partial_isometry": is_partial_isometry(a, tol),
        "k_ep": is_k_ep(a, tol),
        "left_k_ep": is_left_k_ep(a, tol),
        "core_ep": is_core_ep(a, tol),
    }


def build_report(a: np.ndarray, tol: Tol, x: np.ndarray | None = None, seed: int = 0) -> dict:
    """All computed inverses, class predicates and residuals for one matrix."""
    n = a.shape[0]
    k = index(a, tol)
    if x is None:
        x = sample_mrwd(a, LEFT, seed, tol)
        x_source = f"sampled(seed={seed})"
    else:
        x_source = "given"
    x_cert = require_mrwd(a, x, LEFT, tol)
    z = mrwd_mpd_right(a, tol)
    z_cert = require_mrwd(a, z, RIGHT, tol)

    p = moore_penrose(a, tol)
    ad = drazin(a, tol)
    pr = penrose_residuals(a, p)
    dr = drazin_residuals(a, ad, k)
    inverses = {
        "moore_penrose": _inverse_entry(
            p,
            {"axa": pr[0], "xax": pr[1], "ax_hermitian": pr[2], "xa_hermitian": pr[3]},
            tol,
        ),
        "drazin": _inverse_entry(
            ad, {"xax": dr[0], "commute": dr[1], "power": dr[2]}, tol
        ),
        "dmp": _inverse_entry(dmp(a, tol), _outer_residual(a, dmp(a, tol)), tol),
        "mpd": _inverse_entry(mpd(a, tol), _outer_residual(a, mpd(a, tol)), tol),
        "cmp": _inverse_entry(cmp(a, tol), _outer_residual(a, cmp(a, tol)), tol),
    }
    if k <= 1:
        g = group_inverse(a, tol)
        inverses["group"] = _inverse_entry(g, _outer_residual(a, g), tol)
        c = core_inverse(a, tol)
        inverses["core"] = _inverse_entry(c, _outer_residual(a, c), tol)
    wc = weak_cmp(a, x, tol, check=False)
    wm = weak_mpd(a, x, tol, check=False)
    wd = weak_dmp(a, z, tol, check=False)
    inverses["weak_cmp"] = _inverse_entry(wc, _outer_residual(a, wc), tol)
    inverses["weak_cmp"]["rank_matches_core"] = bool(robust_rank(wc, tol) == x_cert.rank_ad)
    inverses["weak_mpd"] = _inverse_entry(wm, _outer_residual(a, wm), tol)
    inverses["weak_dmp"] = _inverse_entry(wd, _outer_residual(a, wd), tol)

    return {
        "fingerprint": {"rows": n, "cols": n, "rank": rank(a, tol), "index": k},
        "tolerance": {"rank_rtol": tol.rank_rtol, "eq_rtol": tol.eq_rtol},
        "x": {
            "source": x_source,
            "matrix": matrix_to_json(x),
            "certificate": certificate_to_json(x_cert),
        },
        "z_right": {
            "source": "canonical (pinv a drazin)",
            "matrix": matrix_to_json(z),
            "certificate": certificate_to_json(z_cert),
        },
        "inverses": inverses,
        "classes": classify_matrix(a, tol),
        "ok": all(entry["ok"] for entry in inverses.values()),
    }


def _emit(payload: dict, args) -> None:
    text = json.dumps(payload, indent=2)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _print_human_report(report: dict) -> None:
    fp = report["fingerprint"]
    print(f"matrix {fp['rows']}x{fp['cols']}: rank {fp['rank']}, index {fp['index']}")
    classes = ", ".join(name for name, val in report["classes"].items() if val)
    print(f"classes: {classes or 'none'}")
    print(f"x: {report['x']['source']}, certificate valid: "
          f"{report['x']['certificate']['valid']}")
    for name, entry in report["inverses"].items():
        worst = max(entry["residuals"].values()) if entry["residuals"] else 0.0
        status = "ok" if entry["ok"] else "FAILED"
        print(f"  {name:14s} {status}  worst residual {worst:.3e}")
    print(f"overall: {'ok' if report['ok'] else 'FAILED'}")


def cmd_compute(args) -> int:
    tol = _tol_from_args(args)
    a = load_matrix(args.matrix)
    x = load_matrix(args.x) if args.x else None
    report = build_report(a, tol, x=x, seed=args.seed)
    if args.json or args.out:
        _emit(report, args)
    else:
        _print_human_report(report)
    return 0


def cmd_classify(args) -> int:
    tol = _tol_from_args(args)
    a = load_matrix(args.matrix)
    payload = {
        "fingerprint": {
            "rows": int(a.shape[0]),
            "cols": int(a.shape[1]),
            "rank": rank(a, tol),
            "index": index(a, tol),
        },
        "classes": classify_matrix(a, tol),
    }
    if args.json or getattr(args, "out", None):
        _emit(payload, args)
    else:
        fp = payload["fingerprint"]
        print(f"matrix {fp['rows']}x{fp['cols']}: rank {fp['rank']}, index {fp['index']}")
        for name, val in payload["classes"].items():
            print(f"  {name}: {val}")
    return 0


def cmd_verify(args) -> int:
    tol = _tol_from_args(args)
    names = suites.SUITE_NAMES if args.suite == "all" else (args.suite,)
    all_passed = True
    for name in names:
        result = suites.run_suite(name, trials=args.n, max_size=args.size, seed=args.seed, tol=tol)
        status = "pass" if result.passed else "FAIL"
        print(f"{name}: {result.trials} trials, {len(result.failures)} failures [{status}]")
        for failure in result.failures:
            all_passed = False
            print(
                json.dumps(
                    {
                        "suite": failure.suite,
                        "trial": failure.trial,
                        "seed": failure.seed,
                        "messages": list(failure.messages),
                        "a": matrix_to_json(failure.fixture["a"]),
                        "x": matrix_to_json(failure.fixture["x"]),
                        "meta": failure.fixture["meta"],
                    }
                )
            )
    return 0 if all_passed else 2


def cmd_sample(args) -> int:
    tol = _tol_from_args(args)
    a = load_matrix(args.matrix)
    side = LEFT if args.side == "left" else RIGHT
    items = []
    for i in range(args.count):
        seed = args.seed + i
        x = sample_mrwd(a, side, seed, tol)
        cert = certify_mrwd(a, x, side, tol)
        items.append(
            {
                "seed": seed,
                "matrix": matrix_to_json(x),
                "certificate": certificate_to_json(cert),
            }
        )
    text = json.dumps(items, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _add_tol_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol-eq", type=float, default=None, dest="tol_eq",
                        help="relative equality threshold (default 1e-8)")
    parser.add_argument("--tol-rank", type=float, default=None, dest="tol_rank",
                        help="relative singular-value cutoff (default machine epsilon)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ginv",
        description="Generalized matrix inverses and verification of their identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="compute every inverse and classify the input")
    p_compute.add_argument("matrix", help="matrix JSON file, or - for stdin")
    p_compute.add_argument("--x", default=None,
                           help="file with a minimal-rank left weak Drazin inverse (certified before use)")
    p_compute.add_argument("--seed", type=int, default=0, help="seed when sampling x")
    p_compute.add_argument("--json", action="store_true", help="machine-readable report")
    p_compute.add_argument("--out", default=None, help="write the JSON report to this path")
    _add_tol_flags(p_compute)
    p_compute.set_defaults(func=cmd_compute)

    p_classify = sub.add_parser("classify", help="rank, index, and class predicates only")
    p_classify.add_argument("matrix")
    p_classify.add_argument("--json", action="store_true")
    p_classify.add_argument("--out", default=None)
    _add_tol_flags(p_classify)
    p_classify.set_defaults(func=cmd_classify)

    p_verify = sub.add_parser("verify", help="run randomized identity-verification suites")
    p_verify.add_argument("suite", choices=suites.SUITE_NAMES + ("all",))
    p_verify.add_argument("--n", type=int, default=100, help="trials per suite")
    p_verify.add_argument("--size", type=int, default=6, help="largest matrix dimension")
    p_verify.add_argument("--seed", type=int, default=0)
    _add_tol_flags(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_sample = sub.add_parser("sample", help="sample certified weak Drazin family members")
    p_sample.add_argument("matrix")
    p_sample.add_argument("--side", choices=("left", "right"), default="left")
    p_sample.add_argument("--seed", type=int, default=0)
    p_sample.add_argument("--count", type=int, default=1)
    p_sample.add_argument("--out", default=None)
    _add_tol_flags(p_sample)
    p_sample.set_defaults(func=cmd_sample)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MatrixFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
