"""Command-line interface.

Exit codes: 0 success, 1 internal error, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import data
from .arrangement import BallPoint, classify_point
from .cm import build_certificate
from .eisenstein import EisensteinScalar
from .errors import CubicPeriodsError, DomainError
from .numberfield import (
    FieldRecord,
    SignVector,
    exactly_one_negative,
    read_field_records,
    sign_pattern_search,
)
from .siegel import format_numeric, format_scalar, period_matrix, riemann_check, siegel_point

PRESETS = {
    "cayley": "1,0,0,0,0",
    "fermat": "3+w,1,1,1,1",  # 2 − ω̄ = 3 + ω
    "clebsch": "3,1,1,1,1",
}

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text_lines: list[str]):
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=False))
    else:
        print("\n".join(text_lines))


# -- classify -----------------------------------------------------------------


def cmd_classify(args) -> int:
    if args.preset:
        text = PRESETS[args.preset]
    elif args.point:
        text = args.point
    else:
        raise UsageError("give a point or --preset")
    try:
        p = BallPoint.parse(text)
    except DomainError as e:
        if e.code == "not-in-ball":
            raise DomainError("not-in-ball", "not in the ball") from e
        raise
    except ValueError as e:
        raise UsageError(str(e)) from e
    c = classify_point(p)
    normals = [str(h.normal) for h in c.hyperplanes]
    lines = [f"point: {p}", f"h0* norm: {format_scalar(p.norm())}", c.summary()]
    lines += [f"  normal {s}" for s in normals]
    _emit(args, {"point": str(p), "norm": format_scalar(p.norm()), "kind": c.kind, "k": c.k, "normals": normals}, lines)
    return EXIT_OK


# -- embed --------------------------------------------------------------------


def _matrix_lines(M, exact: bool, digits: int) -> list[str]:
    fmt = format_scalar if exact else (lambda x: format_numeric(x, digits))
    return ["  [" + ", ".join(fmt(x) for x in row) + "]" for row in M]


def cmd_embed(args) -> int:
    try:
        b = [EisensteinScalar.parse(t) for t in args.b.split(",")]
    except ValueError as e:
        raise UsageError(str(e)) from e
    if len(b) != 4:
        raise UsageError("b needs 4 comma-separated entries")
    P = period_matrix(b)
    Z = siegel_point(b)
    rep = riemann_check(P)
    digits = args.digits or 15
    lines = ["P(b) = (A, B):"] + _matrix_lines(P.rows(), args.exact, digits)
    lines += ["Z(b):"] + _matrix_lines(Z.Z, args.exact, digits)
    lines += [f"symmetric: {'pass' if Z.is_symmetric() else 'FAIL'}", f"Im Z > 0: {'pass' if Z.imag_positive() else 'FAIL'}"]
    lines += rep.lines()
    payload = {
        "b": [format_scalar(x) for x in b],
        "P": [[format_scalar(x) for x in row] for row in P.rows()],
        "Z": Z.to_strings(),
        "symmetric": Z.is_symmetric(),
        "imag_positive": Z.imag_positive(),
        "isotropic": rep.isotropic,
        "positive": rep.positive,
    }
    _emit(args, payload, lines)
    return EXIT_OK


# -- scan ---------------------------------------------------------------------


@dataclass
class ScanRow:
    index: int
    disc: int | None
    status: str
    detail: str = ""


def _scan_one(item) -> tuple[int | None, str, str]:
    rec = item
    if isinstance(rec, tuple):
        lineno, text, err = rec
        return None, "error", f"line {lineno}: {err}"
    try:
        if rec.class_number != 1:
            return rec.disc, "skipped-class-number", ""
        F = rec.field()
        if not F.is_monogenic():
            return rec.disc, "non-monogenic-unsupported", ""
        res = sign_pattern_search(F, rec.unit_elements(F), exactly_one_negative)
        return rec.disc, "True" if res.found else "False", str(res.eps) if res.found else ""
    except CubicPeriodsError as e:
        return rec.disc, e.code if e.code in ("non-monogenic-unsupported",) else "error", str(e)


def scan_records(records, jobs: int = 1) -> list[ScanRow]:
    if jobs > 1 and len(records) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_scan_one, records))
    else:
        results = [_scan_one(r) for r in records]
    rows = [ScanRow(0, d, s, det) for d, s, det in results]
    rows.sort(key=lambda r: (r.disc is None, r.disc if r.disc is not None else 0))
    for i, r in enumerate(rows, 1):
        r.index = i
    return rows


def scan_summary(rows: list[ScanRow]) -> dict:
    total = len(rows)
    passed = sum(1 for r in rows if r.status == "True")
    skipped = sum(1 for r in rows if r.status == "skipped-class-number")
    if total:
        ratio = Fraction(passed, total)
        ratio_s, dec = f"{ratio.numerator}/{ratio.denominator}", f"{float(ratio):.4f}"
    else:
        ratio_s, dec = "n/a", "n/a"
    return {"total": total, "passed": passed, "skipped": skipped, "ratio": ratio_s, "ratio_decimal": dec}


def cmd_scan(args) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    try:
        with open(args.file, encoding="utf-8") as fh:
            records = read_field_records(fh)
    except OSError as e:
        print(f"error: cannot read {args.file}: {e}", file=sys.stderr)
        return EXIT_USAGE
    rows = scan_records(records, args.jobs)
    summ = scan_summary(rows)
    lines = [f"{'':>5} {'discr':>8}   result"]
    for r in rows:
        disc = str(r.disc) if r.disc is not None else "-"
        extra = f"   {r.detail}" if r.status == "error" else ""
        lines.append(f"{r.index:>5} {disc:>8}   {r.status}{extra}")
    lines += [
        "Summary:",
        f"  Number of fields: {summ['total']}",
        f"  Number of fields of class number > 1: {summ['skipped']}",
        f"  Number of fields which satisfy the criterion: {summ['passed']}",
        f"  Ratio: {summ['ratio']} ({summ['ratio_decimal']})",
    ]
    payload = {"rows": [{"index": r.index, "disc": r.disc, "status": r.status} for r in rows], **summ}
    _emit(args, payload, lines)
    return EXIT_OK


# -- cm-build -----------------------------------------------------------------


def _pick_record(args) -> FieldRecord:
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            recs = read_field_records(fh)
    else:
        recs = read_field_records(data.read_text(data.DISC_14641).splitlines())
    recs = [r for r in recs if isinstance(r, FieldRecord)]
    if args.disc is not None:
        recs = [r for r in recs if r.disc == args.disc]
    if not recs:
        raise UsageError("no matching field record")
    return recs[0]


def cmd_cm_build(args) -> int:
    eps = None
    if args.eps:
        try:
            eps = SignVector.parse(args.eps)
        except CubicPeriodsError as e:
            raise UsageError(str(e)) from e
        if eps.negatives() != 1:
            raise UsageError(f"eps {eps} must have exactly one negative entry")
    try:
        rec = _pick_record(args)
    except OSError as e:
        raise UsageError(f"cannot read {args.file}: {e}") from e
    F = rec.field()
    if eps is not None and len(eps) != F.n:
        raise UsageError("eps length differs from the field degree")
    predicate = exactly_one_negative if eps is None else (lambda sv: sv == eps)
    res = sign_pattern_search(F, rec.unit_elements(F), predicate)
    if not res.found:
        raise DomainError("no-eps-positive-generator", "no generator of the different has an allowed sign pattern")
    prec = max(200, int((args.digits or 15) * 3.4) + 60)
    cert = build_certificate(F, res.eps, res.generator, prec=prec)
    if args.json:
        print(cert.to_json())
    else:
        print(cert.to_text())
        print(f"all checks: {'pass' if cert.passed else 'FAIL'}")
    return EXIT_OK


# -- elliptic demo ------------------------------------------------------------


def elliptic_values(digits: int):
    """∫₁^∞ dx/√(x³ − 1) by quadrature, and Γ(1/3)³/(2^{4/3}π)."""
    with mpmath.workdps(digits + 10):
        # x = 1 + s² removes the endpoint singularity: dx/√(x³−1) = 2 ds/√(x² + x + 1)
        quad = mpmath.quad(lambda s: 2 / mpmath.sqrt((1 + s * s) ** 2 + (1 + s * s) + 1), [0, 1, 10, mpmath.inf])
        closed = mpmath.gamma(mpmath.mpf(1) / 3) ** 3 / (mpmath.mpf(2) ** (mpmath.mpf(4) / 3) * mpmath.pi)
        return +quad, +closed


def cmd_elliptic_demo(args) -> int:
    digits = 10 if args.digits is None else args.digits
    if digits < 1:
        raise UsageError("--digits must be >= 1")
    q, c = elliptic_values(digits)
    diff = abs(q - c)
    tol = mpmath.mpf(10) ** (-(digits - 1))
    lines = [
        f"quadrature:  {mpmath.nstr(q, digits + 2)}",
        f"gamma form:  {mpmath.nstr(c, digits + 2)}",
        f"|difference|: {mpmath.nstr(diff, 3)}",
        f"agreement to 1e-{digits - 1}: {'pass' if diff < tol else 'FAIL'}",
    ]
    payload = {"quadrature": mpmath.nstr(q, digits + 2), "gamma": mpmath.nstr(c, digits + 2),
               "difference": mpmath.nstr(diff, 3), "agree": bool(diff < tol)}
    _emit(args, payload, lines)
    return EXIT_OK if diff < tol else EXIT_INTERNAL


# -----------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cubicperiods", description="Period geometry of cubic surfaces and CM abelian five-folds.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="smooth / nodal classification of a ball point")
    c.add_argument("point", nargs="?", help="v0,...,v4 or b1,...,b4; entries like p/q or p/q+r/s*w")
    c.add_argument("--preset", choices=sorted(PRESETS))
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_classify)

    e = sub.add_parser("embed", help="period matrix, Siegel point and Riemann relations for b")
    e.add_argument("b", help="b1,...,b4")
    e.add_argument("--exact", action="store_true", help="print exact entries")
    e.add_argument("--digits", type=int, default=None)
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_embed)

    s = sub.add_parser("scan", help="sign-pattern test over a file of field records")
    s.add_argument("file")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_scan)

    m = sub.add_parser("cm-build", help="build and certify the CM abelian five-fold for a field")
    m.add_argument("file", nargs="?", help="field record file (default: the disc 14641 field)")
    m.add_argument("--disc", type=int, default=None, help="pick the record with this discriminant")
    m.add_argument("--eps", default=None, help="sign vector like +,+,-,+,+")
    m.add_argument("--digits", type=int, default=None)
    m.add_argument("--json", action="store_true")
    m.set_defaults(func=cmd_cm_build)

    d = sub.add_parser("elliptic-demo", help="check the elliptic integral against the Gamma-function value")
    d.add_argument("--digits", type=int, default=None)
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_elliptic_demo)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ValueError) as e:
        code = getattr(e, "code", None)
        msg = str(e)
        print(f"error: {code}: {msg}" if code and code not in msg else f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:  # noqa: BLE001
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
