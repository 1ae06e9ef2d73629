"""polybounds command line: spectrum, bounds, verify, fpoly."""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .bounds import RULES, BoundError, KindMismatchError, evaluate
from .core import (
    ProblemKind,
    SpectrumFileError,
    SpectrumValidationError,
    read_spectrum,
    spectrum_to_dict,
    write_spectrum,
)
from .solver import (
    ConvergenceError,
    disk_clamped_plate_spectrum,
    interval_buckling_spectrum,
    interval_polyharmonic_spectrum,
    rectangle_spectrum,
    sphere_closed_spectrum,
)
from .solver.bessel import RootCountError
from .spherepoly import f_poly
from .verify import (
    BUILTIN_SUITE,
    VerifyEntry,
    builtin_suite,
    entries_to_csv,
    entries_to_json_lines,
    verify_spectra,
    write_report,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2
EXIT_VIOLATION = 3

log = logging.getLogger("polybounds")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default; 2 is reserved for numerical failures here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


_KINDS = {
    "dirichlet": ProblemKind.DIRICHLET_POLYHARMONIC,
    "buckling": ProblemKind.BUCKLING,
    "generalized-buckling": ProblemKind.GENERALIZED_BUCKLING,
}


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return v


def _build_spectrum(a):
    kind = _KINDS[a.kind]
    if a.domain == "interval":
        if a.n not in (None, 1):
            raise UsageError("interval forces --n 1")
        if kind is ProblemKind.DIRICHLET_POLYHARMONIC:
            return interval_polyharmonic_spectrum(a.l, a.basis, a.count)
        if kind is ProblemKind.BUCKLING and a.l != 2:
            raise UsageError(f"--kind buckling needs --l 2 (use generalized-buckling for l={a.l})")
        if a.l < 2:
            raise UsageError("generalized-buckling needs --l >= 2")
        if kind is ProblemKind.GENERALIZED_BUCKLING and a.l == 2:
            raise UsageError("l = 2 is the classical buckling problem; use --kind buckling")
        return interval_buckling_spectrum(a.l, a.basis, a.count)
    if kind is not ProblemKind.DIRICHLET_POLYHARMONIC:
        raise UsageError(f"--kind {a.kind} is only available on --domain interval")
    if a.domain == "rectangle":
        if a.n not in (None, 2):
            raise UsageError("rectangle forces --n 2")
        if a.l not in (1, 2):
            raise UsageError(f"rectangle supports --l 1 or 2, got {a.l}")
        return rectangle_spectrum(a.l, a.width, a.height, a.basis or 20, a.count)
    if a.domain == "disk":
        if a.l != 2:
            raise UsageError(f"disk supports only the clamped plate (--l 2), got --l {a.l}")
        if a.n not in (None, 2):
            raise UsageError("disk forces --n 2")
        if a.basis is not None:
            raise UsageError("--basis does not apply to the disk (Bessel roots)")
        return disk_clamped_plate_spectrum(a.count)
    if a.n is None:
        raise UsageError("sphere needs --n")
    if a.basis is not None:
        raise UsageError("--basis does not apply to the sphere (analytic)")
    return sphere_closed_spectrum(a.n, a.l, a.count)


def cmd_spectrum(a) -> int:
    try:
        s = _build_spectrum(a)
    except (ConvergenceError, np.linalg.LinAlgError, RootCountError) as e:
        print(f"polybounds spectrum: convergence failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, ValueError) as e:
        print(f"polybounds spectrum: {e}", file=sys.stderr)
        return EXIT_USAGE
    if len(s) < a.count:
        print(f"polybounds spectrum: only {len(s)} of {a.count} eigenvalues converged", file=sys.stderr)
    if a.out:
        write_spectrum(s, a.out)
    else:
        print(json.dumps(spectrum_to_dict(s), indent=2))
    return EXIT_OK


def _load(path):
    try:
        return read_spectrum(path)
    except (SpectrumFileError, SpectrumValidationError) as e:
        raise UsageError(str(e)) from None


def _text_line(e: VerifyEntry) -> str:
    r = e.report
    k = "-" if e.k is None else e.k
    if r is None:
        return f"{e.spectrum_id} {e.rule} k={k} ERROR {e.error}"
    parts = [f"{e.spectrum_id} {e.rule} k={k}"]
    if r.bound is not None:
        parts.append(f"bound={r.bound:.12g}")
    if r.residual is not None:
        parts.append(f"residual={r.residual:.6g}")
    parts.append(f"slack={r.slack:.3g}")
    parts.append("holds" if r.holds else "VIOLATED")
    return " ".join(parts)


def _emit(entries: list[VerifyEntry], fmt: str) -> None:
    if fmt == "csv":
        sys.stdout.write(entries_to_csv(entries))
    elif fmt == "json-lines":
        sys.stdout.write(entries_to_json_lines(entries))
    else:
        for e in entries:
            print(_text_line(e))


def cmd_bounds(a) -> int:
    try:
        s = _load(a.spectrum)
    except UsageError as e:
        print(f"polybounds bounds: {e}", file=sys.stderr)
        return EXIT_USAGE
    rule = RULES[a.rule]
    if a.k is not None:
        ks = [a.k]
    elif rule.indexed:
        ks = list(range(1, len(s)))
    else:
        ks = [None]
    sid = a.spectrum
    entries = []
    try:
        for k in ks:
            entries.append(VerifyEntry(sid, a.rule, k, evaluate(a.rule, s, k)))
    except KindMismatchError as e:
        print(f"polybounds bounds: {a.rule}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BoundError as e:
        print(f"polybounds bounds: {a.rule}: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    _emit(entries, a.format)
    return EXIT_OK if all(e.report.holds for e in entries) else EXIT_VIOLATION


def cmd_verify(a) -> int:
    if not a.spectrum and not a.builtin_suite:
        print("polybounds verify: give at least one --spectrum PATH or --builtin-suite", file=sys.stderr)
        return EXIT_USAGE
    spectra = {}
    header: dict = {"tool": "polybounds", "version": __version__}
    t0 = time.perf_counter()
    if a.builtin_suite:
        try:
            spectra.update(builtin_suite())
        except (ConvergenceError, np.linalg.LinAlgError, RootCountError) as e:
            print(f"polybounds verify: builtin suite failed to converge: {e}", file=sys.stderr)
            return EXIT_NUMERIC
        header["builtin_suite"] = [{"id": sid, "generator": g, "params": kw} for sid, g, kw in BUILTIN_SUITE]
    for p in a.spectrum or []:
        try:
            spectra[p] = _load(p)
        except UsageError as e:
            print(f"polybounds verify: {e}", file=sys.stderr)
            return EXIT_USAGE
    m = verify_spectra(spectra, workers=a.jobs, header=header)
    log.info("verified %d spectra in %.2f s", len(spectra), time.perf_counter() - t0)
    if a.out:
        write_report(m, a.out)
    for e in m.failures():
        print(_text_line(e))
    sm = m.summary
    print(f"{len(spectra)} spectra, {sm['total']} checks: {sm['pass']} pass, {sm['fail']} fail, {sm['error']} error")
    return EXIT_OK if m.ok else EXIT_VIOLATION


def _fmt_coeff(c: Fraction, style: str) -> str:
    if style == "decimal":
        return repr(float(c))
    return str(c)


def cmd_fpoly(a) -> int:
    if a.n < 1 or a.l < 1:
        print(f"polybounds fpoly: n and l must be positive (got n={a.n}, l={a.l})", file=sys.stderr)
        return EXIT_USAGE
    p = f_poly(a.n, a.l)
    print(" ".join(_fmt_coeff(c, a.format) for c in reversed(p.coeffs)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="polybounds", description="Universal eigenvalue bounds for polyharmonic operators.")
    p.add_argument("--version", action="version", version=f"polybounds {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("spectrum", help="generate a reference spectrum file")
    sp.add_argument("--domain", choices=["interval", "rectangle", "disk", "sphere"], required=True)
    sp.add_argument("--l", type=_positive, required=True, help="operator order")
    sp.add_argument("--n", type=int, default=None, help="dimension (required for the sphere)")
    sp.add_argument("--count", type=_positive, default=5)
    sp.add_argument("--kind", choices=list(_KINDS), default="dirichlet")
    sp.add_argument("--basis", type=_positive, default=None, help="Galerkin basis size per axis")
    sp.add_argument("--width", type=float, default=1.0, help="rectangle width")
    sp.add_argument("--height", type=float, default=1.0, help="rectangle height")
    sp.add_argument("--out", default=None, help="output path (default: stdout)")
    sp.set_defaults(func=cmd_spectrum)

    bp = sub.add_parser("bounds", help="apply one rule to a spectrum file")
    bp.add_argument("--spectrum", required=True)
    bp.add_argument("--rule", choices=list(RULES), required=True)
    bp.add_argument("--k", type=int, default=None, help="index (default: every index)")
    bp.add_argument("--format", choices=["text", "csv", "json-lines"], default="text")
    bp.set_defaults(func=cmd_bounds)

    vp = sub.add_parser("verify", help="run every applicable rule at every index")
    vp.add_argument("--spectrum", action="append", default=[], help="spectrum file (repeatable)")
    vp.add_argument("--builtin-suite", action="store_true", help="generate and check the reference battery")
    vp.add_argument("--out", default=None, help="write the JSON report here")
    vp.add_argument("--jobs", type=_positive, default=1, help="worker threads")
    vp.set_defaults(func=cmd_verify)

    fp = sub.add_parser("fpoly", help="print F_l coefficients, highest degree first")
    fp.add_argument("--n", type=int, required=True)
    fp.add_argument("--l", type=int, required=True)
    fp.add_argument("--format", choices=["fractions", "decimal"], default="fractions")
    fp.set_defaults(func=cmd_fpoly)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    a = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING, format="%(name)s: %(message)s")
    return a.func(a)


if __name__ == "__main__":
    sys.exit(main())
