"""The nine acceptance criteria, one test each.

Every test records a PASS/FAIL line that pytest prints in a terminal-summary
section (run with ``-s`` to also see them inline).
"""
import contextlib
import math
import time

import numpy as np
import pytest
import sympy as sp

import oracles
from conftest import ACCEPTANCE_LINES, make
from polybounds.bounds import (
    RULES,
    explicit_bound_a,
    low_order_constant,
    low_order_weight,
    ppw_gap_bound,
    sphere_explicit_bound_a,
    sphere_yang_residual,
)
from polybounds.cli import main
from polybounds.core import ProblemKind, write_spectrum
from polybounds.lemmas import (
    DEFAULT_SEED,
    chebyshev_suite,
    moment_check,
    rearrangement_suite,
    reverse_chebyshev_suite,
    simplex_grid_min,
)
from polybounds.solver import (
    default_basis_size,
    eigenfunction_moments,
    interval_buckling_spectrum,
    interval_polyharmonic_eig,
    interval_polyharmonic_spectrum,
    rectangle_spectrum,
    sphere_closed_spectrum,
)
from polybounds.spherepoly import RationalPoly, bc_polys, f_poly
from polybounds.verify import builtin_suite, verify_spectra

PI2 = math.pi**2


@contextlib.contextmanager
def criterion(num: int, title: str):
    t0 = time.perf_counter()
    detail: dict = {}
    try:
        yield detail
    except BaseException as exc:
        line = f"criterion {num} FAIL  {title}: {type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        raise
    extra = "".join(f"; {k}={v}" for k, v in detail.items())
    line = f"criterion {num} PASS  {title} ({time.perf_counter() - t0:.2f} s{extra})"
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.fixture(scope="module")
def suite():
    t0 = time.perf_counter()
    spectra = builtin_suite()
    m = verify_spectra(spectra, workers=4)
    return spectra, m, time.perf_counter() - t0


def test_criterion_1_analytic_regression():
    with criterion(1, "analytic spectra: interval and unit square, l=1, rel 1e-9") as d:
        t0 = time.perf_counter()
        s = interval_polyharmonic_spectrum(1, 30, 5)
        worst = max(abs(v - (i * math.pi) ** 2) / (i * math.pi) ** 2 for i, v in enumerate(s.values, 1))
        sq = rectangle_spectrum(1, 1.0, 1.0, 30, 8)
        exact = sorted(PI2 * (p * p + q * q) for p in range(1, 6) for q in range(1, 6))[:8]
        worst = max(worst, max(abs(v - e) / e for v, e in zip(sq.values, exact)))
        elapsed = time.perf_counter() - t0
        d["max_rel_err"] = f"{worst:.1e}"
        assert len(s) == 5 and len(sq) == 8
        assert worst <= 1e-9
        assert elapsed < 5.0


def test_criterion_2_transcendental_oracles():
    with criterion(2, "beam vs cos(mu)cosh(mu)=1 (rel 1e-8), buckling vs 4 pi^2 (rel 1e-9)") as d:
        beam = interval_polyharmonic_spectrum(2, 40, 2)
        mus = oracles.beam_roots_bisection(2)
        errs = [abs(v - mu**4) / mu**4 for v, mu in zip(beam.values, mus)]
        buck = interval_buckling_spectrum(2, None, 1)
        berr = abs(buck.values[0] - 4 * PI2) / (4 * PI2)
        d["beam_rel_err"] = f"{max(errs):.1e}"
        d["buckling_rel_err"] = f"{berr:.1e}"
        assert max(errs) <= 1e-8
        assert berr <= 1e-9


def test_criterion_3_inequality_battery(suite):
    with criterion(3, "every rule holds on every builtin-suite spectrum, slack >= -1e-8") as d:
        spectra, m, elapsed = suite
        d["checks"] = m.summary["total"]
        d["suite_seconds"] = f"{elapsed:.1f}"
        assert m.summary["fail"] == 0 and m.summary["error"] == 0, [str(e) for e in m.failures()[:5]]
        for e in m.entries:
            assert e.report.tolerance <= 1e-8
            assert e.report.slack >= -1e-8 or (RULES[e.rule].strict and e.report.holds)
        covered = {e.rule for e in m.entries}
        assert covered == set(RULES)
        ids = set(spectra)
        for need in ("interval-l1", "interval-l2", "interval-l3", "square-l1", "square-l2", "disk-l2"):
            assert need in ids
        for n in (2, 3):
            for l in (1, 2, 3):
                assert f"sphere-n{n}-l{l}" in ids
        assert elapsed < 60.0


def test_criterion_4_equality_case():
    with criterion(4, "closed S^2, l=1, k=1: Yang residual 0 and bound_a = |a_0| = 2 = lambda_2") as d:
        s = sphere_closed_spectrum(2, 1, 6)
        r = sphere_yang_residual(s, 1)
        b = sphere_explicit_bound_a(s, 1)
        d["residual"] = r
        d["bound_a"] = b
        assert abs(r) <= 1e-12 * 4
        assert b == 2.0 == s.values[1]


def test_criterion_5_constant_reductions():
    with criterion(5, "PPW l=1,k=1 is (1+4/n) lambda_1 bit-exactly; low-order constants n+4, n+24") as d:
        rng = np.random.default_rng(DEFAULT_SEED)
        checked = 0
        for n in range(1, 11):
            for lam1 in rng.uniform(0.1, 1e4, size=50):
                s = make([lam1, 2 * lam1], n=n)
                assert ppw_gap_bound(s, 1) == (1 + 4 / n) * lam1
                checked += 1
        n = sp.Symbol("n", positive=True)
        i = sp.Symbol("i", positive=True)
        assert sp.expand(low_order_constant(n, 1) - (n + 4)) == 0
        assert sp.expand(low_order_constant(n, 2) - (n + 24)) == 0
        assert sp.simplify(low_order_weight(i, 1)) == 0
        d["ppw_cases"] = checked


def test_criterion_6_polynomial_recursions():
    with criterion(6, "F_q = B_q for n<=8, q<=10; F_2 = t^2-(2n+4)t+n^2") as d:
        for n in range(1, 9):
            for q in range(0, 11):
                assert f_poly(n, q).coeffs == bc_polys(n, q)[0].coeffs
            t = RationalPoly.t()
            assert f_poly(n, 2) == t * t - (2 * n + 4) * t + n * n
        ns, T = sp.symbols("n t")
        f2 = sp.expand((2 * T - 2) * (T - ns) - (T**2 + 2 * T - ns * (ns - 2)))
        assert sp.expand(f2 - (T**2 - (2 * ns + 4) * T + ns**2)) == 0
        d["pairs"] = 8 * 11


def test_criterion_7_lemma_suites():
    with criterion(7, "simplex grid min, Chebyshev/rearrangement suites (1e5 trials), moment checks l<=4") as d:
        for n in (1, 2, 3):
            best, _ = simplex_grid_min(n, 1e-3)
            assert abs(best - 1 / (n + 4)) <= 1e-6
        assert chebyshev_suite(100_000, DEFAULT_SEED) == 0
        assert reverse_chebyshev_suite(100_000, DEFAULT_SEED) == 0
        assert rearrangement_suite(100_000, DEFAULT_SEED) == 0
        count = 0
        for l in range(1, 5):
            N = default_basis_size(l)
            e, g = interval_polyharmonic_eig(l, N)
            for idx in range(N):
                assert moment_check(eigenfunction_moments(e, g, idx, l), l) == [], (l, idx)
                count += 1
        d["eigenfunctions"] = count
        d["seed"] = DEFAULT_SEED


def test_criterion_8_dominance(suite):
    with criterion(8, "explicit_bound_a <= ppw_gap_bound on every builtin Dirichlet spectrum") as d:
        spectra, _, _ = suite
        worst, count = -math.inf, 0
        for s in spectra.values():
            if s.kind is not ProblemKind.DIRICHLET_POLYHARMONIC or s.domain.is_spherical:
                continue
            for k in range(1, len(s)):
                a, p = explicit_bound_a(s, k), ppw_gap_bound(s, k)
                worst = max(worst, (a - p) / p)
                count += 1
                assert a <= p * (1 + 1e-12), (k, a, p)
        d["pairs"] = count
        d["max_rel_excess"] = f"{worst:.1e}"


def test_criterion_9_fault_injection(tmp_path, capsys):
    with criterion(9, "10x inflation of lambda_{k+1} flips a residual positive and verify exits nonzero") as d:
        bases = {
            "interval-l1": interval_polyharmonic_spectrum(1, 30, 5),
            "beam": interval_polyharmonic_spectrum(2, 40, 4),
            "buckling": interval_buckling_spectrum(2, None, 3),
            "sphere": sphere_closed_spectrum(2, 2, 6),
        }
        flipped = 0
        for name, s in bases.items():
            # the buckling sums only read Lambda_1..Lambda_{n+1}
            top = s.n if s.kind is not ProblemKind.DIRICHLET_POLYHARMONIC else len(s) - 1
            for k in range(1, top + 1):
                vals = list(s.values[: k + 1])
                vals[k] *= 10
                bad = s.with_values(vals)
                m = verify_spectra({name: bad})
                assert any(e.report is not None and e.report.residual is not None and e.report.residual > 0 for e in m.entries)
                assert not m.ok
                p = tmp_path / f"{name}-{k}.json"
                write_spectrum(bad, p)
                assert main(["verify", "--spectrum", str(p)]) != 0
                flipped += 1
        buck = bases["buckling"]
        beyond = buck.with_values(list(buck.values[:2]) + [10 * buck.values[2]])
        assert verify_spectra({"buckling": beyond}).ok
        capsys.readouterr()
        d["injections"] = flipped
