"""Universal eigenvalue inequalities as calculators and residual checkers.

Index convention: ``k`` counts eigenvalues from 1, so "the first k eigenvalues"
is ``s.values[:k]`` and lambda_{k+1} is ``s.values[k]``.

Residual functions return LHS - RHS of an inequality written as LHS <= RHS, so a
non-positive residual means the inequality holds. Bound functions return an
explicit upper bound for lambda_{k+1}.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import BoundReport, DomainKind, ProblemKind, Spectrum
from .spherepoly import SphereCoefficients

__all__ = [
    "BoundError",
    "KindMismatchError",
    "RuleIndexError",
    "GapCollapseError",
    "DiscriminantError",
    "YangConstants",
    "yang_constant",
    "yang_constants",
    "low_order_constant",
    "low_order_weight",
    "buckling_general_weight",
    "ppw_gap_bound",
    "hile_protter_residual",
    "yang_weak_bound",
    "yang_strong_residual",
    "explicit_bound_a",
    "explicit_bound_b",
    "low_order_sum_residual",
    "buckling_sum_residual",
    "buckling_general_residual",
    "sphere_yang_residual",
    "sphere_explicit_bound_a",
    "sphere_explicit_bound_b",
    "RULES",
    "Rule",
    "evaluate",
]

_TINY = sys.float_info.min


class BoundError(ValueError):
    """A rule cannot be evaluated on the given input."""


class KindMismatchError(BoundError):
    """The spectrum does not satisfy the rule's hypotheses (problem kind, domain, order)."""


class RuleIndexError(BoundError, IndexError):
    """Index k out of range, or too few eigenvalues for the rule."""


class GapCollapseError(BoundError):
    pass


class DiscriminantError(BoundError):
    pass


@dataclass(frozen=True)
class YangConstants:
    """c = 4 l (n + 2l - 2) / n^2, the coupling constant of the Yang-type relations."""

    c: float
    half_c: float


def yang_constant(n, l):
    # works on ints and on sympy symbols
    return 4 * l * (n + 2 * l - 2) / n**2


def yang_constants(n: int, l: int) -> YangConstants:
    c = yang_constant(n, l)
    return YangConstants(c=c, half_c=c / 2)


def low_order_constant(n, l):
    """Multiplier of lambda_1 on the right of the lower-order sum inequality."""
    return n + 4 * l * (2 * l - 1)


def low_order_weight(i, l):
    """Weight of (lambda_{n+1-i} - lambda_1) in the lower-order sum, i = 1..n-1."""
    return 2 * (l - 1) * i / (2 * l + i - 1)


def buckling_general_weight(k, l):
    return k / (2 * l + k)


def _pow(lam: np.ndarray, e: float) -> np.ndarray:
    """lam**e with 0**e := 0 for e > 0 and lam**0 := 1."""
    if e == 0:
        return np.ones_like(lam)
    if e == 1:
        return lam.copy()
    out = np.zeros_like(lam)
    pos = lam > 0
    out[pos] = lam[pos] ** e
    return out


def _vals(s: Spectrum) -> np.ndarray:
    return np.asarray(s.values, dtype=float)


def _require_dirichlet(s: Spectrum, *, spherical: bool) -> None:
    if s.kind is not ProblemKind.DIRICHLET_POLYHARMONIC:
        raise KindMismatchError(f"rule needs kind dirichlet_polyharmonic, spectrum is {s.kind.value}")
    if spherical and not s.domain.is_spherical:
        raise KindMismatchError(f"rule needs a spherical domain, spectrum domain is {s.domain}")
    if not spherical and s.domain.is_spherical:
        raise KindMismatchError(f"rule needs a Euclidean domain with boundary, spectrum domain is {s.domain}")


def _require_k(s: Spectrum, k: int, *, need_next: bool) -> None:
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise RuleIndexError(f"k must be a positive integer, got {k!r}")
    hi = len(s) - 1 if need_next else len(s)
    if k > hi:
        raise RuleIndexError(
            f"k = {k} out of range: spectrum has {len(s)} eigenvalues"
            + (" and the rule needs lambda_{k+1}" if need_next else "")
        )


def _require_positive_first(s: Spectrum) -> None:
    if not s.values or s.values[0] <= 0:
        raise BoundError("rule needs lambda_1 > 0")


def _require_count(s: Spectrum, m: int) -> None:
    if len(s) < m:
        raise RuleIndexError(f"rule needs the first {m} eigenvalues, spectrum has {len(s)}")


def _sqrt_checked(x: float, what: str) -> float:
    if not x >= 0:
        raise DiscriminantError(f"discriminant negative ({what} = {x!r})")
    return math.sqrt(x)


def _mean_var(lam: np.ndarray) -> tuple[float, float]:
    m = float(lam.mean())
    return m, float(np.mean((lam - m) ** 2))


# --- Euclidean domains -------------------------------------------------------


def ppw_gap_bound(s: Spectrum, k: int) -> float:
    """PPW-type bound: lambda_k + c/k^2 (sum lambda_i^{1/l}) (sum lambda_i^{(l-1)/l})."""
    _require_dirichlet(s, spherical=False)
    _require_k(s, k, need_next=True)
    _require_positive_first(s)
    lam = _vals(s)[:k]
    l, n = s.l, s.n
    c = yang_constant(n, l)
    s1 = float(_pow(lam, 1 / l).sum())
    s2 = float(_pow(lam, (l - 1) / l).sum())
    lam_k = float(lam[-1])
    # factored so that l = 1, k = 1 gives exactly (1 + c) * lambda_1
    return lam_k * (1 + c * ((s1 * s2) / lam_k) / (k * k))


def _hile_protter_sides(s: Spectrum, k: int) -> tuple[float, float]:
    _require_dirichlet(s, spherical=False)
    if s.l != 1:
        raise KindMismatchError(f"Hile-Protter inequality needs l = 1, spectrum has l = {s.l}")
    _require_k(s, k, need_next=True)
    _require_positive_first(s)
    v = _vals(s)
    lam, nxt = v[:k], v[k]
    gaps = nxt - lam
    if np.any(gaps <= 0):
        i = int(np.argmax(gaps <= 0)) + 1
        raise GapCollapseError(f"gap collapse: lambda_{k + 1} = lambda_{i}")
    return k * s.n / 4, float(np.sum(lam / gaps))


def hile_protter_residual(s: Spectrum, k: int) -> float:
    """kn/4 - sum lambda_i / (lambda_{k+1} - lambda_i); needs l = 1 and a strict gap."""
    lhs, rhs = _hile_protter_sides(s, k)
    return lhs - rhs


def _yang_weak_sides(s: Spectrum, k: int) -> tuple[float, float]:
    _require_dirichlet(s, spherical=False)
    _require_k(s, k, need_next=True)
    v = _vals(s)
    lam, g = v[:k], v[k] - v[:k]
    c = yang_constant(s.n, s.l)
    return float(np.sum(g * g)), c * float(np.sum(g * lam))


def _quadratic_bound(m: float, var: float, c: float) -> float:
    # larger root of sum (x - lam_i)^2 = c sum (x - lam_i) lam_i
    return (1 + c / 2) * m + _sqrt_checked((c * m / 2) ** 2 - (1 + c) * var, "radicand")


def yang_weak_bound(s: Spectrum, k: int) -> tuple[float, float]:
    """Weak Yang relation at index k.

    Returns ``(residual, bound)`` where ``residual = sum (lam_{k+1}-lam_i)^2 -
    c sum (lam_{k+1}-lam_i) lam_i`` and ``bound`` is the larger root of the same
    relation read as a quadratic in lam_{k+1}.
    """
    lhs, rhs = _yang_weak_sides(s, k)
    m, var = _mean_var(_vals(s)[:k])
    return lhs - rhs, _quadratic_bound(m, var, yang_constant(s.n, s.l))


def _yang_strong_sides(s: Spectrum, k: int) -> tuple[float, float]:
    _require_dirichlet(s, spherical=False)
    _require_k(s, k, need_next=True)
    v = _vals(s)
    lam, g = v[:k], v[k] - v[:k]
    l = s.l
    c = yang_constant(s.n, l)
    lhs = float(np.sum(g * g))
    a = float(np.sum(g * g * _pow(lam, (l - 1) / l)))
    b = float(np.sum(g * _pow(lam, 1 / l)))
    return lhs, math.sqrt(c) * math.sqrt(a) * math.sqrt(b)


def yang_strong_residual(s: Spectrum, k: int) -> float:
    lhs, rhs = _yang_strong_sides(s, k)
    return lhs - rhs


def explicit_bound_a(s: Spectrum, k: int) -> float:
    """Upper bound for lambda_{k+1} from the first k eigenvalues (power-sum form)."""
    _require_dirichlet(s, spherical=False)
    _require_k(s, k, need_next=False)
    lam = _vals(s)[:k]
    l = s.l
    m, var = _mean_var(lam)
    d = (yang_constant(s.n, l) / 2) / (k * k) * float(_pow(lam, (l - 1) / l).sum()) * float(_pow(lam, 1 / l).sum())
    return m + d + _sqrt_checked(d * d - var, "D^2 - variance")


def explicit_bound_b(s: Spectrum, k: int) -> float:
    """Upper bound for lambda_{k+1} from the mean and variance of the first k eigenvalues."""
    _require_dirichlet(s, spherical=False)
    _require_k(s, k, need_next=False)
    m, var = _mean_var(_vals(s)[:k])
    return _quadratic_bound(m, var, yang_constant(s.n, s.l))


def _low_order_sides(s: Spectrum) -> tuple[float, float]:
    _require_dirichlet(s, spherical=False)
    n, l = s.n, s.l
    _require_count(s, n + 1)
    _require_positive_first(s)
    v = _vals(s)
    lhs = float(np.sum(v[1 : n + 1]))
    lhs += sum(low_order_weight(i, l) * (v[n - i] - v[0]) for i in range(1, n))
    return lhs, low_order_constant(n, l) * float(v[0])


def low_order_sum_residual(s: Spectrum) -> float:
    lhs, rhs = _low_order_sides(s)
    return lhs - rhs


def _buckling_sum_sides(s: Spectrum) -> tuple[float, float]:
    if s.kind is not ProblemKind.BUCKLING:
        raise KindMismatchError(f"rule needs kind buckling, spectrum is {s.kind.value}")
    n = s.n
    _require_count(s, n + 1)
    _require_positive_first(s)
    v = _vals(s)
    lhs = float(np.sum(v[1 : n + 1])) + 4 * (v[1] - v[0]) / (n + 4)
    return lhs, (n + 4) * float(v[0])


def buckling_sum_residual(s: Spectrum) -> float:
    lhs, rhs = _buckling_sum_sides(s)
    return lhs - rhs


def _buckling_general_sides(s: Spectrum) -> tuple[float, float]:
    if s.kind not in (ProblemKind.GENERALIZED_BUCKLING, ProblemKind.BUCKLING):
        raise KindMismatchError(f"rule needs kind generalized_buckling, spectrum is {s.kind.value}")
    n, l = s.n, s.l
    if l < 2:
        raise KindMismatchError(f"rule needs l >= 2, spectrum has l = {l}")
    _require_count(s, n + 1)
    _require_positive_first(s)
    v = _vals(s)
    lhs = sum(buckling_general_weight(j, l) * (v[n + 1 - j] - v[0]) for j in range(1, n + 1))
    return float(lhs), 4 * (l - 1) * float(v[0])


def buckling_general_residual(s: Spectrum) -> float:
    """sum_j j/(2l+j) (Lam_{n+2-j} - Lam_1) - 4(l-1) Lam_1; the inequality is strict."""
    lhs, rhs = _buckling_general_sides(s)
    return lhs - rhs


# --- domains in the unit sphere ---------------------------------------------


def _sphere_setup(s: Spectrum, k: int, a: Optional[SphereCoefficients], need_next: bool):
    _require_dirichlet(s, spherical=True)
    _require_k(s, k, need_next=need_next)
    if a is None:
        a = SphereCoefficients.for_sphere(s.n, s.l)
    if a.l != s.l or (a.n and a.n != s.n):
        raise BoundError(f"coefficients are for (n={a.n}, l={a.l}), spectrum has (n={s.n}, l={s.l})")
    v = _vals(s)
    lam = v[:k]
    l = s.l
    p = sum(a.abs_a[j] * _pow(lam, j / l) for j in range(l))
    root = _pow(lam, 1 / l)
    return v, lam, np.asarray(p, dtype=float), root


def _sphere_yang_sides(s: Spectrum, k: int, a: Optional[SphereCoefficients] = None) -> tuple[float, float]:
    v, lam, p, root = _sphere_setup(s, k, a, need_next=True)
    n = s.n
    g = v[k] - lam
    lhs = float(np.sum(g * g))
    rhs = math.sqrt(float(np.sum(g * g * p))) * math.sqrt(float(np.sum(g * (n * n + 4 * root)))) / n
    return lhs, rhs


def sphere_yang_residual(s: Spectrum, k: int, a: Optional[SphereCoefficients] = None) -> float:
    """Yang-type residual for domains in the unit n-sphere.

    The square-root weight uses lambda_i^{1/l} (not lambda_i^{1/2}); the two agree
    for l = 2 only.
    """
    lhs, rhs = _sphere_yang_sides(s, k, a)
    return lhs - rhs


def sphere_explicit_bound_a(s: Spectrum, k: int, a: Optional[SphereCoefficients] = None) -> float:
    _, lam, p, root = _sphere_setup(s, k, a, need_next=False)
    n = s.n
    m, var = _mean_var(lam)
    coupling = float(p.sum()) * (k * n * n + 4 * float(root.sum())) / (2 * n * n * k * k)
    return m + coupling + _sqrt_checked(coupling * coupling - var, "radicand")


def sphere_explicit_bound_b(s: Spectrum, k: int, a: Optional[SphereCoefficients] = None) -> float:
    _, lam, p, root = _sphere_setup(s, k, a, need_next=False)
    n = s.n
    w = p * (n * n + 4 * root)
    u = float(lam.mean()) + float(w.sum()) / (2 * n * n * k)
    v = float(np.mean(lam * lam)) + float(np.sum(lam * w)) / (n * n * k)
    return u + _sqrt_checked(u * u - v, "U^2 - V")


# --- rule registry -----------------------------------------------------------


def _euclid_dirichlet(s: Spectrum) -> bool:
    return s.kind is ProblemKind.DIRICHLET_POLYHARMONIC and not s.domain.is_spherical


def _sphere_dirichlet(s: Spectrum) -> bool:
    return s.kind is ProblemKind.DIRICHLET_POLYHARMONIC and s.domain.is_spherical


@dataclass(frozen=True)
class Rule:
    id: str
    title: str
    kind: str  # "residual" or "bound"
    indexed: bool
    applies: Callable[[Spectrum], bool]
    sides: Optional[Callable] = None  # residual rules: (s[, k]) -> (lhs, rhs)
    bound: Optional[Callable] = None  # bound rules: (s, k) -> float
    strict: bool = False

    def valid_ks(self, s: Spectrum) -> list[Optional[int]]:
        """Indices at which the rule is checked against ``s`` in a verification run."""
        if not self.applies(s):
            return []
        if not self.indexed:
            return [None] if len(s) >= s.n + 1 else []
        ks = list(range(1, len(s)))
        if self.id == "hile-protter":
            # equal neighbours make the sum singular; skip them
            ks = [k for k in ks if s.values[k] - s.values[k - 1] > s.tolerance * s.values[k]]
        return ks


RULES: dict[str, Rule] = {
    r.id: r
    for r in [
        Rule("ppw", "PPW-type gap bound", "bound", True, _euclid_dirichlet, bound=ppw_gap_bound),
        Rule(
            "hile-protter",
            "Hile-Protter sum",
            "residual",
            True,
            lambda s: _euclid_dirichlet(s) and s.l == 1,
            sides=_hile_protter_sides,
        ),
        Rule("yang-weak", "weak Yang relation", "residual", True, _euclid_dirichlet, sides=_yang_weak_sides),
        Rule("yang-strong", "Yang-type relation, order l", "residual", True, _euclid_dirichlet, sides=_yang_strong_sides),
        Rule("cor3.1a", "explicit bound (power sums)", "bound", True, _euclid_dirichlet, bound=explicit_bound_a),
        Rule("cor3.1b", "explicit bound (mean/variance)", "bound", True, _euclid_dirichlet, bound=explicit_bound_b),
        Rule("thm4.1", "lower-order eigenvalue sum", "residual", False, _euclid_dirichlet, sides=_low_order_sides),
        Rule(
            "thm4.2",
            "buckling eigenvalue sum",
            "residual",
            False,
            lambda s: s.kind is ProblemKind.BUCKLING,
            sides=_buckling_sum_sides,
        ),
        Rule(
            "thm4.3",
            "generalized buckling weighted sum",
            "residual",
            False,
            lambda s: s.kind in (ProblemKind.BUCKLING, ProblemKind.GENERALIZED_BUCKLING) and s.l >= 2,
            sides=_buckling_general_sides,
            strict=True,
        ),
        Rule("thm5.1", "Yang-type relation in the sphere", "residual", True, _sphere_dirichlet, sides=_sphere_yang_sides),
        Rule("cor5.1a", "sphere explicit bound (power sums)", "bound", True, _sphere_dirichlet, bound=sphere_explicit_bound_a),
        Rule("cor5.1b", "sphere explicit bound (U, V form)", "bound", True, _sphere_dirichlet, bound=sphere_explicit_bound_b),
    ]
}


def _slack(lhs: float, rhs: float) -> float:
    return -(lhs - rhs) / max(abs(lhs), abs(rhs), _TINY)


def evaluate(rule: str, s: Spectrum, k: Optional[int] = None) -> BoundReport:
    """Apply one rule to a spectrum and package the outcome.

    Raises the rule's BoundError subclasses on hypothesis or input failures.
    """
    try:
        r = RULES[rule]
    except KeyError:
        raise BoundError(f"unknown rule {rule!r}; choose from {', '.join(RULES)}") from None
    if r.indexed and k is None:
        raise RuleIndexError(f"rule {rule} needs an index k")
    tol = float(s.tolerance)
    inputs: dict = {"n": s.n, "l": s.l, "kind": s.kind.value, "domain": str(s.domain)}
    if rule in ("ppw", "yang-weak", "yang-strong", "cor3.1a", "cor3.1b"):
        inputs["c"] = yang_constant(s.n, s.l)
    if r.id.startswith(("thm5", "cor5")):
        a = SphereCoefficients.for_sphere(s.n, s.l)
        inputs["abs_a"] = list(a.abs_a)
        inputs["root_exponent"] = f"1/{s.l}"
        if s.domain.kind is DomainKind.CLOSED_SPHERE:
            inputs["note"] = "closed sphere: empty boundary, outside the stated domain hypothesis"

    if r.kind == "residual":
        lhs, rhs = r.sides(s, k) if r.indexed else r.sides(s)
        lhs, rhs = float(lhs), float(rhs)
        residual = lhs - rhs
        slack = _slack(lhs, rhs)
        if r.strict:
            holds = bool(residual < tol * abs(rhs))
        else:
            holds = bool(slack >= -tol)
        inputs.update(lhs=lhs, rhs=rhs)
        return BoundReport(rule, k if r.indexed else None, None, residual, holds, slack, tol, inputs)

    bound = float(r.bound(s, k))
    if k < len(s):
        nxt = s.values[k]
        residual = nxt - bound
        slack = _slack(nxt, bound)
        holds = bool(slack >= -tol)
        inputs["lambda_next"] = nxt
    else:
        residual, slack, holds = None, float("inf"), math.isfinite(bound)
    return BoundReport(rule, k, bound, residual, holds, slack, tol, inputs)
