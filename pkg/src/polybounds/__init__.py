"""Universal eigenvalue bounds for clamped polyharmonic and buckling problems.

Calculators for the bounds (:mod:`polybounds.bounds`), reference spectra
(:mod:`polybounds.solver`), the exact F_l polynomials for sphere domains
(:mod:`polybounds.spherepoly`), lemma oracles (:mod:`polybounds.lemmas`) and a
verification harness (:mod:`polybounds.verify`).
"""
from .core import (
    BoundReport,
    Domain,
    DomainKind,
    ProblemKind,
    ProblemSpec,
    Source,
    SourceKind,
    Spectrum,
    read_spectrum,
    validate_spectrum,
    write_spectrum,
)

__version__ = "0.1.0"

from .bounds import RULES, BoundError, KindMismatchError, RuleIndexError, evaluate
from .spherepoly import RationalPoly, SphereCoefficients, bc_polys, f_poly
from .verify import VerifyMatrix, builtin_suite, verify_spectra

__all__ = [
    "BoundReport",
    "Domain",
    "DomainKind",
    "ProblemKind",
    "ProblemSpec",
    "Source",
    "SourceKind",
    "Spectrum",
    "read_spectrum",
    "validate_spectrum",
    "write_spectrum",
    "RULES",
    "BoundError",
    "KindMismatchError",
    "RuleIndexError",
    "evaluate",
    "RationalPoly",
    "SphereCoefficients",
    "bc_polys",
    "f_poly",
    "VerifyMatrix",
    "builtin_suite",
    "verify_spectra",
]
