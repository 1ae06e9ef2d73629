"""Shared domain types: problem descriptors, spectra, bound reports, spectrum files."""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Sequence, Union

__all__ = [
    "ProblemKind",
    "DomainKind",
    "Domain",
    "ProblemSpec",
    "SourceKind",
    "Source",
    "Spectrum",
    "BoundReport",
    "Violation",
    "SpectrumFileError",
    "SpectrumValidationError",
    "DEFAULT_TOLERANCE",
    "validate_spectrum",
    "read_spectrum",
    "write_spectrum",
    "spectrum_to_dict",
    "spectrum_from_dict",
]


class ProblemKind(enum.Enum):
    DIRICHLET_POLYHARMONIC = "dirichlet_polyharmonic"
    BUCKLING = "buckling"
    GENERALIZED_BUCKLING = "generalized_buckling"


class DomainKind(enum.Enum):
    INTERVAL = "interval"
    RECTANGLE = "rectangle"
    DISK = "disk"
    CLOSED_SPHERE = "sphere"
    EXTERNAL = "external"


@dataclass(frozen=True)
class Domain:
    """Domain descriptor. Rectangles carry side lengths, external domains a label."""

    kind: DomainKind
    width: Optional[float] = None
    height: Optional[float] = None
    label: Optional[str] = None

    @classmethod
    def interval(cls) -> "Domain":
        return cls(DomainKind.INTERVAL)

    @classmethod
    def rectangle(cls, width: float = 1.0, height: float = 1.0) -> "Domain":
        return cls(DomainKind.RECTANGLE, width=float(width), height=float(height))

    @classmethod
    def disk(cls) -> "Domain":
        return cls(DomainKind.DISK)

    @classmethod
    def sphere(cls) -> "Domain":
        return cls(DomainKind.CLOSED_SPHERE)

    @classmethod
    def external(cls, label: str) -> "Domain":
        return cls(DomainKind.EXTERNAL, label=label)

    @property
    def has_boundary(self) -> bool:
        return self.kind is not DomainKind.CLOSED_SPHERE

    @property
    def is_spherical(self) -> bool:
        """Closed sphere, or an external domain labelled as lying in a sphere."""
        if self.kind is DomainKind.CLOSED_SPHERE:
            return True
        return self.kind is DomainKind.EXTERNAL and (self.label or "").lower().startswith("sphere")

    def __str__(self) -> str:
        if self.kind is DomainKind.RECTANGLE:
            return f"rectangle:{self.width!r}x{self.height!r}"
        if self.kind is DomainKind.EXTERNAL:
            return f"external:{self.label}"
        return self.kind.value

    @classmethod
    def parse(cls, text: str) -> "Domain":
        head, _, tail = text.partition(":")
        if head == "rectangle":
            if not tail:
                return cls.rectangle()
            w, sep, h = tail.partition("x")
            if not sep:
                raise ValueError(f"rectangle domain needs WIDTHxHEIGHT, got {text!r}")
            return cls.rectangle(float(w), float(h))
        if head == "external":
            return cls.external(tail)
        try:
            kind = DomainKind(head)
        except ValueError:
            raise ValueError(f"unknown domain {text!r}") from None
        if tail:
            raise ValueError(f"domain {head!r} takes no parameters, got {text!r}")
        return cls(kind)


@dataclass(frozen=True)
class ProblemSpec:
    """Which eigenproblem a spectrum solves: kind, operator order l, dimension n, domain."""

    kind: ProblemKind
    l: int
    n: int
    domain: Domain

    def violations(self) -> list["Violation"]:
        out = []
        if not isinstance(self.l, int) or self.l < 1:
            out.append(Violation("l-range", None, f"operator order l must be >= 1, got {self.l!r}"))
        elif self.kind is ProblemKind.GENERALIZED_BUCKLING and self.l < 2:
            out.append(Violation("l-range", None, "generalized buckling needs l >= 2"))
        elif self.kind is ProblemKind.BUCKLING and self.l != 2:
            out.append(Violation("l-range", None, "classical buckling has l = 2"))
        if not isinstance(self.n, int) or self.n < 1:
            out.append(Violation("n-range", None, f"dimension n must be >= 1, got {self.n!r}"))
        dk = self.domain.kind
        if dk is DomainKind.INTERVAL and self.n != 1:
            out.append(Violation("n-domain", None, f"interval forces n = 1, got n = {self.n}"))
        if dk in (DomainKind.RECTANGLE, DomainKind.DISK) and self.n != 2:
            out.append(Violation("n-domain", None, f"{dk.value} forces n = 2, got n = {self.n}"))
        if dk is DomainKind.RECTANGLE and not (
            self.domain.width and self.domain.height and self.domain.width > 0 and self.domain.height > 0
        ):
            out.append(Violation("domain", None, "rectangle sides must be positive"))
        if self.kind is not ProblemKind.DIRICHLET_POLYHARMONIC and not self.domain.has_boundary:
            out.append(Violation("domain", None, "buckling problems need a domain with boundary"))
        return out


class SourceKind(enum.Enum):
    ANALYTIC = "analytic"
    GALERKIN = "galerkin"
    BESSEL_ROOTS = "bessel_roots"
    EXTERNAL = "external"


@dataclass(frozen=True)
class Source:
    kind: SourceKind
    basis_size: Optional[int] = None

    def __str__(self) -> str:
        if self.kind is SourceKind.GALERKIN:
            return f"galerkin:{self.basis_size}"
        return self.kind.value

    @classmethod
    def parse(cls, text: str) -> "Source":
        head, _, tail = text.partition(":")
        kind = SourceKind(head)
        if kind is SourceKind.GALERKIN:
            return cls(kind, int(tail) if tail else None)
        if tail:
            raise ValueError(f"source {head!r} takes no parameters")
        return cls(kind)


DEFAULT_TOLERANCE = {
    SourceKind.ANALYTIC: 1e-10,
    SourceKind.GALERKIN: 1e-8,
    SourceKind.BESSEL_ROOTS: 1e-8,
    SourceKind.EXTERNAL: 1e-8,
}


@dataclass(frozen=True)
class Spectrum:
    """Ordered eigenvalues, repeated according to multiplicity."""

    problem: ProblemSpec
    values: tuple[float, ...]
    source: Source = Source(SourceKind.EXTERNAL)
    tolerance: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if self.tolerance is None:
            object.__setattr__(self, "tolerance", DEFAULT_TOLERANCE[self.source.kind])

    def __len__(self) -> int:
        return len(self.values)

    @property
    def kind(self) -> ProblemKind:
        return self.problem.kind

    @property
    def l(self) -> int:
        return self.problem.l

    @property
    def n(self) -> int:
        return self.problem.n

    @property
    def domain(self) -> Domain:
        return self.problem.domain

    def scaled(self, t: float) -> "Spectrum":
        return Spectrum(self.problem, tuple(t * v for v in self.values), self.source, self.tolerance)

    def with_values(self, values: Sequence[float]) -> "Spectrum":
        return Spectrum(self.problem, tuple(values), self.source, self.tolerance)


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one rule at one index.

    ``residual`` is LHS - RHS of the inequality (<= 0 when it holds). Bound-type
    rules also fill ``bound``; their residual is ``lambda_{k+1} - bound`` when the
    spectrum contains that eigenvalue.
    """

    rule: str
    k: Optional[int]
    bound: Optional[float]
    residual: Optional[float]
    holds: bool
    slack: float
    tolerance: float
    inputs: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return {
            "rule": self.rule,
            "k": self.k,
            "bound": self.bound,
            "residual": self.residual,
            "holds": self.holds,
            "slack": self.slack,
            "tolerance": self.tolerance,
            "inputs": dict(self.inputs),
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "BoundReport":
        return cls(
            rule=d["rule"],
            k=d.get("k"),
            bound=d.get("bound"),
            residual=d.get("residual"),
            holds=bool(d["holds"]),
            slack=float(d["slack"]),
            tolerance=float(d["tolerance"]),
            inputs=dict(d.get("inputs", {})),
        )


@dataclass(frozen=True)
class Violation:
    invariant: str
    index: Optional[int]
    message: str

    def __str__(self) -> str:
        where = f" @ index {self.index}" if self.index is not None else ""
        return f"{self.invariant}{where}: {self.message}"


class SpectrumFileError(ValueError):
    """Malformed spectrum file."""

    def __init__(self, path, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class SpectrumValidationError(ValueError):
    def __init__(self, violations: Sequence[Violation], path=None):
        self.violations = list(violations)
        self.path = path
        prefix = f"{path}: " if path is not None else ""
        super().__init__(prefix + "; ".join(str(v) for v in self.violations))


def validate_spectrum(s: Spectrum) -> list[Violation]:
    """Return every broken Spectrum/ProblemSpec invariant; empty list means valid."""
    out = s.problem.violations()
    vals = s.values
    if not vals:
        out.append(Violation("empty", None, "spectrum has no eigenvalues"))
    for i, v in enumerate(vals):
        if not math.isfinite(v):
            out.append(Violation("non-finite", i, f"eigenvalue {v!r}"))
        elif v < 0:
            out.append(Violation("negative", i, f"eigenvalue {v!r} < 0"))
        elif v == 0 and s.domain.has_boundary:
            out.append(Violation("non-positive", i, "zero eigenvalue on a domain with boundary"))
    for i in range(1, len(vals)):
        if vals[i] < vals[i - 1]:
            out.append(Violation("not-sorted", i, f"{vals[i]!r} < {vals[i - 1]!r}"))
    tol = s.tolerance
    if tol is None or not math.isfinite(tol) or tol <= 0:
        out.append(Violation("tolerance", None, f"tolerance must be positive, got {tol!r}"))
    return out


def spectrum_to_dict(s: Spectrum) -> dict[str, Any]:
    return {
        "problem": {
            "kind": s.kind.value,
            "l": s.l,
            "n": s.n,
            "domain": str(s.domain),
        },
        "eigenvalues": list(s.values),
        "source": str(s.source),
        "tolerance": s.tolerance,
    }


def spectrum_from_dict(d: Any, path=None) -> Spectrum:
    """Build a Spectrum from the file schema; raises SpectrumFileError on schema breaks."""
    where = path if path is not None else "<spectrum>"
    if not isinstance(d, dict):
        raise SpectrumFileError(where, "top level must be an object")
    try:
        prob = d["problem"]
        kind = ProblemKind(prob["kind"])
        l, n = prob["l"], prob["n"]
        if not (isinstance(l, int) and isinstance(n, int)) or isinstance(l, bool) or isinstance(n, bool):
            raise SpectrumFileError(where, "problem.l and problem.n must be integers")
        domain = Domain.parse(prob["domain"])
        values = d["eigenvalues"]
        if not isinstance(values, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in values
        ):
            raise SpectrumFileError(where, "eigenvalues must be a list of numbers")
        source = Source.parse(d.get("source", "external"))
        tol = d.get("tolerance")
        if tol is not None and not isinstance(tol, (int, float)):
            raise SpectrumFileError(where, "tolerance must be a number")
    except KeyError as e:
        raise SpectrumFileError(where, f"missing field {e.args[0]!r}") from None
    except (TypeError, ValueError) as e:
        if isinstance(e, SpectrumFileError):
            raise
        raise SpectrumFileError(where, str(e)) from None
    return Spectrum(ProblemSpec(kind, l, n, domain), tuple(values), source, tol)


def read_spectrum(path: Union[str, Path]) -> Spectrum:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise SpectrumFileError(path, f"cannot read: {e.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpectrumFileError(path, f"line {e.lineno} column {e.colno}: {e.msg}") from None
    s = spectrum_from_dict(data, path)
    bad = validate_spectrum(s)
    if bad:
        raise SpectrumValidationError(bad, path)
    return s


def write_spectrum(s: Spectrum, path: Union[str, Path]) -> None:
    bad = validate_spectrum(s)
    if bad:
        raise SpectrumValidationError(bad)
    # json emits repr(float): shortest string that round-trips exactly
    text = json.dumps(spectrum_to_dict(s), indent=2, allow_nan=False)
    Path(path).write_text(text + "\n")
