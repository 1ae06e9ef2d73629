import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import make
from polybounds.core import (
    BoundReport,
    Domain,
    DomainKind,
    ProblemKind,
    ProblemSpec,
    Source,
    SourceKind,
    Spectrum,
    SpectrumFileError,
    SpectrumValidationError,
    read_spectrum,
    spectrum_to_dict,
    validate_spectrum,
    write_spectrum,
)


def names(violations):
    return [(v.invariant, v.index) for v in violations]


def test_valid_spectrum_has_no_violations():
    assert validate_spectrum(make([9.87, 39.48, 88.83])) == []


def test_unsorted_reports_index():
    assert names(validate_spectrum(make([39.48, 9.87]))) == [("not-sorted", 1)]


def test_empty():
    assert names(validate_spectrum(make([]))) == [("empty", None)]


def test_zero_only_allowed_without_boundary():
    assert names(validate_spectrum(make([0.0, 1.0]))) == [("non-positive", 0)]
    sphere = Spectrum(ProblemSpec(ProblemKind.DIRICHLET_POLYHARMONIC, 1, 2, Domain.sphere()), (0.0, 2.0))
    assert validate_spectrum(sphere) == []


def test_negative_and_nonfinite():
    got = names(validate_spectrum(make([-1.0, math.nan, 3.0])))
    assert ("negative", 0) in got and ("non-finite", 1) in got


def test_problem_invariants():
    assert ("l-range", None) in names(validate_spectrum(make([1.0], l=0)))
    assert ("l-range", None) in names(validate_spectrum(make([1.0], kind=ProblemKind.GENERALIZED_BUCKLING, l=1)))
    assert ("n-domain", None) in names(validate_spectrum(make([1.0], n=2, domain=Domain.interval())))
    assert ("n-domain", None) in names(validate_spectrum(make([1.0], n=3, domain=Domain.disk())))


def test_tolerance_must_be_positive():
    s = Spectrum(make([1.0]).problem, (1.0,), tolerance=0.0)
    assert ("tolerance", None) in names(validate_spectrum(s))


def test_default_tolerances():
    assert make([1.0], source=SourceKind.ANALYTIC).tolerance == 1e-10
    assert make([1.0], source=SourceKind.GALERKIN).tolerance == 1e-8
    assert make([1.0], source=SourceKind.BESSEL_ROOTS).tolerance == 1e-8


def test_validate_is_pure():
    s = make([2.0, 1.0])
    assert validate_spectrum(s) == validate_spectrum(s)
    assert s.values == (2.0, 1.0)


@pytest.mark.parametrize("text", ["interval", "disk", "sphere", "rectangle:1.5x0.25", "external:sphere-cap"])
def test_domain_string_round_trip(text):
    assert str(Domain.parse(text)) == text


def test_domain_parse_errors():
    with pytest.raises(ValueError):
        Domain.parse("torus")
    with pytest.raises(ValueError):
        Domain.parse("rectangle:2")
    with pytest.raises(ValueError):
        Domain.parse("disk:3")


def test_external_sphere_label_is_spherical():
    assert Domain.external("sphere-cap").is_spherical
    assert not Domain.external("polygon").is_spherical
    assert Domain.sphere().is_spherical and not Domain.sphere().has_boundary


def test_interval_file_round_trip(tmp_path):
    s = make([math.pi**2 * i * i for i in range(1, 6)], source=SourceKind.GALERKIN)
    s = Spectrum(s.problem, s.values, Source(SourceKind.GALERKIN, 30))
    p = tmp_path / "s.json"
    write_spectrum(s, p)
    back = read_spectrum(p)
    assert back == s and back.n == 1 and back.l == 1 and len(back) == 5


def test_seventeen_digit_values_survive(tmp_path):
    v = [0.10000000000000002, 1.2345678901234567, 98765.43210987654]
    p = tmp_path / "s.json"
    write_spectrum(make(v), p)
    assert read_spectrum(p).values == tuple(v)


def test_read_rejects_l_zero(tmp_path):
    d = spectrum_to_dict(make([1.0, 2.0]))
    d["problem"]["l"] = 0
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(d))
    with pytest.raises(SpectrumValidationError) as ei:
        read_spectrum(p)
    assert ei.value.violations[0].invariant == "l-range"


def test_read_rejects_unsorted_with_index(tmp_path):
    d = spectrum_to_dict(make([1.0, 2.0, 3.0]))
    d["eigenvalues"] = [1.0, 3.0, 2.0]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(d))
    with pytest.raises(SpectrumValidationError) as ei:
        read_spectrum(p)
    assert names(ei.value.violations) == [("not-sorted", 2)]
    assert "index 2" in str(ei.value)


def test_parse_error_has_location(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{"problem": {\n  "kind": }')
    with pytest.raises(SpectrumFileError, match=r"line 2 column"):
        read_spectrum(p)


@pytest.mark.parametrize(
    "mutate, message",
    [
        (lambda d: d.pop("eigenvalues"), "missing field 'eigenvalues'"),
        (lambda d: d["problem"].update(kind="membrane"), "membrane"),
        (lambda d: d.update(eigenvalues=[1, "x"]), "list of numbers"),
        (lambda d: d["problem"].update(l=1.5), "integers"),
    ],
)
def test_schema_errors(tmp_path, mutate, message):
    d = spectrum_to_dict(make([1.0, 2.0]))
    mutate(d)
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(d))
    with pytest.raises(SpectrumFileError, match=message):
        read_spectrum(p)


def test_write_to_unwritable_path(tmp_path):
    with pytest.raises(OSError):
        write_spectrum(make([1.0]), tmp_path / "missing-dir" / "s.json")


def test_write_refuses_invalid():
    with pytest.raises(SpectrumValidationError):
        write_spectrum(make([2.0, 1.0]), "/dev/null")


def test_bound_report_dict_round_trip():
    r = BoundReport("ppw", 1, 49.3, -9.8, True, 0.2, 1e-8, {"c": 4.0})
    assert BoundReport.from_dict(json.loads(json.dumps(r.as_dict()))) == r


positive_floats = st.floats(min_value=1e-6, max_value=1e12, allow_nan=False, allow_infinity=False)


@given(st.lists(positive_floats, min_size=1, max_size=20), st.integers(1, 4))
def test_round_trip_property(tmp_path_factory, values, l):
    s = Spectrum(ProblemSpec(ProblemKind.DIRICHLET_POLYHARMONIC, l, 1, Domain.interval()), tuple(sorted(values)))
    p = tmp_path_factory.mktemp("rt") / "s.json"
    write_spectrum(s, p)
    assert read_spectrum(p) == s
