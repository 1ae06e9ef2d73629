import json

import pytest

from conftest import analytic_interval, make
from polybounds.bounds import RULES
from polybounds.core import ProblemKind
from polybounds.solver import sphere_closed_spectrum
from polybounds.verify import (
    CSV_COLUMNS,
    entries_from_csv,
    entries_from_json_lines,
    entries_to_csv,
    entries_to_json_lines,
    matrix_from_dict,
    matrix_to_dict,
    verify_spectra,
    write_report,
)


def small_set():
    return {
        "lap": analytic_interval(5),
        "s2": sphere_closed_spectrum(2, 1, 10),
        "buck": make([39.47841760435743, 80.76291422573], kind=ProblemKind.BUCKLING, l=2),
    }


def test_every_applicable_pair_once():
    spectra = small_set()
    m = verify_spectra(spectra)
    keys = [(e.spectrum_id, e.rule, e.k) for e in m.entries]
    assert len(keys) == len(set(keys))
    expected = {(sid, r.id, k) for sid, s in spectra.items() for r in RULES.values() for k in r.valid_ks(s)}
    assert set(keys) == expected
    assert m.summary == {"pass": len(keys), "fail": 0, "error": 0, "total": len(keys)} and m.ok


def test_rule_coverage_by_kind():
    m = verify_spectra(small_set())
    rules = lambda sid: {e.rule for e in m.entries if e.spectrum_id == sid}
    assert rules("buck") == {"thm4.2", "thm4.3"}
    assert rules("s2") == {"thm5.1", "cor5.1a", "cor5.1b"}
    assert "hile-protter" in rules("lap") and "thm5.1" not in rules("lap")


def test_parallel_matches_serial():
    a = matrix_to_dict(verify_spectra(small_set()))
    b = matrix_to_dict(verify_spectra(small_set(), workers=4))
    assert json.dumps(a) == json.dumps(b)


def test_errors_recorded_not_raised():
    # large spread: the weak-Yang radicand goes negative at k = 2
    s = make([1.0, 1.5, 1e6], n=50, domain=None)
    m = verify_spectra({"wild": s})
    assert m.summary["error"] >= 1 and not m.ok
    err = [e for e in m.entries if e.status == "error"]
    assert all("DiscriminantError" in e.error for e in err)


def test_fault_injection_fails():
    s = analytic_interval(5)
    bad = s.with_values(s.values[:1] + (10 * s.values[1],) + s.values[2:])
    bad = bad.with_values(sorted(bad.values))
    m = verify_spectra({"bad": bad})
    assert m.summary["fail"] > 0


def test_report_round_trip(tmp_path):
    m = verify_spectra(small_set(), header={"note": "x"})
    p = tmp_path / "r.json"
    write_report(m, p)
    d = json.loads(p.read_text())
    assert set(d) == {"header", "summary", "entries"}
    back = matrix_from_dict(d)
    assert back.summary == m.summary and back.header == {"note": "x"}
    assert [e.report for e in back.entries] == [e.report for e in m.entries]


def test_csv_round_trip():
    m = verify_spectra(small_set())
    text = entries_to_csv(m.entries)
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
    rows = entries_from_csv(text)
    assert len(rows) == len(m.entries)
    for row, e in zip(rows, m.entries):
        r = e.report
        assert (row["spectrum_id"], row["rule"], row["k"]) == (e.spectrum_id, e.rule, e.k)
        assert row["residual"] == r.residual and row["bound"] == r.bound and row["holds"] == r.holds
        assert row["slack"] == r.slack


def test_json_lines_round_trip():
    m = verify_spectra(small_set())
    rows = entries_from_json_lines(entries_to_json_lines(m.entries))
    assert [r["status"] for r in rows] == [e.status for e in m.entries]
    for r, e in zip(rows, m.entries):
        assert r["report"]["residual"] == e.report.residual


def test_infinite_slack_serialised_as_null():
    s = analytic_interval(3)
    m = verify_spectra({"lap": s}, rules=["cor3.1a"])
    # valid_ks stop at len - 1, so evaluate the open-ended index by hand
    assert all(e.k < len(s) for e in m.entries)
    from polybounds.bounds import evaluate
    from polybounds.verify import VerifyEntry, VerifyMatrix

    mm = VerifyMatrix([VerifyEntry("lap", "cor3.1a", 3, evaluate("cor3.1a", s, 3))])
    text = json.dumps(matrix_to_dict(mm), allow_nan=False)
    assert '"slack": null' in text
    assert matrix_from_dict(json.loads(text)).entries[0].report.slack == float("inf")
