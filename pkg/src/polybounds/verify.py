"""Run every applicable rule at every valid index over a set of spectra."""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping, Optional

from .bounds import RULES, BoundError, evaluate
from .core import BoundReport, Spectrum
from .solver import (
    disk_clamped_plate_spectrum,
    interval_buckling_spectrum,
    interval_polyharmonic_spectrum,
    rectangle_spectrum,
    sphere_closed_spectrum,
)

__all__ = [
    "VerifyEntry",
    "VerifyMatrix",
    "BUILTIN_SUITE",
    "builtin_suite",
    "verify_spectra",
    "matrix_to_dict",
    "matrix_from_dict",
    "CSV_COLUMNS",
    "entries_to_csv",
    "entries_from_csv",
    "entries_to_json_lines",
    "entries_from_json_lines",
]

_RULE_ORDER = {r: i for i, r in enumerate(RULES)}

# (id, generator name, kwargs); basis sizes and counts are pinned for reproducibility
BUILTIN_SUITE: list[tuple[str, str, dict]] = [
    ("interval-l1", "interval", dict(l=1, N=30, count=8)),
    ("interval-l2", "interval", dict(l=2, N=40, count=6)),
    ("interval-l3", "interval", dict(l=3, N=50, count=5)),
    ("buckling-interval-l2", "buckling", dict(l=2, N=40, count=5)),
    ("buckling-interval-l3", "buckling", dict(l=3, N=50, count=4)),
    ("square-l1", "rectangle", dict(l=1, width=1.0, height=1.0, N=24, count=8)),
    ("rectangle-1.5x1-l1", "rectangle", dict(l=1, width=1.5, height=1.0, N=24, count=8)),
    ("square-l2", "rectangle", dict(l=2, width=1.0, height=1.0, N=25, count=6)),
    ("disk-l2", "disk", dict(count=8, m_max=12)),
    ("sphere-n2-l1", "sphere", dict(n=2, l=1, count=16)),
    ("sphere-n2-l2", "sphere", dict(n=2, l=2, count=16)),
    ("sphere-n2-l3", "sphere", dict(n=2, l=3, count=16)),
    ("sphere-n3-l1", "sphere", dict(n=3, l=1, count=30)),
    ("sphere-n3-l2", "sphere", dict(n=3, l=2, count=30)),
    ("sphere-n3-l3", "sphere", dict(n=3, l=3, count=30)),
]

_GENERATORS: dict[str, Callable[..., Spectrum]] = {
    "interval": interval_polyharmonic_spectrum,
    "buckling": interval_buckling_spectrum,
    "rectangle": rectangle_spectrum,
    "disk": disk_clamped_plate_spectrum,
    "sphere": sphere_closed_spectrum,
}


def builtin_suite() -> dict[str, Spectrum]:
    return {sid: _GENERATORS[gen](**kw) for sid, gen, kw in BUILTIN_SUITE}


@dataclass(frozen=True)
class VerifyEntry:
    spectrum_id: str
    rule: str
    k: Optional[int]
    report: Optional[BoundReport]
    error: Optional[str] = None

    @property
    def status(self) -> str:
        if self.error is not None:
            return "error"
        return "pass" if self.report.holds else "fail"

    def sort_key(self):
        return (self.spectrum_id, _RULE_ORDER.get(self.rule, len(_RULE_ORDER)), self.k or 0)


@dataclass
class VerifyMatrix:
    entries: list[VerifyEntry]
    summary: dict[str, int] = field(default_factory=dict)
    header: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.entries = sorted(self.entries, key=VerifyEntry.sort_key)
        if not self.summary:
            counts = {"pass": 0, "fail": 0, "error": 0}
            for e in self.entries:
                counts[e.status] += 1
            counts["total"] = len(self.entries)
            self.summary = counts

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0 and self.summary["error"] == 0

    def failures(self) -> list[VerifyEntry]:
        return [e for e in self.entries if e.status != "pass"]


def _run(task) -> VerifyEntry:
    sid, s, rule, k = task
    try:
        return VerifyEntry(sid, rule, k, evaluate(rule, s, k))
    except BoundError as exc:
        return VerifyEntry(sid, rule, k, None, f"{type(exc).__name__}: {exc}")


def verify_spectra(
    spectra: Mapping[str, Spectrum],
    *,
    rules: Optional[Iterable[str]] = None,
    workers: int = 1,
    header: Optional[dict] = None,
) -> VerifyMatrix:
    """Evaluate every applicable (rule, k) pair on every spectrum.

    Rule errors are recorded on their entry and do not stop the run.
    """
    chosen = [RULES[r] for r in (rules or RULES)]
    tasks = [(sid, s, r.id, k) for sid, s in spectra.items() for r in chosen for k in r.valid_ks(s)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(_run, tasks))
    else:
        entries = [_run(t) for t in tasks]
    return VerifyMatrix(entries, header=dict(header or {}))


def _clean(x):
    # JSON has no infinities
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_clean(v) for v in x]
    return x


def _entry_dict(e: VerifyEntry) -> dict:
    d = {"spectrum_id": e.spectrum_id, "rule": e.rule, "k": e.k, "status": e.status}
    if e.report is not None:
        d["report"] = e.report.as_dict()
    if e.error is not None:
        d["error"] = e.error
    return _clean(d)


def matrix_to_dict(m: VerifyMatrix) -> dict:
    return {"header": m.header, "summary": m.summary, "entries": [_entry_dict(e) for e in m.entries]}


def matrix_from_dict(d: dict) -> VerifyMatrix:
    entries = []
    for ed in d["entries"]:
        rep = ed.get("report")
        if rep is not None and rep.get("slack") is None:
            rep = dict(rep, slack=math.inf)
        entries.append(
            VerifyEntry(ed["spectrum_id"], ed["rule"], ed["k"], BoundReport.from_dict(rep) if rep else None, ed.get("error"))
        )
    return VerifyMatrix(entries, dict(d["summary"]), dict(d.get("header", {})))


def write_report(m: VerifyMatrix, path) -> None:
    with open(path, "w") as fh:
        json.dump(matrix_to_dict(m), fh, indent=2, sort_keys=False)
        fh.write("\n")


CSV_COLUMNS = ["spectrum_id", "rule", "k", "residual", "bound", "holds", "slack"]


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    return repr(x) if isinstance(x, float) else str(x)


def entries_to_csv(entries: Iterable[VerifyEntry]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for e in entries:
        r = e.report
        if r is None:
            w.writerow([e.spectrum_id, e.rule, _fmt(e.k), "", "", "error", ""])
        else:
            w.writerow([e.spectrum_id, e.rule, _fmt(e.k), _fmt(r.residual), _fmt(r.bound), _fmt(r.holds), _fmt(r.slack)])
    return buf.getvalue()


def entries_from_csv(text: str) -> list[dict]:
    """Parse rows written by :func:`entries_to_csv` back to typed dicts."""
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        num = lambda s: float(s) if s else None
        out.append(
            {
                "spectrum_id": row["spectrum_id"],
                "rule": row["rule"],
                "k": int(row["k"]) if row["k"] else None,
                "residual": num(row["residual"]),
                "bound": num(row["bound"]),
                "holds": {"true": True, "false": False}.get(row["holds"]),
                "slack": num(row["slack"]),
            }
        )
    return out


def entries_to_json_lines(entries: Iterable[VerifyEntry]) -> str:
    return "".join(json.dumps(_entry_dict(e)) + "\n" for e in entries)


def entries_from_json_lines(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]
