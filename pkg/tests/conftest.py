import math
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from polybounds.core import Domain, ProblemKind, ProblemSpec, Source, SourceKind, Spectrum  # noqa: E402

settings.register_profile(
    "repo", derandomize=True, deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")

ACCEPTANCE_LINES: list[str] = []


def analytic_interval(count=6, l=1):
    vals = tuple(((i * math.pi) ** 2) ** l for i in range(1, count + 1))
    return Spectrum(ProblemSpec(ProblemKind.DIRICHLET_POLYHARMONIC, l, 1, Domain.interval()), vals, Source(SourceKind.ANALYTIC))


def make(values, kind=ProblemKind.DIRICHLET_POLYHARMONIC, l=1, n=1, domain=None, source=SourceKind.EXTERNAL):
    if domain is None:
        domain = {1: Domain.interval(), 2: Domain.rectangle()}.get(n, Domain.external(f"R{n}"))
    return Spectrum(ProblemSpec(kind, l, n, domain), tuple(values), Source(source))


@pytest.fixture
def lap1d():
    return analytic_interval()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
