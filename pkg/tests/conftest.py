"""Shared fixtures and the acceptance summary printed at the end of the run."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gpdeform.fixtures import appendix_algebra, v1, v2  # noqa: E402
from gpdeform.linalg import GF2, QQ  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


def record(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session", params=[GF2, QQ], ids=["F2", "Q"])
def field(request):
    return request.param


@pytest.fixture(scope="session")
def lam0_f2():
    return appendix_algebra(GF2)


@pytest.fixture(scope="session")
def v1_f2(lam0_f2):
    return v1(lam0_f2)


@pytest.fixture(scope="session")
def v2_f2(lam0_f2):
    return v2(lam0_f2)
