from __future__ import annotations

from pathlib import Path

import pytest

from picip import analyze_sources

FIXTURES = Path(__file__).parent / "fixtures"

# Filled by test_acceptance; printed once at the end of the session.
ACCEPTANCE_LINES: list[str] = []


def fixture_sources(*names: str) -> dict[str, str]:
    return {f"{name}.java": (FIXTURES / f"{name}.java").read_text() for name in names}


@pytest.fixture
def listing():
    """Analyze one of the listings under tests/fixtures by stem."""

    def load(name: str):
        return analyze_sources(fixture_sources(name))

    return load


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
