"""Shared fixtures and the acceptance-summary terminal hook."""
from __future__ import annotations

from typing import Dict, Tuple

import pytest

from likeiper import build_li_records, xi_taylor

# Populated by tests/test_acceptance.py; printed after the run so the
# nine criteria always appear as one PASS/FAIL line each, even when a
# criterion's assert has already stopped its test body.
ACCEPTANCE_LOG: Dict[str, Tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def xi60():
    """The default-configuration series: order 40 at 60 digits."""
    return xi_taylor(order=40, digits=60)


@pytest.fixture(scope="session")
def records60(xi60):
    return build_li_records(xi60, max_n=20)


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LOG


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LOG):
        passed, detail = ACCEPTANCE_LOG[key]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{verdict}  {key}: {detail}")
