import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from prympair.witness import family_a_witness, family_b_witness  # noqa: E402


@pytest.fixture(scope="session")
def family_a():
    return family_a_witness(6)


@pytest.fixture(scope="session")
def family_b():
    return family_b_witness(7)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    lines = getattr(acceptance, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
