import math

import pytest

from aqrm.model import critical_coupling

DELTA = 10.0
G_C = critical_coupling(DELTA)


@pytest.fixture(scope="session")
def g_c():
    return G_C


_ACCEPTANCE_LINES = []


def record_criterion(label, passed, detail):
    _ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {label}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
