import math

import numpy as np
import pytest

from riscorr.experiments import default_params


def within_3se(samples, target):
    samples = np.asarray(samples)
    se = samples.std(ddof=1) / math.sqrt(len(samples))
    return abs(samples.mean() - target) < 3 * se


@pytest.fixture
def params16():
    """4x4 RIS, M=2, kappa=5, three paths per user."""
    return default_params(n1=4, n2=4, m=2, kappa=5.0)


ACCEPTANCE_LINES = []


def record(criterion, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
