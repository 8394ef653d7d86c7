import numpy as np
import pytest

from giant_atom import SystemParams

OMEGA_E = 3.0e9
V_G = 3.0e8
GAMMA = 1.5e7  # 2 f^2 / v_g at g = 0.05


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def two_level():
    return SystemParams.two_level(x0=1.0)


@pytest.fixture
def three_level():
    return SystemParams.three_level(x0=1.48)


def delta_grid(lo=-0.02, hi=0.02, n=1001):
    return OMEGA_E * np.linspace(lo, hi, n)


ACCEPTANCE_LINES = []


@pytest.fixture
def verdict():
    """Record and print one PASS/FAIL line per acceptance criterion."""
    def record(number, passed, detail):
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
