import numpy as np
import pytest

import memgrad as mg


def central_difference(f, x, h=1e-6):
    g = np.empty_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        g[i] = (f(x + e) - f(x - e)) / (2 * h)
    return g


def small_objectives():
    rng = np.random.default_rng(7)
    A = rng.normal(size=(4, 4))
    return {
        "quadratic-general": mg.make_quadratic(A @ A.T + np.eye(4), rng.normal(size=4), 1.0, 50.0),
        "ex1": mg.make_ex1(5, 10.0),
        "ex1-literal": mg.make_ex1(5, 10.0, scaling="literal"),
        "ex2": mg.make_ex2(5),
        "nesterov-truncated": mg.make_nesterov_truncated(5, 1.0, 10.0),
        "nesterov-zero": mg.make_nesterov_truncated(5, 1.0, 10.0, boundary="zero"),
        "rosenbrock": mg.make_rosenbrock(),
        "rosenbrock-literal": mg.make_rosenbrock(literal=True),
        "rastrigin": mg.make_rastrigin(3),
    }


@pytest.fixture(scope="session")
def objectives_zoo():
    return small_objectives()


_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
