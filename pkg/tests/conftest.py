import numpy as np
import pytest


def step_edge(n=64, col=None):
    u = np.zeros((n, n))
    u[:, (n // 2 if col is None else col):] = 1.0
    return u


def square_mask(shape, top, left, size):
    m = np.zeros(shape, dtype=bool)
    m[top : top + size, left : left + size] = True
    return m


def synthetic_scene(rng, n=128):
    """Tilted ramp plus one straight step edge through the centre region."""
    y, x = np.mgrid[0:n, 0:n] / n
    a, b = rng.uniform(-0.3, 0.3, 2)
    theta = rng.uniform(0, np.pi)
    c = rng.uniform(0.4, 0.6)
    img = 0.35 + a * x + b * y
    img = img + rng.uniform(0.2, 0.35) * ((np.cos(theta) * (x - c) + np.sin(theta) * (y - c)) > 0)
    return np.clip(img, 0.0, 1.0), (c, theta)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    num, title = mark.args
    _criteria[num] = (title, call.excinfo is None)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        title, ok = _criteria[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {title}")
