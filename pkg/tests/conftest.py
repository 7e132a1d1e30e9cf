import math
import sys

import numpy as np
import pytest


def random_convex_polygon(rng, h, jitter=True):
    """Points on a randomly scaled, rotated ellipse; all are hull vertices."""
    ang = np.sort(rng.random(h) * 2 * math.pi)
    a, b = rng.uniform(0.3, 2.0, 2)
    rot = rng.random() * 2 * math.pi
    x, y = a * np.cos(ang), b * np.sin(ang)
    c, s = math.cos(rot), math.sin(rot)
    P = np.c_[c * x - s * y, s * x + c * y] + rng.normal(size=2)
    return P


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


SQRT3_2 = math.sqrt(3) / 2
TRIANGLE = [(0.0, 0.0), (1.0, 0.0), (0.5, SQRT3_2)]
SQUARE = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
