import sys

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def bisect(f, lo, hi, tol=1e-15, maxiter=200):
    """Plain bisection for a sign change of ``f`` on ``[lo, hi]``."""
    flo = f(lo)
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo <= tol * max(1.0, abs(mid)):
            break
    return 0.5 * (lo + hi)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
