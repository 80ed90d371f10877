import numpy as np
import pytest

import scalecalc as sc


@pytest.fixture(scope="session")
def takagi_12():
    """Takagi alpha=1/2 on a dyadic 2^12 grid of [0, 1]."""
    return sc.gen_takagi(0.5, dt=2.0 ** -12, length=2 ** 12 + 1)


@pytest.fixture(scope="session")
def takagi_16():
    """Takagi alpha=1/2 on a dyadic 2^16 grid of [0, 1] (acceptance scale)."""
    return sc.gen_takagi(0.5, dt=2.0 ** -16, length=2 ** 16 + 1)


@pytest.fixture()
def unit_grid():
    def make(m):
        n = 2 ** m + 1
        dt = 2.0 ** -m
        return dt, dt * np.arange(n)
    return make


def line_path(m=10, slope=1.0, intercept=0.0):
    dt = 2.0 ** -m
    t = dt * np.arange(2 ** m + 1)
    return sc.SampledPath(0.0, dt, slope * t + intercept)
