"""Fixed-step fourth-order Runge-Kutta integration helpers."""

from __future__ import annotations

import numpy as np

from .errors import ParameterError


def rk4(rhs, s0: float, s1: float, y0, steps: int):
    """Integrate y' = rhs(s, y) from s0 to s1 with a fixed step.

    Works for scalar, complex or vector state. Returns (s_grid, states)
    with states[0] = y0 and states[-1] the value at s1.
    """
    if steps < 1:
        raise ParameterError("integrator needs at least one step")
    y = np.asarray(y0, dtype=complex if np.iscomplexobj(y0) else float)
    scalar = y.ndim == 0
    h = (s1 - s0) / steps
    s_grid = s0 + h * np.arange(steps + 1)
    out = np.empty((steps + 1,) + y.shape, dtype=y.dtype)
    out[0] = y
    for i in range(steps):
        s = s_grid[i]
        k1 = np.asarray(rhs(s, y))
        k2 = np.asarray(rhs(s + 0.5 * h, y + 0.5 * h * k1))
        k3 = np.asarray(rhs(s + 0.5 * h, y + 0.5 * h * k2))
        k4 = np.asarray(rhs(s + h, y + h * k3))
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[i + 1] = y
    if scalar:
        return s_grid, out.reshape(steps + 1)
    return s_grid, out


def solve_linear_second_order(a, b, c, x0: float, x1: float, y0, dy0, steps: int):
    """Integrate a(x) y + b(x) y' + c(x) y'' = 0 with RK4 on [x0, x1].

    a, b, c are callables of x (values may be complex). Returns
    (x_grid, y, dy).
    """
    def rhs(x, state):
        y, dy = state
        cc = c(x)
        if cc == 0:
            raise ParameterError(f"leading coefficient vanishes at x = {x}")
        return np.array([dy, -(b(x) * dy + a(x) * y) / cc], dtype=complex)

    y_init = np.array([y0, dy0], dtype=complex)
    x_grid, states = rk4(rhs, x0, x1, y_init, steps)
    return x_grid, states[:, 0], states[:, 1]
