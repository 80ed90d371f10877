"""Taylor expansion of the scale derivative along a sampled path: the
complex order-j coefficients and the truncated expansion (order 2 is the
Ito form)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .paths import ComplexPath, SampledPath
from .scale_ops import scale_derivative


@dataclass(frozen=True)
class SmoothField:
    """Scalar field f(x, t) with explicit derivative rules.

    x_derivs[j-1] evaluates d^j f / dx^j; t_deriv evaluates df/dt. The
    rules are spot-checked once against central finite differences at
    random points of check_box so that expansion errors isolate the
    remainder instead of mixing in differentiation noise.
    """

    func: callable
    x_derivs: tuple
    t_deriv: callable
    check_box: tuple = ((-1.0, 1.0), (0.0, 1.0))
    spot_check: bool = True

    def __post_init__(self):
        object.__setattr__(self, "x_derivs", tuple(self.x_derivs))
        if len(self.x_derivs) < 1:
            raise ParameterError("a field needs at least the first x-derivative")
        if self.spot_check:
            self._validate()

    @property
    def order(self) -> int:
        return len(self.x_derivs)

    def _validate(self, n_points: int = 8, rel_tol: float = 1e-5):
        rng = np.random.default_rng(20260809)
        (xlo, xhi), (tlo, thi) = self.check_box
        x = rng.uniform(xlo, xhi, n_points)
        t = rng.uniform(tlo, thi, n_points)
        h = 1e-5 * max(1.0, xhi - xlo)
        checks = [(self.func, self.x_derivs[0], "x", 1)]
        for j in range(1, len(self.x_derivs)):
            checks.append((self.x_derivs[j - 1], self.x_derivs[j], "x", j + 1))
        for base, deriv, _, j in checks:
            fd = (np.asarray(base(x + h, t), dtype=float) - np.asarray(base(x - h, t), dtype=float)) / (2 * h)
            exact = np.asarray(deriv(x, t), dtype=float) + np.zeros_like(x)
            err = np.abs(fd - exact)
            if np.any(err > rel_tol * np.maximum(1.0, np.abs(exact))):
                raise ParameterError(f"supplied x-derivative of order {j} disagrees with finite differences")
        ht = 1e-5 * max(1.0, thi - tlo)
        fd_t = (np.asarray(self.func(x, t + ht), dtype=float) - np.asarray(self.func(x, t - ht), dtype=float)) / (2 * ht)
        exact_t = np.asarray(self.t_deriv(x, t), dtype=float) + np.zeros_like(x)
        if np.any(np.abs(fd_t - exact_t) > rel_tol * np.maximum(1.0, np.abs(exact_t))):
            raise ParameterError("supplied t-derivative disagrees with finite differences")


def monomial_field(m: int) -> SmoothField:
    """The field f(x, t) = x^m with all derivative rules attached."""
    if m < 1:
        raise ParameterError("monomial degree must be at least 1")

    def dj(j):
        coef = math.perm(m, j)
        p = m - j
        return lambda x, t: coef * np.power(x, p) if p > 0 else coef * np.ones_like(np.asarray(x, dtype=float))

    return SmoothField(
        func=lambda x, t: np.power(x, m),
        x_derivs=tuple(dj(j) for j in range(1, m + 1)),
        t_deriv=lambda x, t: np.zeros_like(np.asarray(x, dtype=float)),
    )


def a_coeffs(X: SampledPath, eps: float, j: int) -> ComplexPath:
    """Order-j complex expansion coefficient built from the one-sided
    difference quotients of X.

    a_{eps,j} = (1/2)[(D+)^j - (-1)^j (D-)^j] - (i/2)[(D+)^j + (-1)^j (D-)^j];
    j = 1 reproduces the scale derivative of X exactly.
    """
    if j < 1:
        raise ParameterError("coefficient order must be at least 1")
    k = X.step_count(eps)
    if len(X) < 2 * k + 1:
        raise ParameterError("path too short for a two-sided stencil of this width")
    d = (X.values[k:] - X.values[:-k]) / eps
    dp = d[k:]
    dm = d[:d.size - k]
    sgn = (-1.0) ** j
    dpj = dp ** j
    dmj = sgn * dm ** j
    vals = 0.5 * (dpj - dmj) - 0.5j * (dpj + dmj)
    return ComplexPath(X.t0 + k * X.dt, X.dt, vals)


def evaluate_along(field: SmoothField, X: SampledPath) -> SampledPath:
    """Compose the field with the path: t -> f(X(t), t)."""
    return SampledPath(X.t0, X.dt, np.asarray(field.func(X.values, X.times), dtype=float) + np.zeros(len(X)))


def ito_expand(field: SmoothField, X: SampledPath, eps: float, n: int) -> ComplexPath:
    """Order-n expansion of the scale derivative of f(X(t), t).

    df/dt + sum_{j=1..n} (1/j!) d^j f/dx^j (X(t), t) eps^(j-1) a_{eps,j}(t),
    on the interior window where the two-sided stencil fits. Exact for
    polynomial fields of degree <= n.
    """
    if n < 1:
        raise ParameterError("expansion order must be at least 1")
    if n > field.order:
        raise ParameterError(f"field declares derivatives up to order {field.order}, requested {n}")
    k = X.step_count(eps)
    xc = X.values[k:-k]
    tc = X.times[k:-k]
    total = np.asarray(field.t_deriv(xc, tc), dtype=complex) + np.zeros(xc.size, dtype=complex)
    for j in range(1, n + 1):
        aj = a_coeffs(X, eps, j).values
        dj = np.asarray(field.x_derivs[j - 1](xc, tc))
        total = total + (eps ** (j - 1) / math.factorial(j)) * dj * aj
    return ComplexPath(X.t0 + k * X.dt, X.dt, total)


def expansion_comparison_csv(field: SmoothField, X: SampledPath, eps: float, n: int) -> str:
    """Two-sided comparison table: direct scale derivative of f(X(t), t)
    against the order-n expansion, as t,re_direct,im_direct,re_expansion,im_expansion."""
    direct = scale_derivative(evaluate_along(field, X), eps)
    expanded = ito_expand(field, X, eps, n)
    lines = ["t,re_direct,im_direct,re_expansion,im_expansion"]
    for t, d, e in zip(direct.times, direct.values, expanded.values):
        lines.append(",".join(repr(float(x)) for x in (t, d.real, d.imag, e.real, e.imag)))
    return "\n".join(lines) + "\n"
