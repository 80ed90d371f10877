"""Graph lengths, the scale-law ODE in its three forms, Hoelder exponent
fitting, weak scale laws for variable exponents and box-counting dimension."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import FitError, ParameterError, SingularityError
from .integrate import rk4
from .paths import SampledPath

# ---------------------------------------------------------------------------
# Graph length and exponent fitting
# ---------------------------------------------------------------------------


def graph_length(f: SampledPath, eps: float) -> float:
    """Polyline length of the graph sampled at steps of eps from t0.

    Sums the floor(T/eps) full chords plus the explicit tail chord to the
    right endpoint, so f = const on a domain of length T gives exactly T.
    """
    k = f.step_count(eps)
    n = len(f)
    idx = np.arange(0, n, k)
    v = f.values[idx]
    seg = np.hypot(eps, np.diff(v)).sum()
    last = idx[-1]
    if last != n - 1:
        seg += math.hypot((n - 1 - last) * f.dt, f.values[-1] - f.values[last])
    return float(seg)


def default_eps_grid(f: SampledPath, coarse_fraction: int = 32, min_steps: int = 4) -> list[float]:
    """Dyadic eps sweep from span/coarse_fraction down to min_steps * dt."""
    k = (len(f) - 1) // coarse_fraction
    grid = []
    while k >= min_steps:
        grid.append(k * f.dt)
        k //= 2
    if len(grid) < 2:
        raise ParameterError("grid too short for a length sweep")
    return grid


@dataclass(frozen=True)
class ScaleLawFit:
    """Log-log length fit: exponent estimate, intercept, data and residual."""

    alpha_hat: float
    intercept: float
    eps: np.ndarray       # strictly decreasing
    lengths: np.ndarray
    residual: float       # RMS residual of the log-log fit

    def to_json(self) -> str:
        return json.dumps({
            "alpha_hat": self.alpha_hat,
            "intercept": self.intercept,
            "residual": self.residual,
            "eps": self.eps.tolist(),
            "lengths": self.lengths.tolist(),
        })

    def to_loglog_csv(self) -> str:
        lines = ["log_eps,log_length"]
        for e, L in zip(self.eps, self.lengths):
            lines.append(f"{repr(math.log(e))},{repr(math.log(L))}")
        return "\n".join(lines) + "\n"


def fit_holder_exponent(f: SampledPath, eps_grid=None, lengths=None) -> ScaleLawFit:
    """Least-squares slope of log L_eps against log eps; alpha = 1 + slope
    clamped to [0, 1]."""
    if eps_grid is None:
        eps_grid = default_eps_grid(f)
    eps = np.array(sorted(set(float(e) for e in eps_grid), reverse=True))
    if eps.size < 4:
        raise FitError("need at least 4 distinct eps values for a scale-law fit")
    if lengths is None:
        lengths = np.array([graph_length(f, e) for e in eps])
    else:
        lengths = np.asarray(lengths, dtype=float)
    x, y = np.log(eps), np.log(lengths)
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    alpha = min(1.0, max(0.0, 1.0 + slope))
    return ScaleLawFit(float(alpha), float(intercept), eps, lengths, resid)


@dataclass(frozen=True)
class LengthEnvelopes:
    """Two-sided length envelopes from fitted increment constants.

    c_lo and C_hi bound |increment| / eps^alpha over the sweep; lower and
    upper are eps^(alpha-1) sqrt(eps^(2(1-alpha)) + const^2).
    """

    alpha: float
    c_lo: float
    C_hi: float
    eps: np.ndarray
    lengths: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    @property
    def ratios(self) -> np.ndarray:
        """upper/lower envelope ratio per eps (the big-O margins)."""
        return self.upper / self.lower


def scale_law_envelopes(f: SampledPath, alpha: float, eps_grid) -> LengthEnvelopes:
    """Fit increment constants over the sweep and build the envelopes."""
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"alpha must lie in (0, 1), got {alpha}")
    eps = np.array(sorted(set(float(e) for e in eps_grid), reverse=True))
    c_lo, C_hi = math.inf, 0.0
    lengths = []
    for e in eps:
        k = f.step_count(e)
        v = f.values[::k]
        inc = np.abs(np.diff(v)) / e ** alpha
        c_lo = min(c_lo, float(inc.min()))
        C_hi = max(C_hi, float(inc.max()))
        lengths.append(graph_length(f, e))
    lower = eps ** (alpha - 1.0) * np.sqrt(eps ** (2.0 * (1.0 - alpha)) + c_lo ** 2)
    upper = eps ** (alpha - 1.0) * np.sqrt(eps ** (2.0 * (1.0 - alpha)) + C_hi ** 2)
    return LengthEnvelopes(alpha, c_lo, C_hi, eps, np.array(lengths), lower, upper)


# ---------------------------------------------------------------------------
# The scale-law ODE in its three conjugate forms
# ---------------------------------------------------------------------------

_ODE_FORMS = ("holder", "inverse", "linear")


def scale_law_ode(form: str, alpha: float, initial: float, lneps_span, steps: int):
    """Integrate the scale law along s = ln(eps) with fixed-step RK4.

    holder:  dy/ds = (alpha - 1)(y - 1/y)
    inverse: dx/ds = (1 - alpha)(x - x^3)      (x = 1/y)
    linear:  dz/ds = (1 - alpha) z             (linearized near x = 0)

    Returns (s_grid, values).
    """
    if form not in _ODE_FORMS:
        raise ParameterError(f"unknown scale-law form {form!r}; choose from {_ODE_FORMS}")
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"alpha must lie in (0, 1), got {alpha}")
    s0, s1 = float(lneps_span[0]), float(lneps_span[1])
    if form == "holder":
        if initial == 0.0:
            raise SingularityError("holder form is singular at y = 0")
        if initial < 0.0:
            raise ParameterError("holder form needs a positive initial value")
        rhs = lambda s, y: (alpha - 1.0) * (y - 1.0 / y)
    elif form == "inverse":
        rhs = lambda s, x: (1.0 - alpha) * (x - x ** 3)
    else:
        rhs = lambda s, z: (1.0 - alpha) * z
    return rk4(rhs, s0, s1, float(initial), steps)


# ---------------------------------------------------------------------------
# Weak scale laws for non-uniform exponents
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeakScaleLaws:
    """Window exponent bounds gamma <= beta per eps, their eps-derivatives
    and the induced one-parameter laws E-(x), E+(x)."""

    eps: np.ndarray
    gamma: np.ndarray
    beta: np.ndarray
    gamma_prime: np.ndarray
    beta_prime: np.ndarray

    def law_rhs(self, x: float):
        """(E_minus, E_plus) at state x for every eps of the sweep."""
        cubic = x - x ** 3
        t = np.log(self.eps)
        e_minus = (1.0 - self.gamma - t * self.gamma_prime) * cubic
        e_plus = (1.0 - self.beta - t * self.beta_prime) * cubic
        return e_minus, e_plus


def weak_scale_exponents(alpha_fn: SampledPath, eps_grid) -> WeakScaleLaws:
    """Window min/max of a sampled exponent function per eps.

    The exponent is read at the window starts i*eps, i = 0..floor(T/eps);
    derivative terms use central differences on the eps grid.
    """
    v = alpha_fn.values
    if np.any(v <= 0.0) or np.any(v >= 1.0):
        raise ParameterError("exponent samples must lie in (0, 1)")
    eps = np.array(sorted(set(float(e) for e in eps_grid), reverse=True))
    gammas, betas = [], []
    for e in eps:
        k = alpha_fn.step_count(e)
        marks = v[::k]
        gammas.append(float(marks.min()))
        betas.append(float(marks.max()))
    gamma, beta = np.array(gammas), np.array(betas)
    if eps.size >= 2:
        gp = np.gradient(gamma, eps)
        bp = np.gradient(beta, eps)
    else:
        gp = np.zeros_like(gamma)
        bp = np.zeros_like(beta)
    return WeakScaleLaws(eps, gamma, beta, gp, bp)


# ---------------------------------------------------------------------------
# Box-counting (Minkowski) dimension
# ---------------------------------------------------------------------------


def default_box_sizes(f: SampledPath, coarse_fraction: int = 8, min_steps: int = 8) -> list[float]:
    k = (len(f) - 1) // coarse_fraction
    sizes = []
    while k >= min_steps:
        sizes.append(k * f.dt)
        k //= 2
    return sizes


def box_counting_dimension(f: SampledPath, box_sizes=None) -> float:
    """Slope of log(box count covering the graph) against log(1/size)."""
    if box_sizes is None:
        box_sizes = default_box_sizes(f)
    sizes = np.array(sorted(set(float(s) for s in box_sizes), reverse=True))
    if sizes.size < 4:
        raise FitError("need at least 4 box sizes")
    counts = []
    n = len(f)
    v = f.values
    for s in sizes:
        k = f.step_count(s)
        total = 0
        for j0 in range(0, n - 1, k):
            col = v[j0:min(j0 + k + 1, n)]
            total += math.floor(col.max() / s) - math.floor(col.min() / s) + 1
        counts.append(total)
    counts = np.array(counts, dtype=float)
    slope = np.polyfit(np.log(1.0 / sizes), np.log(counts), 1)[0]
    return float(slope)
