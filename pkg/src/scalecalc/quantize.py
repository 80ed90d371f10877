"""Scale-quantization pipeline: complex velocity, action and wave function,
quantized Euler-Lagrange residuals, generalized / classical / nonlinear
Schrodinger residuals, the difference-equation condition checker, phase
gauge removal and chord-scaling checks."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import FitError, NodeError, ParameterError, SingularityError
from .integrate import solve_linear_second_order
from .paths import ComplexPath, SampledPath, _atomic_write
from .scale_ops import minimal_resolution, scale_derivative

# ---------------------------------------------------------------------------
# Lagrangians and the two quantization orders
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassicalLagrangian:
    """Kinetic term (1/2) m v^2 plus a potential U(x) with its x-derivative
    supplied analytically."""

    m: float
    potential: callable
    potential_deriv: callable

    def __post_init__(self):
        if not (self.m > 0):
            raise ParameterError("mass must be positive")


@dataclass(frozen=True)
class QuantizedLagrangian:
    """Image of a classical Lagrangian under the quantization map: the same
    functional form, read on the quantized variables (X, V, t)."""

    m: float
    potential: callable
    potential_deriv: callable


@dataclass(frozen=True)
class NewtonEquation:
    """Classical Euler-Lagrange equation m x'' = U'(x)."""

    m: float
    potential_deriv: callable

    def residual(self, x: SampledPath) -> SampledPath:
        acc = _central_derivative(_central_derivative(x))
        k = (len(x) - len(acc)) // 2
        return SampledPath(acc.t0, acc.dt,
                           self.m * acc.values - self.potential_deriv(x.values[k:-k]))


@dataclass(frozen=True)
class ScaleNewtonEquation:
    """Quantized Euler-Lagrange equation m (scale d/dt)^2 X = U'(X)."""

    m: float
    potential_deriv: callable

    def residual(self, X: SampledPath, eps: float) -> ComplexPath:
        return el_residual_from(self.m, self.potential_deriv, X, eps)


def quantize_lagrangian(L: ClassicalLagrangian) -> QuantizedLagrangian:
    return QuantizedLagrangian(L.m, L.potential, L.potential_deriv)


def euler_lagrange(L: ClassicalLagrangian) -> NewtonEquation:
    return NewtonEquation(L.m, L.potential_deriv)


def scale_euler_lagrange(QL: QuantizedLagrangian) -> ScaleNewtonEquation:
    return ScaleNewtonEquation(QL.m, QL.potential_deriv)


def quantize_equation(eq: NewtonEquation) -> ScaleNewtonEquation:
    return ScaleNewtonEquation(eq.m, eq.potential_deriv)


def el_residual_from(m: float, potential_deriv, X: SampledPath, eps: float) -> ComplexPath:
    V = scale_derivative(X, eps)
    acc = scale_derivative(V, eps)
    k = X.step_count(eps)
    if len(X) < 4 * k + 1:
        raise ParameterError("path too short for the double scale stencil")
    xs = X.values[2 * k:-2 * k]
    return ComplexPath(acc.t0, acc.dt, m * acc.values - potential_deriv(xs))


def el_residual(L: ClassicalLagrangian, X: SampledPath, eps: float) -> ComplexPath:
    """Residual of the quantized Euler-Lagrange equation along X."""
    return el_residual_from(L.m, L.potential_deriv, X, eps)


def complex_velocity(X, eps: float) -> ComplexPath:
    """Quantized speed V = scale derivative of the position path."""
    return scale_derivative(X, eps)


def _central_derivative(f) -> ComplexPath:
    vals = (f.values[2:] - f.values[:-2]) / (2.0 * f.dt)
    return type(f)(f.t0 + f.dt, f.dt, vals)


@dataclass(frozen=True)
class QuantizePipeline:
    """Substitution rule for d/dt: paths whose minimal resolution vanishes
    at threshold h keep the plain central derivative, all others route
    through the scale operator at width eps."""

    eps: float
    h: float

    def uses_scale_operator(self, f: SampledPath) -> bool:
        return not minimal_resolution(f, self.h).effectively_zero

    def time_derivative(self, f: SampledPath) -> ComplexPath:
        if self.uses_scale_operator(f):
            return scale_derivative(f, self.eps)
        d = _central_derivative(f)
        return ComplexPath(d.t0, d.dt, d.values.astype(complex))

    def velocity(self, X: SampledPath) -> ComplexPath:
        return self.time_derivative(X)

    def el_residual(self, L: ClassicalLagrangian, X: SampledPath):
        if self.uses_scale_operator(X):
            return el_residual(L, X, self.eps)
        return euler_lagrange(L).residual(X)


# ---------------------------------------------------------------------------
# Action functional and wave function
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ActionWave:
    action: ComplexPath
    wave: ComplexPath


def action_and_wave(V: ComplexPath, m: float, gamma_norm: float) -> ActionWave:
    """Action from V = (1/m) dA/dx by cumulative trapezoidal integration
    (gauge A(x0) = 0), and the wave exp(i A / (2 m gamma))."""
    if gamma_norm == 0:
        raise ParameterError("normalization constant gamma must be nonzero")
    v = V.values
    steps = 0.5 * (v[1:] + v[:-1]) * V.dt
    A = m * np.concatenate([[0.0 + 0.0j], np.cumsum(steps)])
    psi = np.exp(1j * A / (2.0 * m * gamma_norm))
    grid = (V.t0, V.dt)
    return ActionWave(ComplexPath(*grid, A), ComplexPath(*grid, psi))


# ---------------------------------------------------------------------------
# Wave fields on (x, t) grids
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComplexGrid:
    """Complex samples on a uniform 2-D (x, t) grid; values[i, j] is the
    sample at (x0 + i dx, t0 + j dt)."""

    x0: float
    dx: float
    t0: float
    dt: float
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.ndim != 2 or vals.shape[0] < 3 or vals.shape[1] < 3:
            raise ParameterError("field needs a 2-D grid with at least 3 points per axis")
        if not (self.dx > 0 and self.dt > 0):
            raise ParameterError("grid steps must be positive")
        out = vals.copy()
        out.flags.writeable = False
        object.__setattr__(self, "values", out)

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.values.shape[0])

    @property
    def t(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.values.shape[1])

    @property
    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "t", "re", "im"])
        xs, ts = self.x, self.t
        for i in range(self.values.shape[0]):
            for j in range(self.values.shape[1]):
                v = self.values[i, j]
                w.writerow([repr(float(xs[i])), repr(float(ts[j])),
                            repr(float(v.real)), repr(float(v.imag))])
        return buf.getvalue()

    def write_csv(self, path) -> None:
        _atomic_write(path, self.to_csv_text())

    @classmethod
    def from_csv_text(cls, text: str, **extra):
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or [h.strip() for h in rows[0]] != ["x", "t", "re", "im"]:
            raise ParameterError("expected CSV header x,t,re,im")
        data = np.array([[float(v) for v in r] for r in rows[1:] if r], dtype=float)
        xcol = data[:, 0]
        nt = int(np.argmax(xcol != xcol[0])) if np.any(xcol != xcol[0]) else data.shape[0]
        if nt < 1 or data.shape[0] % nt:
            raise ParameterError("CSV rows do not form a rectangular grid")
        nx = data.shape[0] // nt
        vals = (data[:, 2] + 1j * data[:, 3]).reshape(nx, nt)
        tcol = data[:nt, 1]
        return cls(xcol[0], float(xcol[nt] - xcol[0]) if nx > 1 else 1.0,
                   tcol[0], float(tcol[1] - tcol[0]) if nt > 1 else 1.0,
                   vals, **extra)

    @classmethod
    def read_csv(cls, path, **extra):
        with open(path, "r", newline="") as fh:
            return cls.from_csv_text(fh.read(), **extra)


@dataclass(frozen=True)
class WaveField(ComplexGrid):
    """A wave function sample with its physical constants attached."""

    m: float = 1.0
    hbar: float = 1.0
    gamma_norm: float | None = None

    @property
    def gamma(self) -> float:
        return self.hbar / (2.0 * self.m) if self.gamma_norm is None else self.gamma_norm

    @classmethod
    def from_function(cls, fn, x0, dx, nx, t0, dt, nt, m=1.0, hbar=1.0, gamma_norm=None):
        x = x0 + dx * np.arange(nx)
        t = t0 + dt * np.arange(nt)
        vals = np.asarray(fn(x[:, None], t[None, :]), dtype=complex)
        return cls(x0, dx, t0, dt, vals, m=m, hbar=hbar, gamma_norm=gamma_norm)


def _interior(field: ComplexGrid):
    v = field.values
    psi = v[1:-1, 1:-1]
    psi_x = (v[2:, :] - v[:-2, :])[:, 1:-1] / (2.0 * field.dx)
    psi_xx = (v[2:, :] - 2.0 * v[1:-1, :] + v[:-2, :])[:, 1:-1] / field.dx ** 2
    psi_t = (v[:, 2:] - v[:, :-2])[1:-1, :] / (2.0 * field.dt)
    x_int = field.x[1:-1]
    return psi, psi_x, psi_xx, psi_t, x_int


def _interior_grid(field: ComplexGrid, values: np.ndarray) -> ComplexGrid:
    return ComplexGrid(field.x0 + field.dx, field.dx, field.t0 + field.dt, field.dt, values)


def classical_schrodinger_residual(field: WaveField, U) -> ComplexGrid:
    """Central-difference residual of i hbar psi_t + (hbar^2/2m) psi_xx = U psi."""
    psi, _, psi_xx, psi_t, x_int = _interior(field)
    hbar, m = field.hbar, field.m
    vals = 1j * hbar * psi_t + (hbar * hbar / (2.0 * m)) * psi_xx - U(x_int)[:, None] * psi
    return _interior_grid(field, vals)


def _a_values(a_eps, field: ComplexGrid) -> np.ndarray:
    nt_int = field.values.shape[1] - 2
    if isinstance(a_eps, ComplexPath):
        t_start = field.t0 + field.dt
        off = (t_start - a_eps.t0) / a_eps.dt
        off_int = round(off)
        if abs(a_eps.dt - field.dt) > 1e-9 * field.dt or abs(off - off_int) > 1e-6:
            raise ParameterError("a_eps grid does not align with the field time grid")
        if off_int < 0 or off_int + nt_int > len(a_eps):
            raise ParameterError("a_eps does not cover the interior time window")
        return a_eps.values[off_int:off_int + nt_int]
    return np.full(nt_int, complex(a_eps))


def gse_residual(field: WaveField, a_eps, U, alpha_gauge=None,
                 psi_floor: float = 1e-12, divide_by_psi: bool = False) -> ComplexGrid:
    """Residual of the generalized Schrodinger equation

        2 i gamma m [ -(1/psi)(psi_x)^2 (i gamma + a/2) + psi_t
                      + (a/2) psi_xx ]  =  (U + alpha) psi .

    a_eps may be a ComplexPath on the field's time grid or a complex
    constant; a = -2 i gamma reproduces the classical residual with the
    same stencils. divide_by_psi evaluates the per-psi variant (the whole
    equation divided through by psi, squared-gradient term 1/psi^2).
    """
    psi, psi_x, psi_xx, psi_t, x_int = _interior(field)
    lo = np.abs(psi).min()
    if lo <= psi_floor:
        i, j = np.unravel_index(int(np.argmin(np.abs(psi))), psi.shape)
        raise NodeError(
            f"|psi| = {lo:.3e} at grid node (x index {i + 1}, t index {j + 1}) "
            f"is below the floor {psi_floor:.3e}",
            x_index=int(i + 1), t_index=int(j + 1),
        )
    gamma, m = field.gamma, field.m
    a = _a_values(a_eps, field)
    half = 0.5 * a
    pot = U(x_int)
    if alpha_gauge is not None:
        pot = pot + alpha_gauge(x_int)
    coef = 2j * gamma * m
    if divide_by_psi:
        bracket = -(psi_x ** 2 / psi ** 2) * (1j * gamma + half) + psi_t / psi + half * (psi_xx / psi)
        vals = coef * bracket - pot[:, None]
    else:
        bracket = -(psi_x ** 2 / psi) * (1j * gamma + half) + psi_t + half * psi_xx
        vals = coef * bracket - pot[:, None] * psi
    return _interior_grid(field, vals)


def nngse_residual(field: WaveField, U, alpha_c: complex) -> ComplexGrid:
    """Residual of the one-dimensional nonlinear comparison equation

        i a psi_t + (a Re a / 2m) psi_xx - U psi
                  + i (a Im a / 2m) (psi_x)^2 psi = 0,

    with the squared-gradient term multiplied by psi, taken literally.
    Im(a) = 0 with a = hbar recovers the classical linear residual.
    """
    psi, psi_x, psi_xx, psi_t, x_int = _interior(field)
    m = field.m
    a = alpha_c
    re_a = a.real if isinstance(a, complex) else a
    im_a = a.imag if isinstance(a, complex) else 0.0
    vals = (1j * a * psi_t + (a * re_a / (2.0 * m)) * psi_xx
            - U(x_int)[:, None] * psi
            + 1j * (a * im_a / (2.0 * m)) * psi_x ** 2 * psi)
    return _interior_grid(field, vals)


# ---------------------------------------------------------------------------
# The difference-equation condition and the principal set
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConditionReport:
    """Maxima of the two difference-equation defects and the verdict."""

    max_sided_gap: float       # max |D+ X - D- X|
    max_speed_sq_gap: float    # max |(D+ X)^2 - hbar/m|
    tol: float

    @property
    def ok(self) -> bool:
        return self.max_sided_gap <= self.tol and self.max_speed_sq_gap <= self.tol


def schrodinger_condition_check(X: SampledPath, eps: float, hbar: float, m: float,
                                tol: float = 1e-12) -> ConditionReport:
    """Check D+ X = D- X and (D+ X)^2 = hbar/m at all interior points."""
    k = X.step_count(eps)
    d = (X.values[k:] - X.values[:-k]) / eps
    dp, dm = d[k:], d[:d.size - k]
    gap_sides = float(np.max(np.abs(dp - dm))) if dp.size else 0.0
    gap_speed = float(np.max(np.abs(d ** 2 - hbar / m)))
    return ConditionReport(gap_sides, gap_speed, tol)


# ---------------------------------------------------------------------------
# Phase gauge removal
# ---------------------------------------------------------------------------


def phase_gauge_solve(field: WaveField, alpha_gauge, t_slice: float,
                      substeps: int = 1) -> ComplexPath:
    """Integrate a Theta + b Theta' + c Theta'' = 0 in x on one t-slice,
    with a = alpha psi, b = 4 gamma^2 m psi_x, c = 2 gamma^2 m psi and
    Theta(x0) = 1, Theta'(x0) = 0; psi Theta then targets the
    alpha-free equation."""
    j = round((t_slice - field.t0) / field.dt)
    if j < 0 or j >= field.values.shape[1]:
        raise ParameterError(f"t-slice {t_slice} outside the field time range")
    psi_col = field.values[:, j]
    if np.min(np.abs(psi_col)) == 0.0:
        raise SingularityError("psi vanishes on the slice; the gauge ODE is singular")
    x = field.x
    x_int = x[1:-1]
    psi_int = psi_col[1:-1]
    dpsi_int = (psi_col[2:] - psi_col[:-2]) / (2.0 * field.dx)
    gamma, m = field.gamma, field.m

    def interp_c(xq, arr):
        return np.interp(xq, x_int, arr.real) + 1j * np.interp(xq, x_int, arr.imag)

    a_fn = lambda xq: alpha_gauge(xq) * interp_c(xq, psi_int)
    b_fn = lambda xq: 4.0 * gamma ** 2 * m * interp_c(xq, dpsi_int)
    c_fn = lambda xq: 2.0 * gamma ** 2 * m * interp_c(xq, psi_int)
    steps = (x_int.size - 1) * substeps
    _, theta, _ = solve_linear_second_order(a_fn, b_fn, c_fn,
                                            float(x_int[0]), float(x_int[-1]),
                                            1.0 + 0.0j, 0.0 + 0.0j, steps)
    return ComplexPath(float(x_int[0]), field.dx / substeps, theta)


def apply_gauge(field: WaveField, theta: ComplexPath) -> WaveField:
    """Multiply the field by a time-independent gauge factor Theta(x)."""
    i0 = round((theta.t0 - field.x0) / field.dx)
    nx = len(theta)
    vals = field.values[i0:i0 + nx, :] * theta.values[:, None]
    return WaveField(theta.t0, field.dx, field.t0, field.dt, vals,
                     m=field.m, hbar=field.hbar, gamma_norm=field.gamma_norm)


# ---------------------------------------------------------------------------
# Chord scaling (uncertainty-style exponent)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChordScaling:
    exponent: float
    delta_ts: np.ndarray
    mean_chords: np.ndarray


def heisenberg_scaling_check(X: SampledPath, dt_grid=None) -> ChordScaling:
    """Mean Euclidean chord of the graph per time offset, log-log fitted.

    The chord at offset D is ||(t, X(t)) - (t+D, X(t+D))||; paths with
    Hoelder exponent alpha scale like D^alpha, smooth curves like D."""
    if dt_grid is None:
        k, ks = 1, []
        while k <= (len(X) - 1) // 64:
            ks.append(k)
            k *= 2
        dt_grid = [k * X.dt for k in ks]
    dts = np.array(sorted(set(float(d) for d in dt_grid)))
    if dts.size < 4:
        raise FitError("need at least 4 time offsets for the chord fit")
    means = []
    for d in dts:
        k = X.step_count(d)
        chord = np.hypot(d, X.values[k:] - X.values[:-k])
        means.append(float(chord.mean()))
    means = np.array(means)
    if np.unique(means).size < 2:
        raise FitError("chord means are all equal; the fit is degenerate")
    slope = np.polyfit(np.log(dts), np.log(means), 1)[0]
    return ChordScaling(float(slope), dts, means)
