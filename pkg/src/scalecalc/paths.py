"""Grid-sampled function types and generators of the example functions.

A path is a finite sequence of samples on a uniform grid ``t0 + i*dt``.
Every operator width eps must be an exact grid multiple ``k*dt``; outputs
carry their own (possibly shorter, shifted) grid so that stencil identities
hold exactly instead of relying on boundary padding.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractionError, GridMismatchError, ParameterError

_REL_TOL = 1e-9


def _as_readonly(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, copy=True)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class _BasePath:
    t0: float
    dt: float
    values: np.ndarray

    _dtype = float

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=self._dtype)
        if vals.ndim != 1 or vals.size == 0:
            raise ParameterError("path needs a non-empty 1-D sample array")
        if not (self.dt > 0) or not math.isfinite(self.dt):
            raise ParameterError(f"grid step must be positive and finite, got {self.dt}")
        if not np.all(np.isfinite(vals)):
            raise ParameterError("path samples must be finite")
        object.__setattr__(self, "values", _as_readonly(vals))

    def __len__(self) -> int:
        return self.values.size

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.values.size)

    @property
    def t_end(self) -> float:
        return self.t0 + self.dt * (self.values.size - 1)

    @property
    def span(self) -> float:
        """Domain length (t_end - t0)."""
        return self.dt * (self.values.size - 1)

    def step_count(self, eps: float) -> int:
        """Width eps as an integer number of grid steps, or raise."""
        if not (eps > 0):
            raise ParameterError(f"width must be positive, got {eps}")
        k = eps / self.dt
        k_int = round(k)
        if k_int < 1 or abs(k - k_int) > _REL_TOL * max(1.0, k):
            raise GridMismatchError(
                f"width {eps} is not an integer multiple of the grid step {self.dt}"
            )
        if k_int >= self.values.size:
            raise ParameterError(f"width {eps} exceeds the sampled domain")
        return k_int

    def index_of(self, t: float) -> int:
        """Grid index of time t (must lie on the grid)."""
        i = self.nearest_index(t)
        if abs(self.t0 + i * self.dt - t) > _REL_TOL * max(1.0, abs(t), self.dt):
            raise GridMismatchError(f"time {t} does not lie on the sample grid")
        return i

    def nearest_index(self, t: float) -> int:
        """Index of the sample closest to time t (must be in the domain)."""
        i = round((t - self.t0) / self.dt)
        if i < 0 or i >= self.values.size:
            raise ParameterError(f"time {t} is outside the sampled domain")
        return i

    def _promote(self, other):
        if isinstance(other, ComplexPath):
            return ComplexPath
        if np.iscomplexobj(self.values) or np.iscomplexobj(other):
            return ComplexPath
        return SampledPath

    def _binary(self, other, op):
        if isinstance(other, _BasePath):
            t0, dt, va, vb = overlap(self, other)
            cls = ComplexPath if (isinstance(self, ComplexPath) or isinstance(other, ComplexPath)) else SampledPath
            return cls(t0, dt, op(va, vb))
        cls = self._promote(other)
        return cls(self.t0, self.dt, op(self.values, other))

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    def __radd__(self, other):
        return self._binary(other, lambda a, b: b + a)

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    def __rmul__(self, other):
        return self._binary(other, lambda a, b: b * a)

    def __neg__(self):
        return type(self)(self.t0, self.dt, -self.values)

    def same_grid(self, other: "_BasePath", rel=_REL_TOL) -> bool:
        if abs(self.dt - other.dt) > rel * self.dt:
            return False
        off = (other.t0 - self.t0) / self.dt
        return abs(off - round(off)) <= 1e-6


@dataclass(frozen=True)
class SampledPath(_BasePath):
    """Real-valued samples of a function on a uniform grid of the line."""

    _dtype = float

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "value"])
        for t, v in zip(self.times, self.values):
            w.writerow([repr(float(t)), repr(float(v))])
        return buf.getvalue()

    @classmethod
    def from_csv_text(cls, text: str) -> "SampledPath":
        t, cols = _read_csv_columns(text, ["t", "value"])
        return cls(t[0], _grid_step(t), cols[0])

    def write_csv(self, path) -> None:
        _atomic_write(path, self.to_csv_text())

    @classmethod
    def read_csv(cls, path) -> "SampledPath":
        with open(path, "r", newline="") as fh:
            return cls.from_csv_text(fh.read())


@dataclass(frozen=True)
class ComplexPath(_BasePath):
    """Complex-valued samples on the same kind of grid as SampledPath."""

    _dtype = complex

    @property
    def real(self) -> SampledPath:
        return SampledPath(self.t0, self.dt, self.values.real)

    @property
    def imag(self) -> SampledPath:
        return SampledPath(self.t0, self.dt, self.values.imag)

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "re", "im"])
        for t, v in zip(self.times, self.values):
            w.writerow([repr(float(t)), repr(float(v.real)), repr(float(v.imag))])
        return buf.getvalue()

    @classmethod
    def from_csv_text(cls, text: str) -> "ComplexPath":
        t, cols = _read_csv_columns(text, ["t", "re", "im"])
        return cls(t[0], _grid_step(t), cols[0] + 1j * cols[1])

    def write_csv(self, path) -> None:
        _atomic_write(path, self.to_csv_text())

    @classmethod
    def read_csv(cls, path) -> "ComplexPath":
        with open(path, "r", newline="") as fh:
            return cls.from_csv_text(fh.read())


def _grid_step(t: np.ndarray) -> float:
    if t.size < 2:
        raise ParameterError("need at least two samples to infer the grid step")
    return float(t[1] - t[0])


def _read_csv_columns(text: str, header: list[str]):
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [h.strip() for h in rows[0]] != header:
        raise ParameterError(f"expected CSV header {','.join(header)}")
    data = np.array([[float(x) for x in row] for row in rows[1:] if row], dtype=float)
    if data.size == 0:
        raise ParameterError("CSV contains no samples")
    return data[:, 0], [data[:, j] for j in range(1, len(header))]


def _atomic_write(path, text: str) -> None:
    import os
    import tempfile

    path = os.fspath(path)
    d = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def overlap(*paths: _BasePath):
    """Common grid window of several paths.

    Returns (t0, dt, view_0, ..., view_n) where the views are the value
    slices over the shared window. Raises GridMismatchError when the step
    sizes differ or the origins are not offset by whole steps.
    """
    first = paths[0]
    dt = first.dt
    offs = []
    for p in paths:
        if abs(p.dt - dt) > _REL_TOL * dt:
            raise GridMismatchError(f"grid steps differ: {p.dt} vs {dt}")
        off = (p.t0 - first.t0) / dt
        off_int = round(off)
        if abs(off - off_int) > 1e-6:
            raise GridMismatchError("grid origins are not offset by whole steps")
        offs.append(off_int)
    start = max(offs)
    end = min(off + len(p) for off, p in zip(offs, paths))
    if end - start < 1:
        raise GridMismatchError("paths have no common grid window")
    views = tuple(p.values[start - off:end - off] for off, p in zip(offs, paths))
    return (first.t0 + start * dt, dt) + views


# ---------------------------------------------------------------------------
# Smoothing kernels
# ---------------------------------------------------------------------------

_KERNEL_KINDS = ("box-central", "box-forward", "box-backward", "gaussian")
_NORMALIZATIONS = ("conventional", "paper-literal")


@dataclass(frozen=True)
class KernelSpec:
    """Smoothing kernel: kind, width eps and normalization convention.

    Under "conventional" normalization the discrete weights sum to one, so
    constants map to themselves. "paper-literal" keeps the 1/(2 eps)
    prefactor over the one-sided windows of length eps, which halves the
    forward/backward box means; it coincides with "conventional" for the
    central box and has no effect on the gaussian kernel.
    """

    kind: str
    width: float
    normalization: str = "conventional"

    def __post_init__(self):
        if self.kind not in _KERNEL_KINDS:
            raise ParameterError(f"unknown kernel kind {self.kind!r}; choose from {_KERNEL_KINDS}")
        if self.normalization not in _NORMALIZATIONS:
            raise ParameterError(f"unknown normalization {self.normalization!r}")
        if not (self.width > 0):
            raise ParameterError("kernel width must be positive")


def _trapezoid_weights(k: int) -> np.ndarray:
    w = np.ones(k + 1)
    w[0] = w[-1] = 0.5
    return w / k


def smooth_representation(f: SampledPath, kernel: KernelSpec) -> SampledPath:
    """Discrete convolution of f with the kernel, on the valid sub-grid.

    The box kernels integrate with the trapezoid rule, so the central box
    with conventional normalization reproduces the running mean
    (1/2eps) * integral over [t-eps, t+eps] up to O(dt^2) quadrature error
    and is exact for affine samples.
    """
    k = f.step_count(kernel.width)
    half = kernel.normalization == "paper-literal"
    if kernel.kind == "box-central":
        w = _trapezoid_weights(2 * k)
        lo_shift, width_steps = k, 2 * k
    elif kernel.kind == "box-forward":
        w = _trapezoid_weights(k)
        if half:
            w = w / 2
        lo_shift, width_steps = 0, k
    elif kernel.kind == "box-backward":
        w = _trapezoid_weights(k)
        if half:
            w = w / 2
        lo_shift, width_steps = k, k
    else:  # gaussian, sigma = eps, truncated at 4 sigma
        r = 4 * k
        j = np.arange(-r, r + 1)
        w = np.exp(-0.5 * (j / k) ** 2)
        w = w / w.sum()
        lo_shift, width_steps = r, 2 * r
    if width_steps >= len(f):
        raise ParameterError("kernel support exceeds the sampled domain")
    vals = np.convolve(f.values, w, mode="valid")
    return SampledPath(f.t0 + lo_shift * f.dt, f.dt, vals)


def forward_mean(f: SampledPath, eps: float) -> SampledPath:
    return smooth_representation(f, KernelSpec("box-forward", eps))


def backward_mean(f: SampledPath, eps: float) -> SampledPath:
    return smooth_representation(f, KernelSpec("box-backward", eps))


def central_mean(f: SampledPath, eps: float) -> SampledPath:
    return smooth_representation(f, KernelSpec("box-central", eps))


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def tent(u):
    """Period-1 tent map: 2u on [0, 1/2], 2-2u on [1/2, 1]."""
    w = np.mod(u, 1.0)
    return np.where(w <= 0.5, 2.0 * w, 2.0 - 2.0 * w)


def takagi_terms(alpha: float, dt: float) -> int:
    """Terms needed so the truncation tail 2^(-n alpha) drops below dt."""
    return max(1, math.ceil(math.log2(1.0 / dt) / alpha) + 1)


def takagi_values(t: np.ndarray, alpha: float, n_terms: int) -> np.ndarray:
    out = np.zeros_like(t, dtype=float)
    for n in range(n_terms):
        out += 2.0 ** (-n * alpha) * tent(t * 2.0 ** n)
    return out


def gen_takagi(alpha: float, dt: float, length: int, n_terms: int | None = None,
               t0: float = 0.0) -> SampledPath:
    """Partial sum of the Takagi (Knopp) series with Hoelder exponent alpha.

    K(t) = sum_n 2^(-n alpha) g(2^n t) with g the period-1 tent map. When
    n_terms is omitted it is chosen so the truncation error is below the
    grid resolution.
    """
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"alpha must lie in (0, 1), got {alpha}")
    if length < 2:
        raise ParameterError("grid needs at least two samples")
    if not (dt > 0):
        raise ParameterError("grid step must be positive")
    if n_terms is None:
        n_terms = takagi_terms(alpha, dt)
    if n_terms < 1:
        raise ParameterError("n_terms must be at least 1")
    t = t0 + dt * np.arange(length)
    return SampledPath(t0, dt, takagi_values(t, alpha, n_terms))


@dataclass(frozen=True)
class AffineSystem:
    """Fractal interpolation system: N+1 points and N vertical factors.

    The i-th map sends the whole graph over [a, b] onto the piece over
    [x_i, x_{i+1}]; its x-part is the affine map onto that interval and its
    y-part is d_i * y plus the linear term fixed by endpoint interpolation.
    """

    points: tuple
    d: tuple
    iterations: int = 24

    def __post_init__(self):
        pts = tuple((float(x), float(y)) for x, y in self.points)
        dd = tuple(float(v) for v in self.d)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "d", dd)
        if len(pts) < 3:
            raise ParameterError("an affine system needs at least 3 interpolation points")
        if len(dd) != len(pts) - 1:
            raise ParameterError("need one scaling factor per interval")
        xs = [p[0] for p in pts]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ParameterError("interpolation abscissae must be strictly increasing")
        if any(abs(v) >= 1.0 for v in dd):
            raise ContractionError("vertical scaling factors must satisfy |d| < 1")
        if self.iterations < 0:
            raise ParameterError("iteration count must be non-negative")

    @property
    def xs(self) -> np.ndarray:
        return np.array([p[0] for p in self.points])

    @property
    def ys(self) -> np.ndarray:
        return np.array([p[1] for p in self.points])


def affine_ifs_step(system: AffineSystem, grid: np.ndarray, z: np.ndarray) -> np.ndarray:
    """One application of the joint map F to the sampled function z."""
    xs, ys, d = system.xs, system.ys, np.asarray(system.d)
    a, b = xs[0], xs[-1]
    y_a, y_b = ys[0], ys[-1]
    seg = np.clip(np.searchsorted(xs, grid, side="right") - 1, 0, len(d) - 1)
    # invert the x-part of map i at each output point
    u = a + (grid - xs[seg]) * (b - a) / (xs[seg + 1] - xs[seg])
    q_a = ys[seg] - d[seg] * y_a
    q_b = ys[seg + 1] - d[seg] * y_b
    q = q_a + (q_b - q_a) * (u - a) / (b - a)
    return d[seg] * np.interp(u, grid, z) + q


def gen_affine_ifs(system: AffineSystem, dt: float, length: int) -> SampledPath:
    """Iterate the affine system from the chord of its endpoints.

    The grid must span [x_1, x_{N+1}]. Successive iterates are uniformly
    Cauchy with contraction factor max |d_i| and the limit interpolates
    every (x_i, y_i).
    """
    xs, ys = system.xs, system.ys
    a, b = xs[0], xs[-1]
    if length < 2 or not (dt > 0):
        raise ParameterError("grid needs at least two samples and a positive step")
    if abs((length - 1) * dt - (b - a)) > _REL_TOL * max(1.0, b - a):
        raise ParameterError(
            f"grid (dt={dt}, length={length}) does not span the interpolation interval [{a}, {b}]"
        )
    grid = a + dt * np.arange(length)
    z = ys[0] + (ys[-1] - ys[0]) * (grid - a) / (b - a)
    for _ in range(system.iterations):
        z = affine_ifs_step(system, grid, z)
    return SampledPath(a, dt, z)


def gen_principal_schrodinger(hbar_over_m: float, c: float, sign: int, eps: float,
                              perturbation_amplitude: float, dt: float, length: int,
                              t0: float = 0.0) -> SampledPath:
    """Line of slope +-sqrt(hbar/m) through t = c + eps/2, plus a period-eps
    H^(1/2) perturbation (a rescaled Takagi(1/2) partial sum).

    The periodic part is evaluated from the integer grid phase i mod k, so
    it cancels bitwise in every eps-step difference: forward and backward
    difference quotients equal the slope at all interior points.
    """
    if not (hbar_over_m > 0):
        raise ParameterError("hbar_over_m must be positive")
    if sign not in (+1, -1):
        raise ParameterError("sign must be +1 or -1")
    if length < 2 or not (dt > 0):
        raise ParameterError("grid needs at least two samples and a positive step")
    k = round(eps / dt)
    if k < 1 or abs(eps / dt - k) > _REL_TOL * max(1.0, eps / dt):
        raise GridMismatchError(f"eps {eps} is not an integer multiple of dt {dt}")
    slope = sign * math.sqrt(hbar_over_m)
    t = t0 + dt * np.arange(length)
    vals = slope * (t - c - eps / 2.0)
    if perturbation_amplitude != 0.0:
        phases = np.arange(k) / k
        n_terms = takagi_terms(0.5, 1.0 / k) if k > 1 else 1
        cell = perturbation_amplitude * takagi_values(phases, 0.5, n_terms)
        reps = -(-length // k)
        vals = vals + np.tile(cell, reps)[:length]
    return SampledPath(t0, dt, vals)
