"""Quantum difference operators, the complex scale derivative, the
non-differentiability defect and minimal-resolution estimation."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import GridMismatchError, ParameterError
from .paths import ComplexPath, SampledPath, backward_mean, central_mean, forward_mean

SIDES = ("+", "-")


def quantum_diff(f, eps: float, side: str):
    """One-sided difference quotient at resolution eps.

    side "+": (f(t+eps) - f(t)) / eps on [t0, t_end - eps].
    side "-": (f(t) - f(t-eps)) / eps on [t0 + eps, t_end].
    The two share one array computation; only the output origin differs.
    """
    if side not in SIDES:
        raise ParameterError(f"side must be '+' or '-', got {side!r}")
    k = f.step_count(eps)
    vals = (f.values[k:] - f.values[:-k]) / eps
    t0 = f.t0 if side == "+" else f.t0 + k * f.dt
    return type(f)(t0, f.dt, vals)


def translate(f, eps: float):
    """Classical translation tau_eps: (tau_eps f)(t) = f(t + eps)."""
    k = round(eps / f.dt)
    if abs(eps / f.dt - k) > 1e-9 * max(1.0, abs(eps / f.dt)):
        raise GridMismatchError(f"translation {eps} is not a whole number of grid steps")
    return type(f)(f.t0 - k * f.dt, f.dt, f.values)


def _scale_derivative_real(f: SampledPath, eps: float) -> ComplexPath:
    k = f.step_count(eps)
    if len(f) < 2 * k + 1:
        raise ParameterError("path too short for a two-sided stencil of this width")
    d = (f.values[k:] - f.values[:-k]) / eps
    dp = d[k:]         # forward quotient on [t0+eps, t_end-eps]
    dm = d[:len(d) - k]  # backward quotient on the same window
    vals = 0.5 * (dp + dm) - 0.5j * (dp - dm)
    return ComplexPath(f.t0 + k * f.dt, f.dt, vals)


def scale_derivative(f, eps: float) -> ComplexPath:
    """Complex scale derivative (1/2)(D+ + D-) - (i/2)(D+ - D-).

    For complex input it is applied to the real and imaginary parts
    separately and recombined.
    """
    if isinstance(f, ComplexPath):
        re = _scale_derivative_real(f.real, eps)
        im = _scale_derivative_real(f.imag, eps)
        return ComplexPath(re.t0, re.dt, re.values + 1j * im.values)
    return _scale_derivative_real(f, eps)


def nondiff_defect(f: SampledPath, eps: float) -> SampledPath:
    """Defect |f(t+eps) + f(t-eps) - 2 f(t)| / eps on the interior window."""
    k = f.step_count(eps)
    if len(f) < 2 * k + 1:
        raise ParameterError("path too short for the defect stencil")
    v = f.values
    vals = np.abs(v[2 * k:] + v[:-2 * k] - 2.0 * v[k:-k]) / eps
    return SampledPath(f.t0 + k * f.dt, f.dt, vals)


INFINITE = math.inf


@dataclass(frozen=True)
class MinimalResolution:
    """Per-point and global minimal resolution at threshold h.

    per_point[i] is the smallest eps on the grid {dt, ..., eps_max} whose
    defect at that point drops below h, or INFINITE when none does. The
    global value is the sup over the evaluated core window.
    """

    h: float
    eps_max: float
    t0: float
    dt: float
    per_point: np.ndarray

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.per_point.size)

    @property
    def global_value(self) -> float:
        return float(np.max(self.per_point))

    @property
    def effectively_zero(self) -> bool:
        """True when every point resolves at the first admissible scale."""
        return bool(np.all(self.per_point <= self.dt * (1 + 1e-9)))

    def to_json(self) -> str:
        per = ["inf" if not math.isfinite(v) else v for v in self.per_point.tolist()]
        g = self.global_value
        return json.dumps({
            "h": self.h,
            "global": "inf" if not math.isfinite(g) else g,
            "per_point": per,
        })


def minimal_resolution(f: SampledPath, h: float, eps_max: float | None = None) -> MinimalResolution:
    """Smallest scale (per point) at which the defect drops below h.

    Evaluated on the core window [t0 + eps_max, t_end - eps_max] where the
    whole eps grid {dt, 2dt, ..., eps_max} is admissible at every point; an
    empty admissible set maps to the INFINITE sentinel.
    """
    if not (h > 0):
        raise ParameterError("threshold h must be positive")
    n = len(f)
    if eps_max is None:
        k_max = max(1, (n - 1) // 4)
    else:
        k_max = f.step_count(eps_max)
    if n < 2 * k_max + 1:
        raise ParameterError("path too short for the requested eps_max")
    v = f.values
    core = slice(k_max, n - k_max)
    m = n - 2 * k_max
    result = np.full(m, INFINITE)
    unset = np.ones(m, dtype=bool)
    for k in range(1, k_max + 1):
        eps = k * f.dt
        i0 = k_max
        defect = np.abs(v[i0 + k:i0 + k + m] + v[i0 - k:i0 - k + m] - 2.0 * v[core]) / eps
        hit = unset & (defect < h)
        result[hit] = eps
        unset &= ~hit
        if not unset.any():
            break
    return MinimalResolution(h, k_max * f.dt, f.t0 + k_max * f.dt, f.dt, result)


def holder_norm_estimate(f: SampledPath, alpha: float, pair_cap: int = 2 ** 12,
                         samples_per_lag: int = 64, seed: int = 0) -> float:
    """Max of |f(x)-f(y)| / |x-y|^alpha over sampled pairs (a lower bound
    of the Hoelder norm).

    All pairs are scanned exactly up to pair_cap points; larger grids use a
    fixed number of random start indices per lag with a fixed seed.
    """
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"alpha must lie in (0, 1), got {alpha}")
    n = len(f)
    if n < 2:
        raise ParameterError("need at least two samples")
    v = f.values
    best = 0.0
    if n <= pair_cap:
        for lag in range(1, n):
            m = np.abs(v[lag:] - v[:-lag]).max()
            best = max(best, m / (lag * f.dt) ** alpha)
    else:
        rng = np.random.default_rng(seed)
        for lag in range(1, n):
            count = n - lag
            if count <= samples_per_lag:
                diffs = np.abs(v[lag:] - v[:-lag])
            else:
                idx = rng.integers(0, count, size=samples_per_lag)
                diffs = np.abs(v[idx + lag] - v[idx])
            best = max(best, diffs.max() / (lag * f.dt) ** alpha)
    return float(best)


@dataclass(frozen=True)
class QuantumRepresentation:
    """Either the central mean graph, or the forward/backward pair when the
    requested scale falls at or below the minimal resolution."""

    split: bool
    graphs: tuple

    @property
    def mean(self) -> SampledPath:
        if self.split:
            raise ParameterError("split representation has no single mean graph")
        return self.graphs[0]

    @property
    def forward(self) -> SampledPath:
        if not self.split:
            raise ParameterError("single-graph representation has no forward graph")
        return self.graphs[0]

    @property
    def backward(self) -> SampledPath:
        if not self.split:
            raise ParameterError("single-graph representation has no backward graph")
        return self.graphs[1]


def quantum_representation(f: SampledPath, eps: float, h: float,
                           eps_max: float | None = None) -> QuantumRepresentation:
    """Geometric representation of f at scale eps and threshold h.

    Above the minimal resolution the central mean graph suffices; at or
    below it the forward and backward mean graphs are returned as a pair.
    A global resolution at the first admissible scale counts as zero.
    """
    res = minimal_resolution(f, h, eps_max)
    g = res.global_value
    if res.effectively_zero or eps > g:
        return QuantumRepresentation(False, (central_mean(f, eps),))
    return QuantumRepresentation(True, (forward_mean(f, eps), backward_mean(f, eps)))
