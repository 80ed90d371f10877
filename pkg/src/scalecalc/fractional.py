"""Left/right local fractional derivative estimators, their complex
combination and empirical spectrum scans.

Limits from samples are necessarily extrapolations: the sided quotients
are evaluated on a dyadic shrinking h-grid, accelerated with Aitken's
delta-squared transform, and a limit is only reported when the
extrapolated tail is Cauchy. A divergence flag is raised on monotone
growth beyond a configured factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .paths import SampledPath

CONVERGED = "converged"
DIVERGENT = "divergent"
OSCILLATORY = "oscillatory"

_CAUCHY_RTOL = 1e-3
_CAUCHY_ATOL = 1e-9
_DIVERGENCE_FACTOR = 10.0


def aitken(seq: np.ndarray) -> np.ndarray:
    """Aitken delta-squared acceleration; exact on geometric tails."""
    if seq.size < 3:
        return seq.copy()
    q0, q1, q2 = seq[:-2], seq[1:-1], seq[2:]
    d1 = q1 - q0
    d2 = q2 - q1
    denom = d2 - d1
    out = q2.copy()
    ok = np.abs(denom) > 1e-300
    out[ok] = q2[ok] - d2[ok] ** 2 / denom[ok]
    return out


def classify_quotient_tail(quotients: np.ndarray,
                           divergence_factor: float = _DIVERGENCE_FACTOR,
                           cauchy_rtol: float = _CAUCHY_RTOL,
                           cauchy_atol: float = _CAUCHY_ATOL):
    """Classify a quotient sequence over a shrinking h-grid.

    Returns (status, value): DIVERGENT when the |quotient| tail grows
    monotonically beyond divergence_factor across the last three levels
    (value None); CONVERGED with the extrapolated limit when the Aitken
    tail is Cauchy at the given tolerances; OSCILLATORY otherwise (value
    is the last raw quotient, reported without a convergence claim).
    """
    q = np.asarray(quotients, dtype=float)
    if q.size == 0:
        raise ParameterError("empty quotient sequence")
    if q.size >= 3:
        a2, a1, a0 = np.abs(q[-3:])
        if a2 < a1 < a0 and a0 > divergence_factor * a2:
            return DIVERGENT, None
    acc = aitken(q)
    if acc.size >= 5:
        acc = aitken(acc)  # second pass clears the subdominant geometric mode
    tail = acc[-3:] if acc.size >= 3 else acc
    if tail.size >= 2:
        gaps = np.abs(np.diff(tail))
        # settledness is judged against the sequence scale so that limits
        # near zero (differentiable inputs) are not held to an absolute
        # tolerance the h-grid cannot reach
        scale = max(abs(tail[-1]), float(np.max(np.abs(q))))
        tol = max(cauchy_rtol * scale, cauchy_atol)
        settling = gaps[-1] <= tol and np.all(np.diff(gaps) <= 0.0)
        if np.all(gaps <= tol) or settling:
            return CONVERGED, float(tail[-1])
    elif q.size == 1:
        return CONVERGED, float(q[-1])
    return OSCILLATORY, float(q[-1])


@dataclass(frozen=True)
class FracEstimate:
    """Sided quotient sequence at one point with its classification."""

    point: float
    alpha: float
    side: str
    h_grid: np.ndarray     # strictly decreasing
    quotients: np.ndarray
    status: str
    value: float | None    # extrapolated limit when converged

    @property
    def last_quotient(self) -> float:
        return float(self.quotients[-1])

    @property
    def best(self) -> float | None:
        """Extrapolated limit when converged, else the last raw quotient
        (None when divergent)."""
        if self.status == DIVERGENT:
            return None
        return self.value if self.status == CONVERGED else self.last_quotient


def local_frac_deriv(f: SampledPath, t0: float, alpha: float, side: str,
                     h_max: float | None = None,
                     divergence_factor: float = _DIVERGENCE_FACTOR) -> FracEstimate:
    """Sided quotient (f(t0 +- h) - f(t0)) / h^alpha over a dyadic h-grid.

    side "+": (f(t0+h) - f(t0)) / h^alpha,
    side "-": (f(t0) - f(t0-h)) / h^alpha.
    """
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"alpha must lie in (0, 1), got {alpha}")
    if side not in ("+", "-"):
        raise ParameterError(f"side must be '+' or '-', got {side!r}")
    i0 = f.nearest_index(t0)
    n = len(f)
    if i0 == 0 or i0 == n - 1:
        raise ParameterError("the expansion point must be interior")
    room = (n - 1 - i0) if side == "+" else i0
    k_max = room if h_max is None else min(room, f.step_count(h_max))
    ks = []
    k = 1 << int(math.floor(math.log2(k_max)))
    while k >= 1:
        ks.append(k)
        k //= 2
    h = np.array([kk * f.dt for kk in ks])
    if side == "+":
        num = f.values[i0 + np.array(ks)] - f.values[i0]
    else:
        num = f.values[i0] - f.values[i0 - np.array(ks)]
    q = num / h ** alpha
    status, value = classify_quotient_tail(q, divergence_factor)
    return FracEstimate(f.t0 + i0 * f.dt, alpha, side, h, q, status, value)


@dataclass(frozen=True)
class ComplexFracEstimate:
    """Both sided estimates combined into one complex quantity."""

    value: complex | None
    status: str
    plus: FracEstimate
    minus: FracEstimate


def _combine(dp: float, dm: float) -> complex:
    # Half-sum plus i times the half-difference; the antisymmetric imaginary
    # part mirrors the scale derivative (see the module notes on the
    # symmetric-sum variant).
    return 0.5 * (dp + dm) + 0.5j * (dp - dm)


def _combine_symmetric(dp: float, dm: float) -> complex:
    # Literal printed combination with the half-sum in both components.
    return 0.5 * (dp + dm) + 0.5j * (dp + dm)


def complex_local_frac(f: SampledPath, t0: float, alpha: float,
                       extrapolate: bool = True,
                       symmetric_imag: bool = False,
                       h_max: float | None = None) -> ComplexFracEstimate:
    """Combine the sided estimates into (1/2)(d+ + d-) + (i/2)(d+ - d-).

    A divergent side propagates its flag. With extrapolate=False the last
    raw quotients are combined instead of the extrapolated limits, which is
    the reading under which sided slopes of a kink near exponent one give
    approximately +-1. symmetric_imag=True selects the symmetric-sum
    imaginary part instead of the half-difference.
    """
    plus = local_frac_deriv(f, t0, alpha, "+", h_max)
    minus = local_frac_deriv(f, t0, alpha, "-", h_max)
    combine = _combine_symmetric if symmetric_imag else _combine
    if plus.status == DIVERGENT or minus.status == DIVERGENT:
        return ComplexFracEstimate(None, DIVERGENT, plus, minus)
    if extrapolate and plus.status == CONVERGED and minus.status == CONVERGED:
        return ComplexFracEstimate(combine(plus.value, minus.value), CONVERGED, plus, minus)
    dp = plus.last_quotient if not extrapolate or plus.status != CONVERGED else plus.value
    dm = minus.last_quotient if not extrapolate or minus.status != CONVERGED else minus.value
    status = OSCILLATORY if extrapolate else "raw"
    return ComplexFracEstimate(combine(dp, dm), status, plus, minus)


@dataclass(frozen=True)
class SpectrumScan:
    """Complex estimates over sample points with summary fractions."""

    points: np.ndarray
    estimates: tuple
    zero_tol: float

    @property
    def summary(self) -> dict:
        n = len(self.estimates)
        divergent = sum(1 for e in self.estimates if e.status == DIVERGENT)
        zero = sum(1 for e in self.estimates
                   if e.status != DIVERGENT and abs(e.value) <= self.zero_tol)
        nonzero = n - divergent - zero
        return {
            "points": n,
            "fraction_zero": zero / n,
            "fraction_divergent": divergent / n,
            "fraction_finite_nonzero": nonzero / n,
        }

    def to_csv_text(self) -> str:
        lines = ["t,re,im,flag"]
        for t, e in zip(self.points, self.estimates):
            if e.value is None:
                lines.append(f"{repr(float(t))},nan,nan,{e.status}")
            else:
                lines.append(f"{repr(float(t))},{repr(e.value.real)},{repr(e.value.imag)},{e.status}")
        return "\n".join(lines) + "\n"


def spectrum_scan(f: SampledPath, alpha: float, sample_points,
                  zero_tol: float = 1e-3, h_max: float | None = None) -> SpectrumScan:
    """complex_local_frac at each sample point plus summary statistics."""
    pts = np.asarray(sample_points, dtype=float)
    estimates = tuple(complex_local_frac(f, t, alpha, h_max=h_max) for t in pts)
    return SpectrumScan(pts, estimates, zero_tol)
