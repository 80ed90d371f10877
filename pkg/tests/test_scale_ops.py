import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import scalecalc as sc
from scalecalc.errors import GridMismatchError, ParameterError


def poly_path(coeffs, m=10):
    dt = 2.0 ** -m
    t = dt * np.arange(2 ** m + 1)
    return sc.SampledPath(0.0, dt, np.polyval(coeffs, t))


# ---------------------------------------------------------------------------
# quantum difference operators
# ---------------------------------------------------------------------------

def test_quantum_diff_linear_is_constant():
    f = poly_path([1.0, 0.0])
    for side in ("+", "-"):
        d = sc.quantum_diff(f, 8 * f.dt, side)
        np.testing.assert_allclose(d.values, 1.0, atol=1e-12)


def test_quantum_diff_square_at_one():
    dt = 0.1 / 16
    t = dt * np.arange(321)
    f = sc.SampledPath(0.0, dt, t ** 2)
    dp = sc.quantum_diff(f, 0.1, "+")
    dm = sc.quantum_diff(f, 0.1, "-")
    assert dp.values[dp.index_of(1.0)] == pytest.approx(2.1, abs=1e-12)
    assert dm.values[dm.index_of(1.0)] == pytest.approx(1.9, abs=1e-12)


def test_quantum_diff_grid_mismatch():
    f = poly_path([1.0, 0.0])
    with pytest.raises(GridMismatchError):
        sc.quantum_diff(f, 1.37 * f.dt, "+")
    with pytest.raises(ParameterError):
        sc.quantum_diff(f, 0.0, "+")
    with pytest.raises(ParameterError):
        sc.quantum_diff(f, 2.0, "+")  # wider than the domain


def test_translation_lemma_exact(takagi_12):
    f = takagi_12
    eps = 16 * f.dt
    lhs = sc.quantum_diff(sc.translate(f, eps), eps, "-")
    rhs = sc.quantum_diff(f, eps, "+")
    t0, _, a, b = sc.overlap(lhs, rhs)
    np.testing.assert_array_equal(a, b)


def test_translation_commutes_with_quantum_diff(takagi_12):
    f = takagi_12
    eps = 8 * f.dt
    for side in ("+", "-"):
        lhs = sc.translate(sc.quantum_diff(f, eps, side), eps)
        rhs = sc.quantum_diff(sc.translate(f, eps), eps, side)
        _, _, a, b = sc.overlap(lhs, rhs)
        np.testing.assert_array_equal(a, b)


# ---------------------------------------------------------------------------
# scale derivative
# ---------------------------------------------------------------------------

def test_scale_derivative_square_gluing_exact():
    dt = 2.0 ** -10
    t = dt * np.arange(2 ** 11 + 1)
    f = sc.SampledPath(0.0, dt, t ** 2)
    for k in (1, 4, 32):
        eps = k * dt
        d = sc.scale_derivative(f, eps)
        np.testing.assert_allclose(d.values.real, 2.0 * d.times, atol=1e-11)
        np.testing.assert_allclose(d.values.imag, -eps, atol=1e-12)
        sup = np.max(np.abs(d.values - 2.0 * d.times))
        assert sup == pytest.approx(eps, rel=1e-10)


def test_scale_derivative_constant_is_zero():
    f = sc.SampledPath(0.0, 0.01, np.full(101, 4.2))
    d = sc.scale_derivative(f, 0.05)
    np.testing.assert_array_equal(d.values, np.zeros(len(d), dtype=complex))


def test_scale_derivative_real_part_is_mean_function_derivative(takagi_12):
    # Re(scale derivative) equals the derivative of the central mean,
    # which is the symmetric quotient (f(t+eps) - f(t-eps)) / (2 eps)
    f = takagi_12
    k = 32
    eps = k * f.dt
    d = sc.scale_derivative(f, eps)
    sym = (f.values[2 * k:] - f.values[:-2 * k]) / (2 * eps)
    np.testing.assert_allclose(d.values.real, sym, atol=1e-12)


def test_scale_derivative_complex_recombination():
    dt = 2.0 ** -8
    t = dt * np.arange(2 ** 8 + 1)
    c = sc.ComplexPath(0.0, dt, t ** 2 + 1j * np.sin(t))
    d = sc.scale_derivative(c, 4 * dt)
    dr = sc.scale_derivative(sc.SampledPath(0.0, dt, t ** 2), 4 * dt)
    di = sc.scale_derivative(sc.SampledPath(0.0, dt, np.sin(t)), 4 * dt)
    np.testing.assert_array_equal(d.values, dr.values + 1j * di.values)


def test_gluing_trend_for_smooth_function():
    dt = 2.0 ** -12
    t = dt * np.arange(2 ** 12 + 1)
    f = sc.SampledPath(0.0, dt, np.sin(2 * np.pi * t))
    errs = []
    for k in (256, 64, 16, 4):
        d = sc.scale_derivative(f, k * dt)
        exact = 2 * np.pi * np.cos(2 * np.pi * d.times)
        errs.append(np.max(np.abs(d.values - exact)))
    assert all(b < a for a, b in zip(errs, errs[1:]))


# ---------------------------------------------------------------------------
# non-differentiability defect
# ---------------------------------------------------------------------------

def test_defect_zero_on_linear():
    f = poly_path([2.0, -1.0])
    d = sc.nondiff_defect(f, 16 * f.dt)
    np.testing.assert_allclose(d.values, 0.0, atol=1e-10)


def test_defect_of_kink_is_two():
    n = 1025
    dt = 1.0 / (n - 1)
    f = sc.SampledPath(0.0, dt, np.abs(dt * np.arange(n) - 0.5))
    for k in (1, 16, 128):
        d = sc.nondiff_defect(f, k * dt)
        assert d.values[d.index_of(0.5)] == pytest.approx(2.0, abs=1e-9)


def test_defect_order_eps_for_smooth():
    # f = t^3 has |f''| <= 6 T on [0, T]; the defect obeys a_eps <= eps sup|f''|
    dt = 2.0 ** -10
    t = dt * np.arange(2 ** 10 + 1)
    f = sc.SampledPath(0.0, dt, t ** 3)
    for k in (4, 32, 128):
        eps = k * dt
        d = sc.nondiff_defect(f, eps)
        assert np.max(d.values) <= eps * 6.0 * 1.0 + 1e-12


# ---------------------------------------------------------------------------
# minimal resolution
# ---------------------------------------------------------------------------

def test_minimal_resolution_smooth_resolves_at_first_scale():
    dt = 2.0 ** -10
    t = dt * np.arange(2 ** 10 + 1)
    f = sc.SampledPath(0.0, dt, np.sin(2 * np.pi * t))
    res = sc.minimal_resolution(f, 0.5)
    np.testing.assert_array_equal(res.per_point, np.full(res.per_point.size, dt))
    assert res.effectively_zero
    assert res.global_value == dt


def test_minimal_resolution_kink_is_infinite():
    n = 1025
    dt = 1.0 / (n - 1)
    f = sc.SampledPath(0.0, dt, np.abs(dt * np.arange(n) - 0.5))
    res = sc.minimal_resolution(f, 1.0, eps_max=0.25)
    i = int(np.argmin(np.abs(res.times - 0.5)))
    assert math.isinf(res.per_point[i])
    assert math.isinf(res.global_value)


def test_minimal_resolution_takagi_hoelder_bound(takagi_12):
    # the resolution of an alpha-Hoelder function is bounded by
    # (h / (2 |f|_alpha))^(1/(alpha-1)), up to one grid step of slack
    f = takagi_12
    norm = sc.holder_norm_estimate(f, 0.5)
    h = 40.0
    res = sc.minimal_resolution(f, h, eps_max=2.0 ** -4)
    bound = (h / (2.0 * norm)) ** (1.0 / (0.5 - 1.0))
    assert res.global_value <= bound + f.dt


def test_minimal_resolution_invariant_under_constants(takagi_12):
    f = takagi_12
    res = sc.minimal_resolution(f, 2.0, eps_max=2.0 ** -5)
    res_shift = sc.minimal_resolution(f + 17.5, 2.0, eps_max=2.0 ** -5)
    np.testing.assert_array_equal(res.per_point, res_shift.per_point)


def test_minimal_resolution_changes_under_scaling(takagi_12):
    # one demonstration instance, not a universal claim
    f = takagi_12
    res = sc.minimal_resolution(f, 80.0, eps_max=2.0 ** -4)
    res_scaled = sc.minimal_resolution(3.0 * f, 80.0, eps_max=2.0 ** -4)
    assert res_scaled.global_value != res.global_value


def test_minimal_resolution_defect_duality(takagi_12):
    # per-point value finite iff some admissible eps has defect below h
    f = takagi_12
    h = 8.0
    k_max = 32
    res = sc.minimal_resolution(f, h, eps_max=k_max * f.dt)
    rng = np.random.default_rng(1)
    for i in rng.integers(0, res.per_point.size, size=24):
        j = i + k_max  # index into the original grid
        defects = []
        for k in range(1, k_max + 1):
            eps = k * f.dt
            defects.append(abs(f.values[j + k] + f.values[j - k] - 2 * f.values[j]) / eps)
        has_hit = any(d < h for d in defects)
        assert has_hit == math.isfinite(res.per_point[i])


def test_minimal_resolution_json_sentinel():
    n = 257
    dt = 1.0 / (n - 1)
    f = sc.SampledPath(0.0, dt, np.abs(dt * np.arange(n) - 0.5))
    res = sc.minimal_resolution(f, 1.0, eps_max=0.25)
    data = json.loads(res.to_json())
    assert data["global"] == "inf"
    assert "inf" in data["per_point"]
    assert data["h"] == 1.0


def test_minimal_resolution_requires_positive_threshold(takagi_12):
    with pytest.raises(ParameterError):
        sc.minimal_resolution(takagi_12, 0.0)


# ---------------------------------------------------------------------------
# Hoelder norm estimation
# ---------------------------------------------------------------------------

def test_holder_norm_constant_is_zero():
    f = sc.SampledPath(0.0, 0.01, np.full(101, 2.0))
    assert sc.holder_norm_estimate(f, 0.5) == 0.0


def test_holder_norm_of_line_attained_at_largest_separation():
    dt = 2.0 ** -8
    f = sc.SampledPath(0.0, dt, dt * np.arange(2 ** 8 + 1))
    assert sc.holder_norm_estimate(f, 0.5) == pytest.approx(1.0, rel=1e-12)


def test_holder_norm_stabilizes_under_refinement():
    a = sc.holder_norm_estimate(sc.gen_takagi(0.5, dt=2.0 ** -10, length=2 ** 10 + 1), 0.5)
    b = sc.holder_norm_estimate(sc.gen_takagi(0.5, dt=2.0 ** -11, length=2 ** 11 + 1), 0.5)
    assert abs(a - b) / b < 0.1


def test_holder_norm_subsampling_is_deterministic_and_consistent():
    f = sc.gen_takagi(0.5, dt=2.0 ** -13, length=2 ** 13 + 1)
    full = sc.holder_norm_estimate(f, 0.5, pair_cap=2 ** 13 + 1)
    sub1 = sc.holder_norm_estimate(f, 0.5)
    sub2 = sc.holder_norm_estimate(f, 0.5)
    assert sub1 == sub2
    assert sub1 <= full + 1e-12
    assert sub1 >= 0.5 * full


def test_holder_norm_degenerate_input():
    with pytest.raises(ParameterError):
        sc.holder_norm_estimate(sc.SampledPath(0.0, 1.0, np.array([1.0])), 0.5)
    with pytest.raises(ParameterError):
        sc.holder_norm_estimate(sc.SampledPath(0.0, 1.0, np.array([1.0, 2.0])), 1.5)


# ---------------------------------------------------------------------------
# operator algebra properties
# ---------------------------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(
    coeffs_f=st.lists(st.floats(-2, 2), min_size=2, max_size=5),
    coeffs_g=st.lists(st.floats(-2, 2), min_size=2, max_size=5),
    k=st.integers(1, 64),
    lam=st.floats(-3, 3),
)
def test_quantum_diff_linearity(coeffs_f, coeffs_g, k, lam):
    f = poly_path(coeffs_f, m=9)
    g = poly_path(coeffs_g, m=9)
    eps = k * f.dt
    for side in ("+", "-"):
        lhs = sc.quantum_diff(f + g, eps, side)
        rhs = sc.quantum_diff(f, eps, side) + sc.quantum_diff(g, eps, side)
        _, _, a, b = sc.overlap(lhs, rhs)
        np.testing.assert_allclose(a, b, atol=1e-9)
        lhs2 = sc.quantum_diff(lam * f, eps, side)
        rhs2 = lam * sc.quantum_diff(f, eps, side)
        _, _, a2, b2 = sc.overlap(lhs2, rhs2)
        np.testing.assert_allclose(a2, b2, atol=1e-9)


@settings(max_examples=25, deadline=None)
@given(
    coeffs_f=st.lists(st.floats(-1, 1), min_size=2, max_size=6),
    coeffs_g=st.lists(st.floats(-1, 1), min_size=2, max_size=6),
    k=st.integers(1, 32),
)
def test_deformed_leibniz_identity(coeffs_f, coeffs_g, k):
    f = poly_path(coeffs_f)
    g = poly_path(coeffs_g)
    eps = k * f.dt
    for side, sgn in (("+", 1.0), ("-", -1.0)):
        lhs = sc.quantum_diff(f * g, eps, side)
        df = sc.quantum_diff(f, eps, side)
        dg = sc.quantum_diff(g, eps, side)
        rhs = df * g + f * dg + (sgn * eps) * (df * dg)
        _, _, a, b = sc.overlap(lhs, rhs)
        assert np.max(np.abs(a - b)) <= 1e-10


def test_leibniz_alternative_product_forms(takagi_12):
    # forward rule with the shifted factor, backward rule with the unshifted
    f = sc.gen_takagi(0.5, dt=2.0 ** -10, length=2 ** 10 + 1)
    dt = f.dt
    g = sc.SampledPath(0.0, dt, np.cos(3.0 * f.times) + 0.5)
    eps = 8 * dt
    h_eps = sc.translate(g, eps)
    v_eps = sc.translate(g, -eps)
    lhs_p = sc.quantum_diff(f * g, eps, "+")
    rhs_p = sc.quantum_diff(f, eps, "+") * h_eps + f * sc.quantum_diff(h_eps, eps, "-")
    _, _, a, b = sc.overlap(lhs_p, rhs_p)
    assert np.max(np.abs(a - b)) <= 1e-10
    lhs_m = sc.quantum_diff(f * g, eps, "-")
    rhs_m = sc.quantum_diff(f, eps, "-") * v_eps + f * sc.quantum_diff(v_eps, eps, "+")
    _, _, a, b = sc.overlap(lhs_m, rhs_m)
    assert np.max(np.abs(a - b)) <= 1e-10


# ---------------------------------------------------------------------------
# quantum representation
# ---------------------------------------------------------------------------

def test_quantum_representation_single_for_smooth():
    dt = 2.0 ** -10
    t = dt * np.arange(2 ** 10 + 1)
    f = sc.SampledPath(0.0, dt, np.sin(2 * np.pi * t))
    for k in (1, 4, 64):
        rep = sc.quantum_representation(f, k * dt, h=0.5)
        assert not rep.split
        assert isinstance(rep.mean, sc.SampledPath)


def test_quantum_representation_pair_for_takagi(takagi_12):
    rep = sc.quantum_representation(takagi_12, 4 * takagi_12.dt, h=1e-3, eps_max=2.0 ** -5)
    assert rep.split
    fwd, bwd = rep.forward, rep.backward
    assert isinstance(fwd, sc.SampledPath) and isinstance(bwd, sc.SampledPath)


def test_forward_backward_graphs_merge_for_differentiable():
    dt = 2.0 ** -12
    t = dt * np.arange(2 ** 12 + 1)
    f = sc.SampledPath(0.0, dt, np.sin(2 * np.pi * t))
    gaps = []
    for k in (256, 64, 16, 4):
        fwd = sc.forward_mean(f, k * dt)
        bwd = sc.backward_mean(f, k * dt)
        _, _, a, b = sc.overlap(fwd, bwd)
        gaps.append(np.max(np.abs(a - b)))
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
