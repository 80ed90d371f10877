import math

import numpy as np
import pytest

import scalecalc as sc
from scalecalc.errors import ContractionError, GridMismatchError, ParameterError
from scalecalc.paths import affine_ifs_step, tent


# ---------------------------------------------------------------------------
# takagi generator
# ---------------------------------------------------------------------------

def test_takagi_zero_at_origin():
    for alpha in (0.2, 0.5, 0.8):
        f = sc.gen_takagi(alpha, dt=2.0 ** -8, length=2 ** 8 + 1)
        assert f.values[0] == 0.0


def test_takagi_known_values():
    f = sc.gen_takagi(0.5, dt=2.0 ** -10, length=2 ** 10 + 1)
    assert f.values[f.index_of(0.5)] == pytest.approx(1.0, abs=1e-12)
    assert f.values[f.index_of(0.25)] == pytest.approx(0.5 + 2.0 ** -0.5, abs=1e-12)


def test_takagi_partial_sum_self_similarity():
    dt = 2.0 ** -9
    t = dt * np.arange(2 ** 9 + 1)
    alpha = 0.5
    for n in (1, 3, 6):
        k_n1 = sc.paths.takagi_values(t, alpha, n + 1)
        k_n_shift = sc.paths.takagi_values(np.mod(2 * t, 1.0), alpha, n)
        np.testing.assert_allclose(k_n1, tent(t) + 2.0 ** -alpha * k_n_shift, rtol=0, atol=1e-12)


def test_takagi_parameter_errors():
    with pytest.raises(ParameterError):
        sc.gen_takagi(1.5, dt=0.01, length=10)
    with pytest.raises(ParameterError):
        sc.gen_takagi(0.5, dt=0.01, length=1)
    with pytest.raises(ParameterError):
        sc.gen_takagi(0.5, dt=0.01, length=10, n_terms=0)


# ---------------------------------------------------------------------------
# affine systems
# ---------------------------------------------------------------------------

def test_affine_collinear_zero_d_is_segment():
    system = sc.AffineSystem(((0.0, 1.0), (0.3, 1.6), (1.0, 3.0)), (0.0, 0.0), iterations=5)
    p = sc.gen_affine_ifs(system, 0.01, 101)
    np.testing.assert_allclose(p.values, 1.0 + 2.0 * p.times, atol=1e-12)


def test_affine_interpolation_points_fixed():
    system = sc.AffineSystem(((0.0, 0.0), (0.5, 0.7), (1.0, 0.2)), (0.4, -0.3), iterations=30)
    p = sc.gen_affine_ifs(system, 2.0 ** -10, 2 ** 10 + 1)
    for xi, yi in system.points:
        assert p.values[p.index_of(xi)] == pytest.approx(yi, abs=1e-9)


def test_affine_one_iteration_polyline():
    system = sc.AffineSystem(((0.0, 0.0), (0.5, 0.7), (1.0, 0.2)), (0.0, 0.0), iterations=1)
    p = sc.gen_affine_ifs(system, 0.25, 5)
    np.testing.assert_allclose(p.values, [0.0, 0.35, 0.7, 0.45, 0.2], atol=1e-14)


def test_affine_one_iteration_matches_map_algebra():
    # apply each F_i to the chord analytically and compare
    pts = ((0.0, 0.0), (0.5, 0.7), (1.0, 0.2))
    system = sc.AffineSystem(pts, (0.4, -0.3), iterations=1)
    p = sc.gen_affine_ifs(system, 2.0 ** -8, 2 ** 8 + 1)
    x = p.times
    u = np.where(x <= 0.5, 2 * x, 2 * (x - 0.5))
    z0 = 0.2 * u
    q1 = (0.0 - 0.4 * 0.0) + ((0.7 - 0.4 * 0.2) - (0.0 - 0.4 * 0.0)) * u
    q2 = (0.7 + 0.3 * 0.0) + ((0.2 + 0.3 * 0.2) - (0.7 + 0.3 * 0.0)) * u
    manual = np.where(x <= 0.5, 0.4 * z0 + q1, -0.3 * z0 + q2)
    np.testing.assert_allclose(p.values, manual, atol=1e-14)


def test_affine_iterates_contract_uniformly():
    pts = ((0.0, 0.0), (0.5, 0.7), (1.0, 0.2))
    system = sc.AffineSystem(pts, (0.4, -0.3))
    grid = 2.0 ** -10 * np.arange(2 ** 10 + 1)
    z = 0.2 * grid
    gaps = []
    for _ in range(8):
        zn = affine_ifs_step(system, grid, z)
        gaps.append(np.max(np.abs(zn - z)))
        z = zn
    for a, b in zip(gaps, gaps[1:]):
        assert b <= 0.4 * a * (1 + 1e-9)


def test_affine_contraction_violation():
    with pytest.raises(ContractionError):
        sc.AffineSystem(((0.0, 0.0), (0.5, 1.0), (1.0, 0.0)), (1.0, 0.2))


def test_affine_requires_increasing_abscissae():
    with pytest.raises(ParameterError):
        sc.AffineSystem(((0.0, 0.0), (0.6, 1.0), (0.5, 0.0)), (0.1, 0.2))


def test_affine_grid_must_span_interval():
    system = sc.AffineSystem(((0.0, 0.0), (0.5, 1.0), (1.0, 0.0)), (0.1, 0.2))
    with pytest.raises(ParameterError):
        sc.gen_affine_ifs(system, 0.01, 50)


# ---------------------------------------------------------------------------
# smoothing
# ---------------------------------------------------------------------------

def test_central_box_exact_on_linear():
    dt = 2.0 ** -10
    t = dt * np.arange(2 ** 10 + 1)
    f = sc.SampledPath(0.0, dt, 3.0 * t - 1.0)
    s = sc.smooth_representation(f, sc.KernelSpec("box-central", 16 * dt))
    np.testing.assert_allclose(s.values, 3.0 * s.times - 1.0, atol=1e-13)


def test_central_box_on_square_matches_mean_integral():
    dt = 2.0 ** -11
    t = dt * np.arange(2 ** 11 + 1)
    f = sc.SampledPath(0.0, dt, t ** 2)
    for k in (8, 64):
        eps = k * dt
        s = sc.smooth_representation(f, sc.KernelSpec("box-central", eps))
        np.testing.assert_allclose(s.values, s.times ** 2 + eps ** 2 / 3.0, atol=dt ** 2)


def test_smoothing_converges_on_takagi(takagi_12):
    f = takagi_12
    gaps = []
    for k in (256, 64, 16, 4):
        s = sc.smooth_representation(f, sc.KernelSpec("box-central", k * f.dt))
        _, _, a, b = sc.overlap(s, f)
        gaps.append(np.max(np.abs(a - b)))
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 0.15


def test_smoothing_is_linear(takagi_12):
    f = takagi_12
    dt = f.dt
    g = sc.SampledPath(0.0, dt, np.sin(2 * np.pi * f.times))
    spec = sc.KernelSpec("gaussian", 4 * dt)
    lhs = sc.smooth_representation(2.5 * f + (-1.25) * g, spec)
    rhs = 2.5 * sc.smooth_representation(f, spec) + (-1.25) * sc.smooth_representation(g, spec)
    _, _, a, b = sc.overlap(lhs, rhs)
    np.testing.assert_allclose(a, b, atol=1e-12)


def test_all_kernels_preserve_constants():
    dt = 0.01
    f = sc.SampledPath(0.0, dt, np.full(201, 3.7))
    for kind in ("box-central", "box-forward", "box-backward", "gaussian"):
        s = sc.smooth_representation(f, sc.KernelSpec(kind, 5 * dt))
        np.testing.assert_allclose(s.values, 3.7, rtol=1e-14)


def test_paper_literal_halves_one_sided_means():
    dt = 2.0 ** -8
    t = dt * np.arange(2 ** 8 + 1)
    f = sc.SampledPath(0.0, dt, t ** 2 + 1.0)
    conv = sc.smooth_representation(f, sc.KernelSpec("box-forward", 16 * dt))
    lit = sc.smooth_representation(f, sc.KernelSpec("box-forward", 16 * dt, "paper-literal"))
    np.testing.assert_allclose(lit.values, conv.values / 2.0, rtol=1e-15)
    cc = sc.smooth_representation(f, sc.KernelSpec("box-central", 16 * dt, "paper-literal"))
    np.testing.assert_array_equal(cc.values,
                                  sc.smooth_representation(f, sc.KernelSpec("box-central", 16 * dt)).values)


def test_smoothing_grid_errors():
    f = sc.SampledPath(0.0, 0.01, np.arange(101, dtype=float))
    with pytest.raises(GridMismatchError):
        sc.smooth_representation(f, sc.KernelSpec("box-central", 0.0153))
    with pytest.raises(ParameterError):
        sc.smooth_representation(f, sc.KernelSpec("box-central", 0.6))
    with pytest.raises(ParameterError):
        sc.KernelSpec("parabolic", 0.1)


# ---------------------------------------------------------------------------
# principal paths
# ---------------------------------------------------------------------------

def test_principal_bernoulli_line():
    X = sc.gen_principal_schrodinger(1.0, c=0.0, sign=+1, eps=1.0,
                                     perturbation_amplitude=0.0, dt=0.125, length=9)
    np.testing.assert_allclose(X.values, X.times - 0.5, atol=1e-15)


def test_principal_is_line_without_perturbation():
    X = sc.gen_principal_schrodinger(4.0, c=0.3, sign=-1, eps=0.25,
                                     perturbation_amplitude=0.0, dt=2.0 ** -6, length=65)
    slope = np.diff(X.values) / X.dt
    np.testing.assert_allclose(slope, -2.0, atol=1e-10)


def test_principal_eps_difference_is_constant():
    eps = 2.0 ** -5
    X = sc.gen_principal_schrodinger(2.25, c=0.1, sign=+1, eps=eps,
                                     perturbation_amplitude=0.4, dt=2.0 ** -10, length=2 ** 10 + 1)
    d_fwd = sc.quantum_diff(X, eps, "+")
    np.testing.assert_allclose(d_fwd.values, 1.5, atol=1e-12)
    d_bwd = sc.quantum_diff(X, eps, "-")
    _, _, a, b = sc.overlap(d_fwd, d_bwd)
    np.testing.assert_allclose(a, b, atol=1e-12)


def test_principal_grid_mismatch():
    with pytest.raises(GridMismatchError):
        sc.gen_principal_schrodinger(1.0, 0.0, 1, eps=0.03, perturbation_amplitude=0.0,
                                     dt=0.02, length=100)


# ---------------------------------------------------------------------------
# path mechanics and CSV round trips
# ---------------------------------------------------------------------------

def test_path_invariants():
    with pytest.raises(ParameterError):
        sc.SampledPath(0.0, 0.1, np.array([]))
    with pytest.raises(ParameterError):
        sc.SampledPath(0.0, -0.1, np.array([1.0]))
    with pytest.raises(ParameterError):
        sc.SampledPath(0.0, 0.1, np.array([1.0, np.inf]))
    p = sc.SampledPath(0.0, 0.1, np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        p.values[0] = 5.0  # samples are read-only


def test_overlap_and_arithmetic():
    a = sc.SampledPath(0.0, 0.5, np.array([0.0, 1.0, 2.0, 3.0]))
    b = sc.SampledPath(1.0, 0.5, np.array([10.0, 20.0, 30.0]))
    t0, dt, va, vb = sc.overlap(a, b)
    assert t0 == 1.0 and dt == 0.5
    np.testing.assert_array_equal(va, [2.0, 3.0])
    np.testing.assert_array_equal(vb, [10.0, 20.0])
    s = a + b
    assert s.t0 == 1.0 and len(s) == 2
    np.testing.assert_array_equal(s.values, [12.0, 23.0])
    p = (2.0 * a) * b
    np.testing.assert_array_equal(p.values, [40.0, 120.0])


def test_overlap_errors():
    a = sc.SampledPath(0.0, 0.5, np.array([0.0, 1.0]))
    with pytest.raises(GridMismatchError):
        sc.overlap(a, sc.SampledPath(0.0, 0.25, np.array([0.0, 1.0])))
    with pytest.raises(GridMismatchError):
        sc.overlap(a, sc.SampledPath(0.13, 0.5, np.array([0.0, 1.0])))
    with pytest.raises(GridMismatchError):
        sc.overlap(a, sc.SampledPath(5.0, 0.5, np.array([0.0, 1.0])))


def test_sampled_csv_round_trip(tmp_path, takagi_12):
    f = sc.gen_takagi(0.5, dt=2.0 ** -8, length=2 ** 8 + 1)
    path = tmp_path / "f.csv"
    f.write_csv(path)
    g = sc.SampledPath.read_csv(path)
    assert g.t0 == f.t0 and g.dt == f.dt
    np.testing.assert_array_equal(g.values, f.values)
    # rewriting what was read reproduces the file byte for byte
    g.write_csv(tmp_path / "g.csv")
    assert (tmp_path / "g.csv").read_bytes() == path.read_bytes()


def test_complex_csv_round_trip(tmp_path):
    f = sc.gen_takagi(0.5, dt=2.0 ** -8, length=2 ** 8 + 1)
    c = sc.scale_derivative(f, 2.0 ** -4)
    path = tmp_path / "c.csv"
    c.write_csv(path)
    c2 = sc.ComplexPath.read_csv(path)
    np.testing.assert_array_equal(c2.values, c.values)
    assert c2.t0 == c.t0


def test_csv_header_validation():
    with pytest.raises(ParameterError):
        sc.SampledPath.from_csv_text("a,b\n1,2\n")
