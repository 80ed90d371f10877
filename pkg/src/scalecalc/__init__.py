"""Numerical and symbolic toolkit for scale calculus on sampled
non-differentiable functions, and the scale-quantization route from the
Newtonian equation of dynamics to Schrodinger-type residuals."""

from .errors import (
    ContractionError,
    FitError,
    GridMismatchError,
    NodeError,
    ParameterError,
    ScaleCalcError,
    SingularityError,
)
from .paths import (
    AffineSystem,
    ComplexPath,
    KernelSpec,
    SampledPath,
    backward_mean,
    central_mean,
    forward_mean,
    gen_affine_ifs,
    gen_principal_schrodinger,
    gen_takagi,
    overlap,
    smooth_representation,
    takagi_terms,
    tent,
)
from .scale_ops import (
    INFINITE,
    MinimalResolution,
    QuantumRepresentation,
    holder_norm_estimate,
    minimal_resolution,
    nondiff_defect,
    quantum_diff,
    quantum_representation,
    scale_derivative,
    translate,
)
from .scale_laws import (
    LengthEnvelopes,
    ScaleLawFit,
    WeakScaleLaws,
    box_counting_dimension,
    default_box_sizes,
    default_eps_grid,
    fit_holder_exponent,
    graph_length,
    scale_law_envelopes,
    scale_law_ode,
    weak_scale_exponents,
)
from .expansion import (
    SmoothField,
    a_coeffs,
    evaluate_along,
    expansion_comparison_csv,
    ito_expand,
    monomial_field,
)
from .algebra import (
    IDENTITY,
    EpsPoly,
    TensorSeries,
    Word,
    WordSeries,
    all_words,
    check_commuting_diagram,
    coproduct,
    counit,
    counit_contract,
    coproduct_on_leg,
    eval_series,
    eval_word,
    swap,
)
from .fractional import (
    CONVERGED,
    DIVERGENT,
    OSCILLATORY,
    ComplexFracEstimate,
    FracEstimate,
    SpectrumScan,
    classify_quotient_tail,
    complex_local_frac,
    local_frac_deriv,
    spectrum_scan,
)
from .quantize import (
    ActionWave,
    ChordScaling,
    ClassicalLagrangian,
    ComplexGrid,
    ConditionReport,
    NewtonEquation,
    QuantizedLagrangian,
    QuantizePipeline,
    ScaleNewtonEquation,
    WaveField,
    action_and_wave,
    apply_gauge,
    classical_schrodinger_residual,
    complex_velocity,
    el_residual,
    euler_lagrange,
    gse_residual,
    heisenberg_scaling_check,
    nngse_residual,
    phase_gauge_solve,
    quantize_equation,
    quantize_lagrangian,
    scale_euler_lagrange,
    schrodinger_condition_check,
)
from .integrate import rk4, solve_linear_second_order

__version__ = "0.1.0"
