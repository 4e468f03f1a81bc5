"""Transforms of super-Gaussian kernels: values, zeros, nodal lines, orbits."""

from .coefficients import (
    ACoeffSample,
    a_coeff,
    a_coeff_direct,
    a_coeff_sweep,
    l2_series,
    monotonicity_profile,
)
from .fieldlines import (
    AsymptoteCurve,
    FieldLine,
    GridField,
    asymptote_curves,
    crossing_gradient,
    extract_field_lines,
    intersection_audit,
    refine_field_line,
    sample_field_grid,
)
from .orbits import OrbitTrace, angular_momentum, angular_momentum_checks, orbit_trace
from .products import ProductSpec, TTable, leading_constant, partial_product, product_residual, t_table
from .transform import (
    EvalResult,
    PlanePoint,
    QuadratureSpec,
    closed_form_gaussian,
    eval_derivative,
    eval_transform,
    magnitude_scale,
    moment_scale,
    peak_exponent,
    truncation_radius,
)
from .zeros import (
    SimplicityReport,
    ZeroRecord,
    extended_zero_pool,
    ode_residual,
    scan_real_zeros,
    verify_simplicity,
)

__version__ = "0.1.0"

__all__ = [
    "ACoeffSample",
    "AsymptoteCurve",
    "EvalResult",
    "FieldLine",
    "GridField",
    "OrbitTrace",
    "PlanePoint",
    "ProductSpec",
    "QuadratureSpec",
    "SimplicityReport",
    "TTable",
    "ZeroRecord",
    "a_coeff",
    "a_coeff_direct",
    "a_coeff_sweep",
    "angular_momentum",
    "angular_momentum_checks",
    "asymptote_curves",
    "closed_form_gaussian",
    "crossing_gradient",
    "eval_derivative",
    "eval_transform",
    "extended_zero_pool",
    "extract_field_lines",
    "intersection_audit",
    "l2_series",
    "leading_constant",
    "magnitude_scale",
    "moment_scale",
    "monotonicity_profile",
    "ode_residual",
    "orbit_trace",
    "partial_product",
    "peak_exponent",
    "product_residual",
    "refine_field_line",
    "sample_field_grid",
    "scan_real_zeros",
    "t_table",
    "truncation_radius",
    "verify_simplicity",
    "__version__",
]
