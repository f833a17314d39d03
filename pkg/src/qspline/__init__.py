"""Quaternionic B-splines.

``B_q`` with ``q = a + v`` a real quaternion, ``Sc q = a > 1``: the transform
is ``Xi(xi)^q`` with ``Xi(xi) = (1 - e^{-i xi})/(i xi)`` and the time-domain
form is the finite sum ``Gamma(q)^-1 sum_k (-1)^k binom(q, k) (t - k)_+^(q-1)``.
"""

from .errors import (
    ConditioningWarning,
    DomainError,
    GammaPoleError,
    NonMonotoneWarning,
    PreconditionError,
    QSplineError,
    SlowConvergenceWarning,
    TruncationError,
)
from .fourier import (
    MaskCoefficients,
    NormEstimates,
    autocorrelation_closed_form,
    autocorrelation_symbol,
    bspline_hat,
    bspline_hat_array,
    bspline_hat_modulus,
    l2_l1_norm_estimates,
    mask_coefficients,
    mask_h0,
    mask_zero_slope,
    riesz_bounds,
    semigroup_defect,
    xi_symbol,
)
from .gamma import (
    GammaMethod,
    GammaValue,
    PochhammerTable,
    binom_quat,
    binomial_series,
    binomial_sum_unit,
    gamma,
    gamma_gauss_limit,
    gamma_quadrature,
    gamma_quat,
    pochhammer,
)
from .gaussian import (
    GaussianApproximant,
    QuatSqrt,
    gaussian_ft_quat,
    lp_convergence_trend,
    modulated_gaussian_ft,
    pointwise_gaussian_ratio,
    quat_sqrt,
    sinc_envelope_check,
)
from .quadrature import fourier_inversion
from .quaternion import (
    Biquaternion,
    Quaternion,
    SplineOrder,
    complex_pow_quat,
    format_order,
    format_quaternion,
    parse_quaternion,
    quat_exp,
    quat_log,
    quat_mul,
    real_pow_quat,
    rotate_vector_part,
    rotation_matrix,
    semigroup_compatible,
)
from .time_domain import (
    EvalConfig,
    SampledField,
    backwards_difference,
    bspline_time,
    bspline_time_grid,
    cardinal_bspline,
    recursion_check,
    refinement_residual,
)

__version__ = "0.1.0"
