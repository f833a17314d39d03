import cmath
import math

import numpy as np
import pytest

from qspline import (
    Quaternion,
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
from qspline.errors import TruncationError
from qspline.fourier import (
    commutator_defect,
    lattice_zero_mask,
    mask_h0_array,
    mask_ratio_array,
    mask_sup,
    riesz_grid,
    riesz_sandwich,
    xi_array,
    xi_direct,
)
from qspline.quaternion import qabs_array

from conftest import assert_quat_close, random_quaternion

# Xi(xi)^q as a biquaternion power series exp(q log Xi) at 50 digits (mpmath).
MPMATH_HAT = [
    (Quaternion(2, 1), 1.0,
     [0.54272052715858703 - 0.88248538437321876j, -0.42631698300407753 - 0.22198009861672096j, 0, 0]),
    (Quaternion(2.5, 0.2, -0.3, 0.4), 7.0,
     [0.00020374411277115285 - 0.0011892415714096321j, -0.00076892782198838721 + 0.0008414143632866366j,
      0.0011533917329825808 - 0.0012621215449299549j, -0.0015378556439767744 + 0.0016828287265732732j]),
    (Quaternion(3, -1, 1, 2), -3.0,
     [4.10120038281073 - 4.0933871437378833j, -1.670048012273181 - 1.6771594634397265j,
      1.670048012273181 + 1.6771594634397265j, 3.340096024546362 + 3.354318926879453j]),
]


def test_xi_special_values():
    assert xi_symbol(0.0).value == 1
    assert xi_symbol(2 * math.pi).value == 0 and xi_symbol(2 * math.pi).log_value is None
    assert abs(xi_symbol(math.pi).value - (-2j / math.pi)) < 1e-15


def test_xi_closed_form_equivalence():
    xi = np.concatenate([np.geomspace(1e-3, 1e3, 5000), -np.geomspace(1e-3, 1e3, 5000)])
    direct = np.array([xi_direct(x) for x in xi])
    assert np.max(np.abs(direct - xi_array(xi))) < 1e-13
    sinc_form = np.exp(-0.5j * xi) * np.sin(xi / 2) / (xi / 2)
    assert np.max(np.abs(sinc_form - xi_array(xi))) < 1e-14


def test_xi_log_is_principal():
    for x in (0.3, 2.0, 5.0, 9.0, -4.0, 40.0):
        val = xi_symbol(x)
        assert abs(cmath.exp(val.log_value) - val.value) < 1e-15
        assert -math.pi < val.log_value.imag <= math.pi


def test_xi_graph_avoids_negative_axis():
    xi = np.linspace(-200, 200, 400001)
    xi = xi[~lattice_zero_mask(xi)]
    val = xi_array(xi)
    assert not np.any((val.real < 0) & (val.imag == 0))


@pytest.mark.parametrize("q, xi, expected", MPMATH_HAT)
def test_bspline_hat_matches_mpmath(q, xi, expected):
    assert_quat_close(bspline_hat(q, xi).to_array(), np.array(expected), tol=1e-13)


def test_bspline_hat_special_values():
    q = Quaternion(2.5, 0.3, 0, -0.7)
    assert bspline_hat(q, 0.0).to_array().tolist() == [1, 0, 0, 0]
    k = np.array([k for k in range(-20, 21) if k != 0], dtype=float)
    assert np.all(bspline_hat_array(q, 2 * np.pi * k) == 0)
    assert abs(bspline_hat(Quaternion(2), math.pi).c0 - (-4 / math.pi ** 2)) < 1e-15


def test_modulus_formula_matches_components(rng):
    q = Quaternion(1.7, 0.4, -0.9, 0.3)
    xi = rng.uniform(-50, 50, 1000)
    assert np.allclose(bspline_hat_modulus(q, xi), qabs_array(bspline_hat_array(q, xi)), rtol=1e-12)


def test_modulus_sandwich(rng):
    """|B^_a| <= |B^_q| <= |B^_a| sqrt(cosh(2 pi |v|)), since |arg Xi| < pi."""
    for _ in range(20):
        q = random_quaternion(rng, 0.6, 4)
        xi = rng.uniform(-60, 60, 1000)
        base = bspline_hat_modulus(Quaternion(q.a), xi)
        mod = bspline_hat_modulus(q, xi)
        assert np.all(base <= mod * (1 + 1e-14))
        assert np.all(mod <= base * math.sqrt(math.cosh(2 * math.pi * q.vnorm)) * (1 + 1e-14))


def test_modulus_upper_factor_cosh_pi_v_is_exceeded():
    # near xi = 2 pi, arg Xi -> -pi and |B^_q| / |B^_a| -> sqrt(cosh(2 pi |v|))
    q = Quaternion(2, 1)
    xi = np.linspace(5.5, 6.2, 50)
    ratio = bspline_hat_modulus(q, xi) / bspline_hat_modulus(Quaternion(2), xi)
    assert np.max(ratio) > math.sqrt(math.cosh(math.pi))


def test_decay(rng):
    xi = np.geomspace(10, 1e4, 5000)
    for _ in range(5):
        q = random_quaternion(rng, 0.6, 5)
        scaled = bspline_hat_modulus(q, xi) * xi ** q.a
        assert np.max(scaled) <= 2 ** q.a * math.sqrt(math.cosh(2 * math.pi * q.vnorm))


def test_semigroup_dichotomy():
    xi = np.linspace(-40, 40, 512)
    assert semigroup_defect(Quaternion(1.5, 0.2, 0.4, 0), Quaternion(2, -0.1, -0.2, 0), xi) < 1e-10
    assert semigroup_defect(Quaternion(2, 1), Quaternion(2, 0, 1), xi) > 1e-4


def test_symbols_commute_for_parallel_orders():
    xi = np.linspace(0.01, 20, 500)
    q1, q2 = Quaternion(1.5, 0.2, 0.4, 0), Quaternion(2, -0.1, -0.2, 0)
    assert commutator_defect(q1, q2, xi) < 1e-12
    assert commutator_defect(Quaternion(1.5, 1), Quaternion(2, 0, 1), xi) > 1e-3


def test_mask_basics():
    q = Quaternion(3, 1)
    assert_quat_close(mask_h0(q, 0.0), np.array([1, 0, 0, 0]))
    assert np.all(qabs_array(mask_h0_array(q, np.array([math.pi, -math.pi, 3 * math.pi]))) == 0)
    assert_quat_close(mask_h0(q, 0.4), mask_h0(q, 0.4 + 2 * math.pi), tol=1e-12)
    xi = np.linspace(0.1, 3.0, 50)
    assert np.allclose(mask_h0_array(q, xi), mask_ratio_array(q, xi), atol=1e-12)
    assert mask_sup(Quaternion(2)) == pytest.approx(1.0)


def test_classical_mask():
    m = mask_coefficients(Quaternion(2))
    assert [h.a for h in m.h] == [0.25, 0.5, 0.25]
    assert m.truncation_error == 0.0


def test_mask_coefficients_fractional():
    q = Quaternion(3, 1)
    m = mask_coefficients(q, 1e-10)
    assert abs(m.total() - Quaternion(1)) < 1e-8
    assert 0 < m.truncation_error <= 1e-10
    assert len(m) > 10


def test_mask_zero_order():
    for q in (Quaternion(3, 1), Quaternion(2.5, 0.3, -0.4, 0.2), Quaternion(2)):
        assert abs(mask_zero_slope(q) - 2.0) <= 0.01


def test_riesz_classical_hat():
    lo, hi = riesz_bounds(Quaternion(2))
    assert lo == pytest.approx(1 / 3, abs=1e-8)
    assert hi == pytest.approx(1.0, abs=1e-12)
    xi = np.linspace(0.1, 6.0, 100)
    assert np.allclose(autocorrelation_symbol(Quaternion(2), xi, 4096), (2 + np.cos(xi)) / 3, atol=1e-7)


def test_autocorrelation_closed_form():
    xi = np.linspace(0.05, 2 * np.pi - 0.05, 100)
    for q in (Quaternion(2), Quaternion(3, 1, -1), Quaternion(2.5, 0.3, -0.4, 0.2)):
        s = autocorrelation_symbol(q, xi, 4096)
        assert np.allclose(s, autocorrelation_closed_form(q, xi), rtol=1e-9)


def test_riesz_positive_lower_bound():
    lo, hi = riesz_bounds(Quaternion(3, 1, -1))
    assert 0 < lo <= hi < math.inf


def test_riesz_tail_error():
    with pytest.raises(TruncationError):
        riesz_bounds(Quaternion(1.2), K=64)


def test_riesz_sandwich_moderate_orders():
    for q in (Quaternion(3, 1, -1), Quaternion(2, 1)):
        s = riesz_sandwich(q)
        assert s.violations == 0 and s.lower > 0


def test_riesz_sandwich_fails_for_large_vector_part():
    s = riesz_sandwich(Quaternion(1.2, 2), riesz_grid(512))
    assert s.violations > 0
    assert s.upper > s.upper_a * s.factor


def test_norms_classical():
    est = l2_l1_norm_estimates(Quaternion(2))
    assert est.l2_sq == pytest.approx(4 * math.pi / 3, rel=1e-10)
    assert est.l1 == pytest.approx(2 * math.pi, rel=1e-10)
    assert l2_l1_norm_estimates(Quaternion(0.8)).l1 == math.inf


def test_norm_bounds_moderate_orders():
    for q in (Quaternion(2, 1), Quaternion(3, 1, -1), Quaternion(1.5, 0, 0.5, 0.5)):
        est = l2_l1_norm_estimates(q)
        assert est.l2_sq <= est.l2_bound
        assert est.l1 <= est.l1_bound


def test_norms_against_direct_quadrature():
    from scipy import integrate

    q = Quaternion(2.5, 0.5)
    f = lambda x: float(bspline_hat_modulus(q, np.array([x]))[0]) ** 2
    pieces = [integrate.quad(f, 2 * np.pi * k, 2 * np.pi * (k + 1), epsrel=1e-12)[0] for k in range(400)]
    direct = 2 * math.fsum(pieces)
    assert l2_l1_norm_estimates(q).l2_sq == pytest.approx(direct, rel=1e-7)


def test_norm_bound_fails_for_large_vector_part():
    est = l2_l1_norm_estimates(Quaternion(1.2, 2))
    assert est.l2_sq > est.l2_bound
