import math

import numpy as np
import pytest

from qspline import (
    GammaMethod,
    PochhammerTable,
    Quaternion,
    binom_quat,
    binomial_series,
    binomial_sum_unit,
    complex_pow_quat,
    gamma,
    gamma_gauss_limit,
    gamma_quadrature,
    gamma_quat,
    pochhammer,
    real_pow_quat,
    rotate_vector_part,
)
from qspline.errors import GammaPoleError, PreconditionError, SlowConvergenceWarning
from qspline.gamma import (
    binomial_table,
    complex_gamma,
    gamma_modulus_bound,
    pochhammer_complex,
    pochhammer_modulus_ratio,
)
from qspline.quaternion import random_rotation

from conftest import assert_quat_close, random_quaternion

# Gamma(a + |v| u) = Re G + u Im G with G = Gamma(a + i|v|), evaluated with
# mpmath at 50 digits and frozen here.
MPMATH_GAMMA = [
    (Quaternion(2, 1), Quaternion(0.65296549642016673, 0.34306583981654536, 0, 0)),
    (Quaternion(0.7, 0.3, -0.2, 0.5),
     Quaternion(0.70839227925600222, -0.22154458323744764, 0.14769638882496509, -0.36924097206241273)),
    (Quaternion(3.5, 0, -1.25, 0.4),
     Quaternion(0.21209833142914372, 0.0, -2.3923626233956533, 0.76555603948660907)),
]


@pytest.mark.parametrize("q, expected", MPMATH_GAMMA)
@pytest.mark.parametrize("method", ["complexified", "quadrature"])
def test_gamma_matches_mpmath(q, expected, method):
    assert_quat_close(gamma(q, method).value, expected, tol=1e-13)


@pytest.mark.parametrize("n", [1, 2, 5, 10])
def test_gamma_integers(n):
    assert gamma_quat(Quaternion(n)).value == Quaternion(math.factorial(n - 1))


def test_complex_gamma_reflection_and_poles():
    assert math.isclose(complex_gamma(0.5).real, math.sqrt(math.pi), rel_tol=1e-14)
    assert abs(complex_gamma(-0.5) - (-2 * math.sqrt(math.pi))) < 1e-13
    for z in (0, -1, -2, -7):
        with pytest.raises(GammaPoleError):
            complex_gamma(z)
    with pytest.raises(GammaPoleError):
        gamma_quat(Quaternion(-2))


def test_functional_equation(rng):
    for _ in range(1000):
        q = random_quaternion(rng, 0.1, 20, 2)
        lhs = gamma_quat(q + 1.0).value
        rhs = q * gamma_quat(q).value
        assert abs(lhs - rhs) <= 1e-10 * abs(rhs)


def test_modulus_bound(rng):
    for _ in range(500):
        q = random_quaternion(rng, 0.1, 20, 3)
        assert abs(gamma_quat(q).value) <= gamma_modulus_bound(q)


def test_rotation_covariance(rng):
    for _ in range(100):
        q, rot = random_quaternion(rng, 0.2, 8, 2), random_rotation(rng)
        lhs = gamma_quat(rotate_vector_part(q, rot)).value
        rhs = rotate_vector_part(gamma_quat(q).value, rot)
        assert abs(lhs - rhs) <= 1e-10 * abs(rhs)


def test_homogeneity(rng):
    for _ in range(200):
        q = random_quaternion(rng, 0.2, 10, 2)
        g = gamma_quat(q).value
        v, w = q.vector, g.vector
        scale = np.linalg.norm(v) * abs(g)
        assert np.max(np.abs(np.outer(v, w) - np.outer(w, v))) <= 1e-12 * scale


def test_gauss_limit_small_and_large_n_consistent():
    q = Quaternion(1.5, 0.5, 0, -0.5)
    exact = gamma_quat(q).value
    e170 = abs(gamma_gauss_limit(q, 170) - exact)
    e171 = abs(gamma_gauss_limit(q, 171) - exact)
    assert math.isclose(e170, e171, rel_tol=0.05)
    # error ~ |w (w + 1)| / (2n)
    w = complex(q.a, q.vnorm)
    for n in (10 ** 4, 10 ** 5):
        err = abs(gamma_gauss_limit(q, n) - exact) / abs(exact)
        assert 0.5 < err / (abs(w * (w + 1)) / (2 * n)) < 2.0


def test_gauss_limit_preconditions():
    with pytest.raises(PreconditionError):
        gamma_gauss_limit(Quaternion(-0.5, 1), 100)
    with pytest.raises(PreconditionError):
        gamma_gauss_limit(Quaternion(1), 0)


def test_quadrature_real_order():
    assert math.isclose(gamma_quadrature(Quaternion(4.5)).value.a, math.gamma(4.5), rel_tol=1e-12)
    with pytest.raises(PreconditionError):
        gamma_quadrature(Quaternion(-0.5, 1))


def test_method_dispatch():
    q = Quaternion(2, 1)
    assert gamma(q, GammaMethod.COMPLEXIFIED).method is GammaMethod.COMPLEXIFIED
    assert gamma(q, "gauss_limit", n=10 ** 7).method is GammaMethod.GAUSS_LIMIT
    assert abs(gamma(q, "gauss_limit", n=10 ** 7).value - gamma(q).value) < 1e-6


def test_pochhammer_paths(rng):
    for _ in range(200):
        q = random_quaternion(rng, 0.1, 5)
        table = PochhammerTable.build(q, 50)
        for j in (0, 1, 2, 7, 20, 50):
            ref = pochhammer_complex(q, j)
            assert abs(table[j] - ref) <= 1e-10 * abs(ref)
    assert pochhammer(Quaternion(3), 4) == Quaternion(0)


def test_pochhammer_asymptotics():
    ray = Quaternion(1.0, 0.4, -0.3, 0.2)
    devs = [abs(pochhammer_modulus_ratio(s * ray, 3) - 1.0) for s in (1e2, 1e3, 1e4)]
    for d, s in zip(devs, (1e2, 1e3, 1e4)):
        assert d * s < 5.0
    assert devs[0] > devs[1] > devs[2]


def test_binomials():
    q = Quaternion(2.5, 0.5, -0.5, 0)
    table = binomial_table(q, 30)
    for j in (0, 1, 5, 20, 21, 30):
        c = table[j]
        u = q.unit_vector
        b = binom_quat(q, j)
        assert_quat_close(b, Quaternion(c.real, *(c.imag * u)), tol=1e-12)
    assert binom_quat(Quaternion(4), 2) == Quaternion(6)
    assert binom_quat(Quaternion(4), 25) == Quaternion(0)
    assert PochhammerTable.build(Quaternion(5), 3).binomials()[3] == Quaternion(10)


def test_binomial_series_inside_disc():
    q = Quaternion(1.5, 0.3, 0.2, -0.1)
    z = 0.5 + 0.3j
    series = binomial_series(q, z, tol=1e-14)
    assert_quat_close(series, complex_pow_quat(1 + z, q), tol=1e-12)


def test_binomial_series_warns_on_circle_for_small_order():
    with pytest.warns(SlowConvergenceWarning):
        try:
            binomial_series(Quaternion(0.8, 0.1), -1.0, tol=1e-3, max_terms=2000)
        except Exception:
            pass


def test_binomial_sums_unit(rng):
    for _ in range(50):
        q = random_quaternion(rng, 0.5, 5)
        assert abs(binomial_sum_unit(q, 1) - real_pow_quat(2.0, q)) <= 1e-8 * abs(real_pow_quat(2.0, q))
        assert abs(binomial_sum_unit(q, -1)) <= 1e-8
