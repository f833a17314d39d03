"""Convergence of quaternionic B-splines to modulated Gaussians as Sc(q) grows.

Conventions used throughout:

* ``int e^{-q xi^2} e^{i t xi} dxi = sqrt(pi) q^{-1/2} e^{-t^2/(4q)}`` for
  ``Sc q > 0``.  The constant is ``sqrt(pi)``: for real ``q = a`` this is the
  ordinary Gaussian integral ``sqrt(pi/a) e^{-t^2/4a}``.
* With the modulation ``e^{-i alpha q xi}`` the shift of the contour produces
  ``e^{+alpha t/2}``: the full result is
  ``sqrt(pi) q^{-1/2} e^{-q alpha^2/4} e^{alpha t/2} e^{-t^2/(4q)}``.
* The Gaussian approximant of ``B_q^(xi/sqrt a)`` is
  ``A_q(xi/sqrt a) = exp(q (-i xi/(2 sqrt a) - xi^2/(24 a)))``.

Both closed forms are checked against direct quadrature in
:func:`gaussian_ft_oracle` and :func:`modulated_gaussian_ft_oracle`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from .errors import DomainError, NonMonotoneWarning, PreconditionError
from .fourier import bspline_hat_array, bspline_hat_modulus
from .quaternion import (
    Biquaternion,
    Quaternion,
    as_quaternion,
    pow_from_log_array,
    qabs_array,
    qmul_array,
    quat_exp,
)

SQRT_PI = math.sqrt(math.pi)


# --------------------------------------------------------------------------
# square roots and Gaussian Fourier integrals


@dataclass(frozen=True)
class QuatSqrt:
    q: Quaternion
    root: Quaternion


def quat_sqrt(q) -> Quaternion:
    """Principal root ``(q + |q|) / (sqrt 2 sqrt(Sc q + |q|))``.

    Undefined on the negative real axis, where ``Sc q + |q| = 0``.
    """
    q = as_quaternion(q)
    r = abs(q)
    if r == 0.0:
        return Quaternion(0.0)
    s = q.a + r
    if s <= 0.0 or (q.vnorm == 0.0 and q.a < 0):
        raise DomainError("square root of a negative real is not defined here")
    if q.vnorm == 0.0:
        return Quaternion(math.sqrt(q.a))
    return (q + r) / (math.sqrt(2.0) * math.sqrt(s))


def quat_sqrt_value(q) -> QuatSqrt:
    q = as_quaternion(q)
    return QuatSqrt(q, quat_sqrt(q))


def _check_positive(q: Quaternion):
    if not q.a > 0:
        raise PreconditionError("Gaussian integrals need Sc(q) > 0")


def gaussian_ft_quat(q, t: float) -> Quaternion:
    """``int e^{-q xi^2} e^{i t xi} dxi = sqrt(pi) (sqrt q)^{-1} exp(-t^2 q^{-1} / 4)``."""
    q = as_quaternion(q)
    _check_positive(q)
    root_inv = quat_sqrt(q).inverse()
    return SQRT_PI * root_inv * quat_exp(-0.25 * t * t * q.inverse())


def modulated_gaussian_ft(q, alpha: float, t: float) -> Quaternion:
    """``int e^{-q xi^2} e^{-i alpha q xi} e^{i t xi} dxi``.

    Equals ``sqrt(pi) q^{-1/2} e^{-q alpha^2/4} e^{alpha t/2} e^{-t^2/(4q)}``;
    all factors commute.
    """
    q = as_quaternion(q)
    _check_positive(q)
    return (gaussian_ft_quat(q, t) * quat_exp(-0.25 * alpha * alpha * q)
            * math.exp(0.5 * alpha * t))


def _oracle_range(q: Quaternion, alpha: float) -> float:
    base = max(10.0, 8.0 / math.sqrt(q.a))
    return base + abs(alpha) * q.vnorm / q.a


def modulated_gaussian_ft_oracle(q, alpha: float, t: float) -> Quaternion:
    """Adaptive Gauss-Kronrod evaluation of :func:`modulated_gaussian_ft`.

    ``e^{-q xi^2} = e^{-a xi^2} (cos(|v| xi^2) - u sin(|v| xi^2))`` and
    ``e^{-i alpha q xi} = e^{-i alpha a xi} (cosh(alpha |v| xi) - i u sinh(alpha |v| xi))``;
    multiplying the two ``span{1, u}`` factors leaves a scalar and a
    ``u``-coefficient, each a complex integral over ``[-L, L]`` split into
    real and imaginary parts.
    """
    q = as_quaternion(q)
    _check_positive(q)
    a, n = q.a, q.vnorm
    L = _oracle_range(q, alpha)

    def parts(xi):
        c1, s1 = math.cos(n * xi * xi), -math.sin(n * xi * xi)
        c2, s2 = math.cosh(alpha * n * xi), -1j * math.sinh(alpha * n * xi)
        env = math.exp(-a * xi * xi) * complex(math.cos(xi * (t - alpha * a)),
                                               math.sin(xi * (t - alpha * a)))
        return env * (c1 * c2 - s1 * s2), env * (c1 * s2 + s1 * c2)

    opts = dict(epsabs=1e-13, epsrel=1e-12, limit=2000)
    vals = []
    with warnings.catch_warnings():
        # the requested tolerance is near machine precision; quad may report
        # roundoff once it is reached
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for idx in (0, 1):
            re = integrate.quad(lambda x: parts(x)[idx].real, -L, L, **opts)[0]
            im = integrate.quad(lambda x: parts(x)[idx].imag, -L, L, **opts)[0]
            vals.append(complex(re, im))
    scalar, coef = vals
    u = q.unit_vector
    if u is None:
        return Quaternion(scalar.real)
    return Quaternion(scalar.real, coef.real * u[0], coef.real * u[1], coef.real * u[2])


def gaussian_ft_oracle(q, t: float) -> Quaternion:
    """Quadrature evaluation of :func:`gaussian_ft_quat`."""
    return modulated_gaussian_ft_oracle(q, 0.0, t)


# --------------------------------------------------------------------------
# the sinc envelope


def sinc_envelope_rhs(xi):
    """``e^{-xi^2} + [|xi/2| > 1] 2/(pi xi)^2``; independent of ``a``."""
    xi = np.asarray(xi, dtype=float)
    outside = np.abs(0.5 * xi) > 1.0
    safe = np.where(outside, xi, 1.0)
    return np.exp(-xi * xi) + np.where(outside, 2.0 / (math.pi * safe) ** 2, 0.0)


def sinc_envelope_check(a: float, xi_grid) -> float:
    """``max(|sinc(pi xi / sqrt a)|^a - rhs(xi))`` with the normalised sinc.

    ``sinc(x) = sin(pi x)/(pi x)`` (``numpy.sinc``).  With that convention the
    envelope holds for all ``a >= 2``; with the unnormalised ``sin(x)/x`` it
    fails near ``|xi| = 2`` when ``a = 2``.
    """
    if a < 2:
        raise PreconditionError("the sinc envelope is stated for a >= 2")
    xi = np.asarray(xi_grid, dtype=float)
    lhs = np.abs(np.sinc(math.pi * xi / math.sqrt(a))) ** a
    return float(np.max(lhs - sinc_envelope_rhs(xi)))


def transform_envelope(v, xi) -> np.ndarray:
    """A bound for ``|B_q^(xi/sqrt a)|`` valid for every ``a >= 2``.

    ``|B_q^(x)| = |sinc(x/2)|^a sqrt(cosh(2|v| arg Xi(x)))`` with
    ``|arg Xi| < pi``, and ``sinc(x/2)`` (unnormalised) is the normalised sinc
    at ``pi xi'/sqrt a`` with ``xi' = xi/(2 pi^2)``; the sinc envelope at
    ``xi'`` then gives
    ``sqrt(cosh(2 pi |v|)) (e^{-(xi/2pi^2)^2} + [|xi| > 4 pi^2] 8 pi^2/xi^2)``.
    """
    v = as_quaternion(v)
    xi = np.asarray(xi, dtype=float)
    return math.sqrt(math.cosh(2.0 * math.pi * v.vnorm)) * sinc_envelope_rhs(xi / (2.0 * math.pi ** 2))


def transform_envelope_stated(v, xi) -> np.ndarray:
    """The tighter-looking variant ``sqrt(cosh(pi|v|)) (e^{-(xi/2pi)^2} + [|xi| > 4pi] 8/xi^2)``.

    Kept for comparison: it is violated, e.g. for ``a = 2`` near ``xi = 12.5``.
    """
    v = as_quaternion(v)
    xi = np.asarray(xi, dtype=float)
    outside = np.abs(xi / (4.0 * math.pi)) > 1.0
    safe = np.where(outside, xi, 1.0)
    tail = np.where(outside, 2.0 / (0.5 * safe) ** 2, 0.0)
    return math.sqrt(math.cosh(math.pi * v.vnorm)) * (np.exp(-(xi / (2.0 * math.pi)) ** 2) + tail)


def envelope_violation(v, a: float, xi, stated: bool = False) -> float:
    """``max(|B_q^(xi/sqrt a)| - envelope(xi))`` for ``q = a + v``."""
    v = as_quaternion(v)
    q = Quaternion(a, v.v1, v.v2, v.v3)
    xi = np.asarray(xi, dtype=float)
    lhs = bspline_hat_modulus(q, xi / math.sqrt(a))
    env = transform_envelope_stated(v, xi) if stated else transform_envelope(v, xi)
    return float(np.max(lhs - env))


# --------------------------------------------------------------------------
# the Gaussian approximant


def _approx_log(a: float, xi):
    xi = np.asarray(xi, dtype=float)
    return -0.5j * xi / math.sqrt(a) - xi * xi / (24.0 * a)


@dataclass(frozen=True)
class GaussianApproximant:
    """``A_q(xi/sqrt a) = e^{-i sqrt(a) xi/2} e^{-xi^2/24} e^{-i xi v/(2 sqrt a)} e^{-xi^2 v/(24 a)}``."""

    order: Quaternion
    a: float
    approx_hat: Callable

    @classmethod
    def build(cls, v, a: float) -> "GaussianApproximant":
        v = as_quaternion(v)
        q = Quaternion(a, v.v1, v.v2, v.v3)

        def approx_hat(xi):
            return pow_from_log_array(_approx_log(a, xi), q)

        return cls(q, float(a), approx_hat)

    def envelope(self, xi) -> np.ndarray:
        """``e^{3|v|^2} e^{-(|xi|/sqrt 24 - sqrt 3 |v|)^2}`` (valid for ``a >= 2``)."""
        n = self.order.vnorm
        xi = np.asarray(xi, dtype=float)
        return math.exp(3.0 * n * n) * np.exp(-(np.abs(xi) / math.sqrt(24.0) - math.sqrt(3.0) * n) ** 2)


def pointwise_gaussian_ratio(v, a: float, xi: float) -> Biquaternion:
    """``B_q^(xi/sqrt a) A_q(xi/sqrt a)^{-1}`` for ``q = a + v``.

    ``A_q`` is an exponential ``e^{qL}``, so its inverse is ``e^{-qL}``.
    The deviation from 1 is ``O(|xi|^4 |q| / a^2)``.
    """
    if a < 2:
        raise PreconditionError("the Gaussian ratio is studied for a >= 2")
    v = as_quaternion(v)
    q = Quaternion(a, v.v1, v.v2, v.v3)
    x = np.array([float(xi)])
    hat = bspline_hat_array(q, x / math.sqrt(a))
    inv = pow_from_log_array(-_approx_log(a, x), q)
    return Biquaternion.from_array(qmul_array(hat, inv)[0])


def ratio_deviation(v, a: float, xi: float) -> float:
    return abs(pointwise_gaussian_ratio(v, a, xi) - 1.0)


def log_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of ``log y`` against ``log x``."""
    slope, _ = np.polyfit(np.log(np.asarray(xs, float)), np.log(np.asarray(ys, float)), 1)
    return float(slope)


# --------------------------------------------------------------------------
# L^p convergence


def lp_range(v) -> float:
    """``R = 6 sqrt(24) (1 + |v|)``."""
    return 6.0 * math.sqrt(24.0) * (1.0 + as_quaternion(v).vnorm)


def _difference_modulus(q: Quaternion, a: float, xi):
    hat = bspline_hat_array(q, np.asarray(xi, dtype=float) / math.sqrt(a))
    approx = pow_from_log_array(_approx_log(a, xi), q)
    return qabs_array(hat - approx)


def lp_error(v, a: float, p: float, sup_points: int = 20001) -> float:
    """``|| B_q^(./sqrt a) - A_q(./sqrt a) ||_p`` over ``[-R, R]``.

    The integrand is even in ``xi``; for finite ``p`` the half-line integral is
    computed adaptively with breakpoints at the lattice zeros
    ``2 pi k sqrt a``; ``p = inf`` takes the maximum over a uniform grid.
    """
    v = as_quaternion(v)
    q = Quaternion(a, v.v1, v.v2, v.v3)
    R = lp_range(v)
    if math.isinf(p):
        xi = np.linspace(-R, R, sup_points)
        return float(np.max(_difference_modulus(q, a, xi)))
    step = 2.0 * math.pi * math.sqrt(a)
    breaks = [step * k for k in range(1, int(R / step) + 1) if step * k < R]
    val, _ = integrate.quad(lambda x: float(_difference_modulus(q, a, np.array([x]))[0]) ** p,
                            0.0, R, points=breaks or None, limit=500, epsabs=1e-14, epsrel=1e-10)
    return (2.0 * val) ** (1.0 / p)


def lp_convergence_trend(v, a_list: Sequence[float], p: float, threshold: float | None = None) -> list:
    """L^p errors for each ``a``; warns if the sequence is not strictly decreasing.

    If ``threshold`` is given, a warning is also issued when the last value is
    not below it.
    """
    errs = [lp_error(v, a, p) for a in a_list]
    if any(e2 >= e1 for e1, e2 in zip(errs, errs[1:])):
        warnings.warn(f"L^{p} errors not strictly decreasing: {errs}", NonMonotoneWarning, stacklevel=2)
    if threshold is not None and errs and not errs[-1] < threshold:
        warnings.warn(f"final L^{p} error {errs[-1]:.3g} not below {threshold:g}",
                      NonMonotoneWarning, stacklevel=2)
    return errs
