"""Fourier-domain symbols: Xi, the spline transform, the two-scale mask.

``Xi(xi) = (1 - exp(-i xi)) / (i xi) = exp(-i xi/2) sinc(xi/2)`` (unnormalised
sinc) is the transform of the unit box.  The quaternionic B-spline of order
``q`` has transform ``Xi(xi)^q`` with the principal branch of ``log Xi``.

``log Xi`` is never formed from ``Xi`` itself: with ``s = sinc(xi/2)``,
``log Xi = log|s| + i wrap(-xi/2 + pi [s < 0])``, which is exact up to the
rounding of ``xi/2`` and does not suffer from cancellation near the lattice
zeros ``2 pi k``.  The graph of Xi never crosses the negative real axis,
so the principal branch is continuous off the lattice.

A useful identity for moduli: with ``log z = L + i theta``,
``|z^q|^2 = |z|^(2a) cosh(2 |v| theta)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy import integrate, special

from .errors import PreconditionError, TruncationError
from .gamma import binomial_table, complex_array_to_quat, complex_to_quat, order_to_complex
from .quaternion import (
    Biquaternion,
    Quaternion,
    SplineOrder,
    complex_pow_quat_array,
    pow_from_log_array,
    qabs_array,
    qmul_array,
)

TWO_PI = 2.0 * math.pi
_EPS = np.finfo(float).eps
_TAYLOR_CUT = 1e-4  # on xi/2


def _wrap(x):
    """Principal angle in ``(-pi, pi]``."""
    return np.pi - np.mod(np.pi - x, TWO_PI)


def _sinc(x):
    """``sin(x)/x`` with a Taylor branch near 0 (array-valued)."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < _TAYLOR_CUT
    xs = np.where(small, 1.0, x)
    x2 = x * x
    return np.where(small, 1.0 - x2 / 6.0 + x2 * x2 / 120.0, np.sin(xs) / xs)


def lattice_zero_mask(xi, offset: float = 0.0):
    """True where ``xi`` is (to within rounding) ``offset + 2 pi k``, ``k != 0`` when offset is 0."""
    xi = np.asarray(xi, dtype=float)
    k = np.rint((xi - offset) / TWO_PI)
    hit = np.abs(xi - offset - TWO_PI * k) <= 4.0 * _EPS * np.maximum(np.abs(xi), 1.0)
    if offset == 0.0:
        hit &= k != 0
    return hit


def xi_log_array(xi):
    """``(log Xi(xi), zero_mask)`` for an array of frequencies.

    Entries flagged in ``zero_mask`` are lattice zeros; their log is set to 0
    and must not be used.
    """
    xi = np.asarray(xi, dtype=float)
    s = _sinc(0.5 * xi)
    zero = lattice_zero_mask(xi)
    s = np.where(zero, 1.0, s)
    theta = _wrap(-0.5 * xi + np.where(s < 0.0, np.pi, 0.0))
    return np.log(np.abs(s)) + 1j * theta, zero


def xi_array(xi):
    """Vectorised ``Xi(xi)``; exact 1 at 0 and exact 0 at the lattice zeros."""
    xi = np.asarray(xi, dtype=float)
    s = np.where(lattice_zero_mask(xi), 0.0, _sinc(0.5 * xi))
    return np.exp(-0.5j * xi) * s


@dataclass(frozen=True)
class XiValue:
    xi: float
    value: complex
    log_value: Optional[complex]


def xi_symbol(xi: float) -> XiValue:
    """``Xi(xi)`` with its principal log (``None`` at lattice zeros)."""
    xi = float(xi)
    logs, zero = xi_log_array(np.array([xi]))
    if zero[0]:
        return XiValue(xi, 0j, None)
    if xi == 0.0:
        return XiValue(0.0, 1 + 0j, 0j)
    s = float(_sinc(0.5 * xi))
    return XiValue(xi, cmath.exp(-0.5j * xi) * s, complex(logs[0]))


def xi_direct(xi: float) -> complex:
    """The defining quotient ``(1 - e^{-i xi})/(i xi)`` (no special cases)."""
    return (1.0 - cmath.exp(-1j * xi)) / (1j * xi)


# --------------------------------------------------------------------------
# spline transform


def bspline_hat_array(q, xi) -> np.ndarray:
    """``Xi(xi)^q`` on an array; returns complex ``(..., 4)`` components."""
    q = SplineOrder.coerce(q, 0.0).q
    logs, zero = xi_log_array(xi)
    out = pow_from_log_array(logs, q)
    out[zero] = 0.0
    return out


def bspline_hat(q, xi: float) -> Biquaternion:
    """``B_q^(xi) = Xi(xi)^q``: 1 at ``xi = 0``, exactly 0 at ``2 pi k``, ``k != 0``."""
    return Biquaternion.from_array(bspline_hat_array(q, np.array([float(xi)]))[0])


def bspline_hat_modulus(q, xi):
    """``|B_q^(xi)|`` from ``|Xi|^a cosh(2|v| arg Xi)^(1/2)`` (no cancellation)."""
    q = SplineOrder.coerce(q, 0.0).q
    logs, zero = xi_log_array(xi)
    with np.errstate(over="ignore"):
        mod = np.exp(q.a * logs.real) * np.sqrt(np.cosh(2.0 * q.vnorm * logs.imag))
    return np.where(zero, 0.0, mod)


# --------------------------------------------------------------------------
# two-scale mask


def _mask_log_array(xi):
    """``log((1 + e^{-i xi})/2) = log|cos(xi/2)| + i wrap(-xi/2 + pi [cos < 0])``."""
    xi = np.asarray(xi, dtype=float)
    c = np.cos(0.5 * xi)
    zero = lattice_zero_mask(xi, offset=math.pi)
    c = np.where(zero, 1.0, c)
    theta = _wrap(-0.5 * xi + np.where(c < 0.0, np.pi, 0.0))
    return np.log(np.abs(c)) + 1j * theta, zero


def mask_h0_array(q, xi) -> np.ndarray:
    """Vectorised :func:`mask_h0`."""
    q = SplineOrder.coerce(q, 1.0).q
    logs, zero = _mask_log_array(xi)
    out = pow_from_log_array(logs, q)
    out[zero] = 0.0
    return out


def mask_h0(q, xi: float) -> Biquaternion:
    """``H0(xi) = 2^-q (1 + e^{-i xi})^q``; 2 pi-periodic, 0 at ``pi + 2 pi k``."""
    return Biquaternion.from_array(mask_h0_array(q, np.array([float(xi)]))[0])


def mask_ratio_array(q, xi) -> np.ndarray:
    """``B_q^(2 xi) B_q^(xi)^-1`` where the denominator is nonzero.

    Both factors are powers of complex numbers with the same vector
    direction, so they commute and the order of the product is immaterial.
    The biquaternion inverse is ``conj_q(p) / (p0^2 + p1^2 + p2^2 + p3^2)``
    (quaternion conjugate, no complex conjugation).
    """
    num = bspline_hat_array(q, 2.0 * np.asarray(xi, dtype=float))
    den = bspline_hat_array(q, xi)
    n2 = np.sum(den * den, axis=-1)
    inv = den.copy()
    inv[..., 1:] *= -1
    inv = inv / n2[..., None]
    return qmul_array(num, inv)


def mask_sup(q, n: int = 1 << 14) -> float:
    """Largest ``|H0|`` on a uniform grid of one period (numerical supremum)."""
    xi = np.linspace(-math.pi, math.pi, n + 1)
    return float(np.max(qabs_array(mask_h0_array(q, xi))))


def mask_zero_slope(q, lo: float = 1e-4, hi: float = 1e-2, n: int = 41) -> float:
    """Log-log slope of ``|1 - |H0(xi)|^2|`` on ``[lo, hi]`` (least squares)."""
    xi = np.geomspace(lo, hi, n)
    h = mask_h0_array(q, xi)
    defect = 1.0 - np.sum(np.abs(h) ** 2, axis=-1)
    slope, _ = np.polyfit(np.log(xi), np.log(np.abs(defect)), 1)
    return float(slope)


@dataclass(frozen=True)
class MaskCoefficients:
    """Two-scale coefficients ``h(k) = 2^-q binom(q, k)``, ``k = 0..K``."""

    order: Quaternion
    h: tuple
    truncation_error: float
    complex_h: np.ndarray

    def __len__(self) -> int:
        return len(self.h)

    def total(self) -> Quaternion:
        return complex_to_quat(complex(np.sum(self.complex_h)), self.order)


def mask_coefficients(q, tol: float = 1e-10, max_terms: int = 10 ** 6) -> MaskCoefficients:
    """Truncate the mask series once the decay-based tail bound is below ``tol``.

    ``|binom(q, k)| ~ C k^(-a-1)``, so the tail beyond ``K`` is about
    ``|h(K)| K / a``.  Integer real orders have finitely many coefficients
    and are returned exactly.
    """
    order = SplineOrder.coerce(q, 1.0)
    q = order.q
    w = order_to_complex(q)
    scale = 2.0 ** (-w)
    if q.vnorm == 0.0 and q.a == math.floor(q.a):
        K = int(q.a)
        c = binomial_table(q, K) * scale
        h = complex_array_to_quat(c, q)
        return MaskCoefficients(q, tuple(Quaternion(*row) for row in h), 0.0, c)
    kmin = int(2 * abs(w)) + 8
    K = max(64, kmin)
    while True:
        c = binomial_table(q, K) * scale
        k = np.arange(K + 1, dtype=float)
        tail = np.abs(c) * k / q.a
        ok = np.nonzero((tail <= tol) & (k >= kmin))[0]
        if ok.size:
            cut = int(ok[0])
            c = c[: cut + 1]
            break
        if K >= max_terms:
            raise TruncationError(f"mask tail above {tol:g} after {max_terms} terms")
        K = min(2 * K, max_terms)
    h = complex_array_to_quat(c, q)
    return MaskCoefficients(q, tuple(Quaternion(*row) for row in h), float(tail[cut]), c)


# --------------------------------------------------------------------------
# autocorrelation symbol and Riesz bounds


def autocorrelation_symbol(q, xi, K: int) -> np.ndarray:
    """``sum_{|k| <= K} |B_q^(xi + 2 pi k)|^2`` on an array of frequencies."""
    xi = np.asarray(xi, dtype=float)
    k = np.arange(-K, K + 1, dtype=float)
    total = np.zeros(xi.shape)
    for chunk in np.array_split(k, max(1, len(k) // 64)):
        shifted = xi[..., None] + TWO_PI * chunk
        total += np.sum(bspline_hat_modulus(q, shifted) ** 2, axis=-1)
    return total


def autocorrelation_closed_form(q, xi) -> np.ndarray:
    """Full periodised sum via Hurwitz zeta, for ``xi`` in ``(0, 2 pi)``.

    On ``(0, 2 pi)``, ``arg Xi(xi + 2 pi k)`` is ``-xi/2`` for ``k >= 0`` and
    ``pi - xi/2`` for ``k < 0``, and ``|Xi(xi + 2 pi k)| = |2 sin(xi/2)| / |xi + 2 pi k|``;
    summing over ``k`` gives two Hurwitz zeta values.
    """
    q = SplineOrder.coerce(q, 0.5).q
    xi = np.asarray(xi, dtype=float)
    s = 2.0 * q.a
    x = xi / TWO_PI
    pref = np.abs(2.0 * np.sin(0.5 * xi)) ** s * TWO_PI ** (-s)
    n = q.vnorm
    return pref * (np.cosh(n * xi) * special.zeta(s, x)
                   + np.cosh(n * (TWO_PI - xi)) * special.zeta(s, 1.0 - x))


def riesz_shift_count(a: float) -> int:
    """``K = max(64, ceil(1e8^(1/(2a - 1))))``; capped to keep the work finite."""
    expo = 8.0 / (2.0 * a - 1.0)
    if expo > 6.0:
        return 10 ** 6
    return max(64, int(math.ceil(10.0 ** expo)))


def riesz_tail_bound(q, K: int) -> float:
    """Bound on the neglected shifts ``|k| > K`` for ``xi`` in ``[0, 2 pi)``.

    ``|B_q^(xi)|^2 <= |2 sin(xi/2)/xi|^(2a) cosh(2 pi |v|)`` and
    ``|xi + 2 pi k| >= 2 pi (|k| - 1)``.
    """
    q = SplineOrder.coerce(q, 0.5).q
    s = 2.0 * q.a
    return float(2.0 * math.cosh(TWO_PI * q.vnorm) * 2.0 ** s * TWO_PI ** (-s)
                 * special.zeta(s, K))


def riesz_grid(n: int = 4096) -> np.ndarray:
    return np.arange(n) * (TWO_PI / n)


def riesz_bounds(q, xi_grid=None, K: Optional[int] = None, max_tail: float = 1e-6):
    """``(lower, upper)``: min and max of the truncated autocorrelation symbol.

    Raises :class:`TruncationError` if the decay-based tail bound for the
    chosen ``K`` exceeds ``max_tail``.
    """
    order = SplineOrder.coerce(q, 0.5)
    if xi_grid is None:
        xi_grid = riesz_grid()
    if K is None:
        K = min(riesz_shift_count(order.a), 4096)
    tail = riesz_tail_bound(order, K)
    if tail > max_tail:
        raise TruncationError(f"autocorrelation tail bound {tail:.3g} exceeds {max_tail:g} at K={K}")
    values = autocorrelation_symbol(order, xi_grid, K)
    return float(np.min(values)), float(np.max(values))


class RieszSandwich(NamedTuple):
    """``lower_a <= A_q(xi) <= upper_a cosh(pi |v|)`` checked on a grid.

    ``A_q`` is the truncated autocorrelation symbol of ``q``; ``lower_a`` and
    ``upper_a`` are the min and max of the symbol of the real order ``Sc q``.
    """

    lower_a: float
    upper_a: float
    factor: float
    lower: float
    upper: float
    violations: int


def riesz_sandwich(q, xi_grid=None, K: Optional[int] = None) -> RieszSandwich:
    order = SplineOrder.coerce(q, 0.5)
    if xi_grid is None:
        xi_grid = riesz_grid()
    if K is None:
        K = min(riesz_shift_count(order.a), 4096)
    values = autocorrelation_symbol(order, xi_grid, K)
    base = autocorrelation_symbol(Quaternion(order.a), xi_grid, K)
    lo, hi = float(np.min(base)), float(np.max(base))
    factor = math.cosh(math.pi * order.vnorm)
    bad = int(np.count_nonzero((values < lo) | (values > hi * factor)))
    return RieszSandwich(lo, hi, factor, float(np.min(values)), float(np.max(values)), bad)


# --------------------------------------------------------------------------
# L2 / L1 norms of the transform


class NormEstimates(NamedTuple):
    l2_sq: float
    l1: float
    l2_bound: float
    l1_bound: float


def _power_norm(q, p: float, periods: int) -> float:
    """``int_R |B_q^(xi)|^p dxi`` reduced to one period.

    For ``xi = 2 pi k + eta > 0`` the integrand is ``P(eta) xi^(-a p)`` with
    ``P(eta) = |2 sin(eta/2)|^(a p) cosh(|v| eta)^(p/2)``; it is even in
    ``xi``.  The first ``periods`` periods are summed term by term (the
    ``k = 0`` term written as a sinc power) and the rest exactly through
    ``sum_{k >= N} (eta + 2 pi k)^-s = (2 pi)^-s zeta(s, N + eta/(2 pi))``.
    """
    a, n = q.a, q.vnorm
    s = a * p
    ks = TWO_PI * np.arange(1, periods)

    def integrand(eta):
        P = math.cosh(n * eta) ** (0.5 * p)
        sin_part = abs(2.0 * math.sin(0.5 * eta))
        first = (float(_sinc(0.5 * eta))) ** s if eta > 0 else 1.0
        rest = float(np.sum((eta + ks) ** (-s))) if periods > 1 else 0.0
        tail = TWO_PI ** (-s) * float(special.zeta(s, periods + eta / TWO_PI))
        return P * (first + sin_part ** s * (rest + tail))

    val, _ = integrate.quad(integrand, 0.0, TWO_PI, epsabs=0.0, epsrel=1e-12, limit=400)
    return 2.0 * val


def l2_l1_norm_estimates(q, periods: int = 8) -> NormEstimates:
    """``||B_q^||_2^2``, ``||B_q^||_1`` and the bounds ``cosh(pi|v|) ||B_a^||_2^2``,
    ``sqrt(cosh(pi|v|)) ||B_a^||_1``.

    Needs ``Sc q > 1/2``; the L1 entries are ``inf`` when ``Sc q <= 1``.
    """
    order = SplineOrder.coerce(q, 0.5)
    q = order.q
    base = Quaternion(q.a)
    c = math.cosh(math.pi * order.vnorm)
    l2 = _power_norm(q, 2.0, periods)
    l2_base = _power_norm(base, 2.0, periods)
    if q.a > 1.0:
        l1 = _power_norm(q, 1.0, periods)
        l1_bound = math.sqrt(c) * _power_norm(base, 1.0, periods)
    else:
        l1 = l1_bound = math.inf
    return NormEstimates(l2, l1, c * l2_base, l1_bound)


# --------------------------------------------------------------------------
# products of symbols


def semigroup_defect(q1, q2, xi) -> float:
    """``max |B_q1^ B_q2^ - B_(q1+q2)^|`` over the frequencies ``xi``."""
    q1 = SplineOrder.coerce(q1, 0.0).q
    q2 = SplineOrder.coerce(q2, 0.0).q
    prod = qmul_array(bspline_hat_array(q1, xi), bspline_hat_array(q2, xi))
    return float(np.max(qabs_array(prod - bspline_hat_array(q1 + q2, xi))))


def commutator_defect(q1, q2, xi) -> float:
    """``max |[(-i xi)^q1, (1 - e^{-i xi})^q2]|`` over ``xi`` (nonzero entries)."""
    xi = np.asarray(xi, dtype=float)
    p1 = complex_pow_quat_array(-1j * xi, q1)
    p2 = complex_pow_quat_array(1.0 - np.exp(-1j * xi), q2)
    return float(np.max(qabs_array(qmul_array(p1, p2) - qmul_array(p2, p1))))
