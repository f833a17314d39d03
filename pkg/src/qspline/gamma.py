"""Quaternionic Gamma function, Pochhammer symbols and binomial series.

Everything here rests on one observation.  For a fixed order
``q = a + v`` with ``u = v/|v|``, all quantities built from ``q`` by sums,
products and real powers live in the commutative plane ``span{1, u}``, and
``x + y u  <->  x + i y`` is an algebra isomorphism onto the complex numbers.
So ``Gamma(q) = Re Gamma(w) + u Im Gamma(w)`` with ``w = a + i|v|``, and the
same for ``(q)_j``, ``binom(q, j)`` and ``n**q``.

The complex Gamma kernel is a Lanczos approximation (g = 7, nine
coefficients) with the reflection formula for ``Re z < 1/2``.
"""

from __future__ import annotations

import cmath
import enum
import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import integrate

from .errors import GammaPoleError, PreconditionError, SlowConvergenceWarning, TruncationError
from .quaternion import (
    Biquaternion,
    Quaternion,
    as_quaternion,
    complex_pow_quat,
    format_order,
)

_LANCZOS_G = 7
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def complex_loggamma(z: complex) -> complex:
    """log Gamma(z) for ``Re z >= 1/2`` (Lanczos); not branch-continuous."""
    z = complex(z) - 1.0
    x = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        x += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def complex_gamma(z: complex) -> complex:
    """Gamma function of a complex argument.

    Raises :class:`GammaPoleError` at ``0, -1, -2, ...``.
    """
    z = complex(z)
    if z.imag == 0.0 and _is_nonpositive_integer(z.real):
        raise GammaPoleError(f"Gamma has a pole at {z.real:g}")
    if z.real < 0.5:
        # Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return math.pi / (cmath.sin(math.pi * z) * complex_gamma(1.0 - z))
    return cmath.exp(complex_loggamma(z))


# --------------------------------------------------------------------------
# the span{1, u} <-> C isomorphism


def order_to_complex(q) -> complex:
    """``w = a + i|v|`` for ``q = a + v``."""
    q = as_quaternion(q)
    return complex(q.a, q.vnorm)


def complex_to_quat(c: complex, q) -> Quaternion:
    """Map ``x + iy`` to ``x + y v/|v|`` in the plane of ``q``.

    When ``v = 0`` the plane degenerates to the real axis and ``y`` must be
    a rounding residue; it is dropped.
    """
    q = as_quaternion(q)
    c = complex(c)
    n = q.vnorm
    if n == 0.0:
        return Quaternion(c.real)
    k = c.imag / n
    return Quaternion(c.real, k * q.v1, k * q.v2, k * q.v3)


def complex_array_to_quat(c, q) -> np.ndarray:
    """Vectorised :func:`complex_to_quat`; returns ``(..., 4)`` real arrays."""
    q = as_quaternion(q)
    c = np.asarray(c, dtype=complex)
    out = np.zeros(c.shape + (4,))
    out[..., 0] = c.real
    n = q.vnorm
    if n > 0.0:
        k = c.imag / n
        out[..., 1] = k * q.v1
        out[..., 2] = k * q.v2
        out[..., 3] = k * q.v3
    return out


# --------------------------------------------------------------------------
# Gamma


class GammaMethod(str, enum.Enum):
    COMPLEXIFIED = "complexified"
    QUADRATURE = "quadrature"
    GAUSS_LIMIT = "gauss_limit"


@dataclass(frozen=True)
class GammaValue:
    value: Quaternion
    order: Quaternion
    method: GammaMethod


def gamma_quat(q) -> GammaValue:
    """Gamma of a real quaternion via two complex Gamma values.

    ``Sc Gamma(q) = (Gamma(a - i|v|) + Gamma(a + i|v|))/2`` and the vector
    part is ``v/|v|`` times ``(i/2)(Gamma(a - i|v|) - Gamma(a + i|v|))``.
    Both are real up to rounding.  Defined for every ``q`` except the real
    poles ``0, -1, -2, ...``; with ``|v| > 0`` the complex arguments are never
    poles, so e.g. ``Gamma(-1 + e1)`` is finite.
    """
    q = as_quaternion(q)
    n = q.vnorm
    if n == 0.0:
        if _is_nonpositive_integer(q.a):
            raise GammaPoleError(f"Gamma has a pole at q = {format_order(q)}")
        return GammaValue(Quaternion(math.gamma(q.a)), q, GammaMethod.COMPLEXIFIED)
    gp = complex_gamma(complex(q.a, n))
    gm = complex_gamma(complex(q.a, -n))
    scalar = 0.5 * (gm + gp)
    coef = 0.5j * (gm - gp)
    k = coef.real / n
    value = Quaternion(scalar.real, k * q.v1, k * q.v2, k * q.v3)
    return GammaValue(value, q, GammaMethod.COMPLEXIFIED)


def _gamma_cutoff(a: float) -> float:
    """Smallest ``T`` (>= 1) with ``exp(-T) T**a < 1e-16``."""
    t = max(1.0, a)
    while -t + a * math.log(t) > math.log(1e-16):
        t += 1.0
    return t


def gamma_quadrature(q) -> GammaValue:
    """Gamma by direct quadrature of ``int_0^inf t^(q-1) e^-t dt``.

    ``t^(q-1) = t^(a-1) (cos(|v| log t) + u sin(|v| log t))``; the two real
    integrals are split at ``t = 1``.  On ``(0, 1]`` the substitution
    ``t = e^-s`` turns the log-oscillation into a plain Fourier integral
    ``int_0^S e^(-a s) e^(-e^-s) {cos, -sin}(|v| s) ds`` (``S = 40/a``),
    handled by QUADPACK's QAWO.  ``[1, T]`` uses adaptive Gauss-Kronrod.  Needs ``Sc q > 0``.
    """
    q = as_quaternion(q)
    a, n = q.a, q.vnorm
    if not a > 0:
        raise PreconditionError("quadrature Gamma needs Sc(q) > 0")

    def head(s):
        return math.exp(-a * s - math.exp(-s))

    tail_end = _gamma_cutoff(a)
    opts = dict(epsabs=0.0, epsrel=1e-13, limit=500)
    if n == 0.0:
        c0 = _quad(head, 0.0, np.inf, **opts)
        c1 = _quad(lambda t: t ** (a - 1.0) * math.exp(-t), 1.0, tail_end, **opts)
        return GammaValue(Quaternion(c0 + c1), q, GammaMethod.QUADRATURE)

    head_end = 40.0 / a  # exp(-a s) < 1e-17 beyond
    fourier = dict(epsabs=0.0, epsrel=1e-13, limit=2000)
    cos_head = _quad(head, 0.0, head_end, weight="cos", wvar=n, **fourier)
    sin_head = -_quad(head, 0.0, head_end, weight="sin", wvar=n, **fourier)
    cos_tail = _quad(
        lambda t: t ** (a - 1.0) * math.cos(n * math.log(t)) * math.exp(-t),
        1.0, tail_end, **opts)
    sin_tail = _quad(
        lambda t: t ** (a - 1.0) * math.sin(n * math.log(t)) * math.exp(-t),
        1.0, tail_end, **opts)
    c = complex(cos_head + cos_tail, sin_head + sin_tail)
    return GammaValue(complex_to_quat(c, q), q, GammaMethod.QUADRATURE)


def _quad(*args, **kwargs) -> float:
    """``scipy.integrate.quad`` value; roundoff notices near 1e-13 are expected."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        return integrate.quad(*args, **kwargs)[0]


_GAUSS_CHUNK = 1 << 20


def _log_rising_over_factorial(w: complex, n: int) -> complex:
    """``sum_{k=1}^n log(1 + w/k)`` with each term accurate for small ``w/k``."""
    re_parts = []
    im_parts = []
    for start in range(1, n + 1, _GAUSS_CHUNK):
        k = np.arange(start, min(n, start + _GAUSS_CHUNK - 1) + 1, dtype=float)
        x = w.real / k
        y = w.imag / k
        re_parts.append(math.fsum(0.5 * np.log1p(2.0 * x + x * x + y * y)))
        im_parts.append(math.fsum(np.arctan2(y, 1.0 + x)))
    return complex(math.fsum(re_parts), math.fsum(im_parts))


def gamma_gauss_limit(q, n: int) -> Quaternion:
    """Gauss' product ``n! n^q / (q (q+1) ... (q+n))``.

    For ``n <= 170`` the product is formed with quaternion multiplication and
    ``n^q`` from :func:`complex_pow_quat`.  Beyond that ``n!`` overflows and
    the same quantity is evaluated in log-magnitude form,
    ``exp(w log n - log w - sum_k log(1 + w/k))``.  The error behaves like
    ``|q (q+1)| / (2n)``.
    """
    q = as_quaternion(q)
    n = int(n)
    if n < 1:
        raise PreconditionError("Gauss limit needs n >= 1")
    if not q.a > 0:
        raise PreconditionError("Gauss limit needs Sc(q) > 0")
    if n <= 170:
        # q (q+1) ... (q+n) / n!  accumulated as q (1 + q/1) ... (1 + q/n)
        den = q
        for k in range(1, n + 1):
            den = den * (1.0 + q / k)
        npow = complex_pow_quat(float(n), q).real
        return npow * den.inverse()
    w = order_to_complex(q)
    logg = w * math.log(n) - cmath.log(w) - _log_rising_over_factorial(w, n)
    return complex_to_quat(cmath.exp(logg), q)


def gamma(q, method: GammaMethod | str = GammaMethod.COMPLEXIFIED, n: int = 10 ** 6) -> GammaValue:
    """Dispatch to one of the three Gamma evaluation paths."""
    method = GammaMethod(method)
    if method is GammaMethod.COMPLEXIFIED:
        return gamma_quat(q)
    if method is GammaMethod.QUADRATURE:
        return gamma_quadrature(q)
    q = as_quaternion(q)
    return GammaValue(gamma_gauss_limit(q, n), q, GammaMethod.GAUSS_LIMIT)


# --------------------------------------------------------------------------
# Pochhammer symbols and binomial coefficients


def pochhammer(q, j: int) -> Quaternion:
    """Falling product ``(q)_j = q (q-1) ... (q-j+1)`` by quaternion products."""
    q = as_quaternion(q)
    out = Quaternion(1.0)
    for k in range(j):
        out = out * (q - k)
    return out


def pochhammer_complex(q, j: int) -> Quaternion:
    """``(q)_j = Re(w_j) + u Im(w_j)`` with ``w_j`` the complex falling product."""
    w = order_to_complex(q)
    c = 1.0 + 0j
    for k in range(j):
        c *= w - k
    return complex_to_quat(c, q)


@dataclass(frozen=True)
class PochhammerTable:
    """``(q)_0, ..., (q)_J`` built once by the recursion and shared read-only."""

    order: Quaternion
    values: tuple

    @classmethod
    def build(cls, q, J: int) -> "PochhammerTable":
        q = as_quaternion(q)
        vals = [Quaternion(1.0)]
        for k in range(J):
            vals.append(vals[-1] * (q - k))
        return cls(q, tuple(vals))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, j: int) -> Quaternion:
        return self.values[j]

    def binomials(self) -> list:
        return [v / math.factorial(j) if j <= 170 else binom_quat(self.order, j)
                for j, v in enumerate(self.values)]


def binom_quat(q, j: int) -> Quaternion:
    """``binom(q, j) = (q)_j / j!``.

    Up to ``j = 20`` this is the quaternion product divided by ``j!``; above,
    the factorial is taken in log form, ``exp(sum log(w - k) - lgamma(j+1))``.
    """
    q = as_quaternion(q)
    if j < 0:
        raise PreconditionError("binomial index must be nonnegative")
    if j <= 20:
        return pochhammer(q, j) / math.factorial(j)
    w = order_to_complex(q)
    if q.vnorm == 0.0 and q.a == math.floor(q.a) and 0 <= q.a < j:
        return Quaternion(0.0)
    k = np.arange(j, dtype=float)
    logs = np.log(w - k)
    total = complex(math.fsum(logs.real), math.fsum(logs.imag)) - math.lgamma(j + 1)
    return complex_to_quat(cmath.exp(total), q)


def binomial_table(q, K: int) -> np.ndarray:
    """Complex images ``c_k`` of ``binom(q, k)``, ``k = 0..K``.

    Built by the ratio ``c_k = c_{k-1} (w - k + 1)/k``, which never
    overflows.  ``binom(q, k) = Re c_k + u Im c_k``.
    """
    w = order_to_complex(q)
    k = np.arange(1, K + 1, dtype=float)
    ratios = (w - k + 1.0) / k
    out = np.empty(K + 1, dtype=complex)
    out[0] = 1.0
    out[1:] = np.cumprod(ratios)
    return out


def _binomial_tail_factor(a: float, j: int, absz: float) -> float:
    """Rough ratio (tail sum)/(last term) from ``|binom| ~ j^(-a-1)`` decay."""
    if absz < 1.0:
        geometric = absz / (1.0 - absz)
    else:
        geometric = math.inf
    power = j / a if a > 0 else math.inf
    return min(geometric, power)


def binomial_series(q, z: complex, tol: float = 1e-12, max_terms: int = 10 ** 5) -> Biquaternion:
    """``(1 + z)^q`` as ``sum_j binom(q, j) z^j`` for ``|z| <= 1``.

    The coefficients lie in ``span{1, u}`` while ``z`` carries the complex
    unit of H_C, so the series is summed as two complex series
    ``sum Re(c_j) z^j`` and ``sum Im(c_j) z^j``.  Summation stops once five
    consecutive terms are below ``tol`` times the partial sum and the
    decay-based tail estimate is below ``tol`` too; the cap is ``max_terms``.
    A :class:`SlowConvergenceWarning` is issued on the unit circle when
    ``Sc q <= 1``, where the series converges very slowly or not at all.
    """
    q = as_quaternion(q)
    z = complex(z)
    absz = abs(z)
    if absz > 1.0 + 1e-15:
        raise PreconditionError("binomial series needs |z| <= 1")
    if not q.a > 0:
        raise PreconditionError("binomial series needs Sc(q) > 0")
    if absz >= 1.0 - 1e-15 and q.a <= 1.0:
        warnings.warn(f"binomial series at |z| = 1 with Sc(q) = {q.a:g} <= 1 converges slowly",
                      SlowConvergenceWarning, stacklevel=2)
    w = order_to_complex(q)
    c = 1.0 + 0j
    zj = 1.0 + 0j
    s_re = 0j
    s_im = 0j
    run = 0
    for j in range(max_terms + 1):
        if j > 0:
            c *= (w - j + 1.0) / j
            zj *= z
        s_re += c.real * zj
        s_im += c.imag * zj
        term = abs(c) * abs(zj)
        partial = math.sqrt(abs(s_re) ** 2 + abs(s_im) ** 2)
        if term <= tol * max(partial, 1e-300) or term == 0.0:
            run += 1
        else:
            run = 0
        if run >= 5 and term * _binomial_tail_factor(q.a, max(j, 1), absz) <= tol * max(partial, 1.0):
            break
    else:
        raise TruncationError(f"binomial series did not reach tol={tol:g} in {max_terms} terms")
    u = q.unit_vector
    if u is None:
        return Biquaternion(s_re)
    return Biquaternion(s_re, s_im * u[0], s_im * u[1], s_im * u[2])


def binomial_sum_unit(q, z: int, j0: int | None = None, levels: int = 6) -> Quaternion:
    """``sum_j binom(q, j) z^j`` at ``z = +1`` or ``z = -1`` with extrapolation.

    The partial sums ``S(J)`` converge only like ``J^(-Sc q)`` (``z = -1``)
    or ``J^(-Sc q - 1)`` (``z = +1``), far too slowly to sum directly when
    ``Sc q`` is small.  Their error has an expansion in powers
    ``J^(-(w + d + k))``, ``k = 0, 1, ...`` (``d = 0`` for ``z = -1``, ``d = 1``
    for ``z = 1``), so Richardson extrapolation over ``J, 2J, 4J, ...`` with
    the complex ratios ``2^-(w + d + k)`` removes them one by one.  ``J`` is
    kept even so the sign of the alternating remainder is fixed.
    """
    q = as_quaternion(q)
    if z not in (1, -1):
        raise PreconditionError("binomial_sum_unit needs z = 1 or z = -1")
    if not q.a > 0:
        raise PreconditionError("binomial_sum_unit needs Sc(q) > 0")
    w = order_to_complex(q)
    if j0 is None:
        j0 = 32 * (1 + int(math.ceil(abs(w))))
    j0 += j0 % 2
    jmax = j0 * 2 ** levels
    coef = binomial_table(q, jmax)
    if z == -1:
        coef = coef * np.where(np.arange(jmax + 1) % 2 == 0, 1.0, -1.0)
    partial = np.cumsum(coef)
    table = [partial[j0 * 2 ** m] for m in range(levels + 1)]
    d = 1 if z == 1 else 0
    for k in range(levels):
        r = 2.0 ** (-(w + d + k))
        table = [(table[m + 1] - r * table[m]) / (1.0 - r) for m in range(len(table) - 1)]
    return complex_to_quat(table[0], q)


def gamma_modulus_bound(q) -> float:
    """``sqrt(2) Gamma(Sc q)``, an upper bound for ``|Gamma(q)|`` when Sc q > 0."""
    q = as_quaternion(q)
    return math.sqrt(2.0) * math.gamma(q.a)


def pochhammer_modulus_ratio(q, n: int) -> float:
    """``|(q)_n| / |q|^n``; tends to 1 as ``|q| -> inf`` along a ray."""
    q = as_quaternion(q)
    return abs(pochhammer(q, n)) / abs(q) ** n


__all__: Sequence[str] = (
    "GammaMethod", "GammaValue", "PochhammerTable", "binom_quat", "binomial_series",
    "binomial_sum_unit", "binomial_table", "complex_array_to_quat", "complex_gamma",
    "complex_loggamma", "complex_to_quat", "gamma", "gamma_gauss_limit",
    "gamma_modulus_bound", "gamma_quadrature", "gamma_quat", "order_to_complex",
    "pochhammer", "pochhammer_complex", "pochhammer_modulus_ratio",
)
