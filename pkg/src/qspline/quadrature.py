"""Quadrature rules and the Fourier-inversion oracle.

The oracle evaluates ``B_q(t) = (1/pi) Re int_0^inf B_q^(xi) e^{i xi t} dxi``
independently of the finite alternating sum used in :mod:`qspline.time_domain`.

The transform decays only like ``xi^(-Sc q)``, so plain truncation is hopeless
for small ``Sc q``.  Three ingredients make it work:

* each period ``[2 pi k, 2 pi (k+1)]`` is integrated with a tanh-sinh rule,
  which is indifferent to the ``|sin(eta/2)|^q`` endpoint behaviour;
* the integrand is multiplied by a C-infinity window ``W(xi/R)`` equal to 1
  below ``R`` and 0 above ``2R``; for non-integer ``t`` the omitted part is
  then smaller than any power of ``R``;
* at integer ``t`` the integrand is ``P(xi) xi^-q`` with ``P`` exactly
  2 pi-periodic, and the window error is exactly ``c R^(1-q)``.  One
  Richardson step with ``R`` and ``2R`` (``R`` a multiple of ``2 pi``) removes
  it; for non-integer ``t`` the same step is harmless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .gamma import order_to_complex
from .quaternion import Quaternion, SplineOrder

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class TanhSinhRule:
    """Nodes on ``(0, 1)`` given as ``x`` and ``1 - x`` (both exact), plus weights."""

    x: np.ndarray
    xc: np.ndarray
    w: np.ndarray


@lru_cache(maxsize=8)
def tanh_sinh(h: float = 1.0 / 16.0, wmin: float = 1e-22) -> TanhSinhRule:
    """Tanh-sinh rule on ``(0, 1)`` with step ``h``; weights below ``wmin`` dropped."""
    kmax = int(math.ceil(4.0 / h))
    s = np.arange(-kmax, kmax + 1) * h
    e = 0.5 * math.pi * np.sinh(s)
    # x = 1/(1 + e^{-2e}),  1 - x = 1/(1 + e^{2e})
    x = 1.0 / (1.0 + np.exp(-2.0 * e))
    xc = 1.0 / (1.0 + np.exp(2.0 * e))
    w = h * 0.5 * math.pi * np.cosh(s) / (2.0 * np.cosh(e) ** 2)
    keep = (w > wmin) & (x > 0.0) & (xc > 0.0)
    return TanhSinhRule(x[keep], xc[keep], w[keep])


def smooth_step(x):
    """C-infinity step: 0 for ``x <= 0``, 1 for ``x >= 1``."""
    x = np.asarray(x, dtype=float)
    inner = (x > 0.0) & (x < 1.0)
    xs = np.where(inner, x, 0.5)
    a = np.exp(-1.0 / xs)
    b = np.exp(-1.0 / (1.0 - xs))
    return np.where(x >= 1.0, 1.0, np.where(inner, a / (a + b), 0.0))


def window(s):
    """1 on ``[0, 1]``, 0 on ``[2, inf)``, smooth in between."""
    return 1.0 - smooth_step(np.asarray(s, dtype=float) - 1.0)


def _transform_components(q: Quaternion, k: np.ndarray, rule: TanhSinhRule):
    """Frequencies and the scalar / vector-coefficient parts of ``B_q^``.

    On period ``k >= 0``, ``xi = 2 pi k + eta`` and
    ``log Xi(xi) = log(2 sin(eta/2)) - i eta/2 - log(xi)``.
    """
    eta = TWO_PI * rule.x
    # sin(eta/2) = sin(pi x) = sin(pi (1 - x)); use the smaller argument
    sin_half = np.sin(math.pi * np.minimum(rule.x, rule.xc))
    xi = TWO_PI * k[:, None] + eta[None, :]
    logxi = np.log(2.0 * sin_half)[None, :] - 0.5j * eta[None, :] - np.log(xi)
    base = np.exp(q.a * logxi)
    n = q.vnorm
    if n == 0.0:
        return xi, base, np.zeros_like(base)
    return xi, base * np.cos(n * logxi), base * np.sin(n * logxi)


def _windowed_integral(q: Quaternion, t: float, radius_periods: int, rule: TanhSinhRule):
    """``Re int_0^inf {S, V}(xi) e^{i xi t} W(xi/R) dxi`` with ``R = 2 pi N``."""
    R = TWO_PI * radius_periods
    k = np.arange(2 * radius_periods, dtype=float)
    xi, S, V = _transform_components(q, k, rule)
    weight = (TWO_PI * rule.w)[None, :] * window(xi / R) * np.exp(1j * xi * t)
    return float(np.sum((S * weight).real)), float(np.sum((V * weight).real))


def fourier_inversion(q, t: float, periods: int = 192, h: float = 1.0 / 16.0) -> Quaternion:
    """``B_q(t)`` by windowed, extrapolated Fourier inversion (test oracle)."""
    order = SplineOrder.coerce(q, 1.0)
    q = order.q
    rule = tanh_sinh(h)
    s1, v1 = _windowed_integral(q, t, periods, rule)
    s2, v2 = _windowed_integral(q, t, 2 * periods, rule)
    w = order_to_complex(q)
    r = 2.0 ** (1.0 - w)
    z = (complex(s2, v2) - r * complex(s1, v1)) / (1.0 - r) / math.pi
    u = order.unit
    if u is None:
        return Quaternion(z.real)
    return Quaternion(z.real, z.imag * u[0], z.imag * u[1], z.imag * u[2])
