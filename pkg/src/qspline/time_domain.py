"""Time-domain evaluation of quaternionic B-splines.

``B_q(t) = Gamma(q)^-1 sum_{k=0}^{floor t} (-1)^k binom(q, k) (t - k)_+^(q-1)``

The sum is finite for every ``t``: terms with ``k >= t`` vanish because the
truncated power does.  All factors lie in ``span{1, v}``, so the sum is formed
with complex numbers (``x + y v/|v| <-> x + iy``) and mapped back at the end.
Each point is summed with :func:`math.fsum` (exactly rounded), and a
:class:`ConditioningWarning` is raised when the largest term exceeds the
result by more than ``1e12``.
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .errors import ConditioningWarning, PreconditionError, TruncationError
from .gamma import binomial_table, complex_to_quat, gamma_quat
from .quaternion import (
    Quaternion,
    SplineOrder,
    as_quaternion,
    format_order,
    qmul_array,
    real_pow_quat,
)

CONDITION_LIMIT = 1e12


@dataclass(frozen=True)
class EvalConfig:
    """Numerical knobs shared by the evaluation routines."""

    series_tol: float = 1e-10
    quad_points: int = 192
    freq_cutoff: float = 2.0 * math.pi * 192
    lattice_K: int = 64

    def __post_init__(self):
        for name in ("series_tol", "quad_points", "freq_cutoff", "lattice_K"):
            if not getattr(self, name) > 0:
                raise ValueError(f"EvalConfig.{name} must be positive")

    def as_dict(self) -> dict:
        return {"series_tol": self.series_tol, "quad_points": self.quad_points,
                "freq_cutoff": self.freq_cutoff, "lattice_K": self.lattice_K}


@dataclass(frozen=True)
class SampledField:
    """Samples on the uniform grid ``t0 + j dt``, ``j = 0..n-1``.

    ``samples`` has shape ``(n, 4)``: real for quaternion values, complex for
    biquaternion values.
    """

    t0: float
    dt: float
    samples: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("grid step must be positive")
        arr = np.asarray(self.samples)
        if arr.ndim != 2 or arr.shape[1] != 4 or arr.shape[0] < 1:
            raise ValueError("samples must have shape (n, 4) with n >= 1")
        object.__setattr__(self, "samples", arr)

    def __len__(self) -> int:
        return self.samples.shape[0]

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(len(self))

    def quaternions(self) -> list:
        return [Quaternion(*row) for row in np.real(self.samples)]


def truncated_power(t: float, q) -> Quaternion:
    """``t_+^q``: ``t^q`` for ``t > 0`` (real log), 0 otherwise."""
    if t <= 0:
        return Quaternion(0.0)
    return real_pow_quat(float(t), q)


@dataclass(frozen=True)
class _SplineKernel:
    """Precomputed ``Gamma(q)^-1`` and signed binomial coefficients (read-only)."""

    order: SplineOrder
    w: complex
    gamma_inv: complex
    signed_binom: np.ndarray
    support_end: float = math.inf

    @classmethod
    def build(cls, order: SplineOrder, kmax: int) -> "_SplineKernel":
        q = order.q
        g = gamma_quat(q).value
        if abs(g) < 1e-300:
            raise PreconditionError("Gamma(q) too close to 0 to invert")
        # Gamma(q)^-1 = conj(Gamma(q)) / |Gamma(q)|^2, mapped to the complex plane
        ginv = g.conj() / (abs(g) ** 2)
        u = order.unit
        gi = complex(ginv.a, 0.0 if u is None else float(np.dot(ginv.vector, u)))
        coef = binomial_table(q, max(kmax, 0))
        sign = np.where(np.arange(coef.size) % 2 == 0, 1.0, -1.0)
        support = math.inf
        if order.vnorm == 0.0 and q.a == math.floor(q.a):
            # classical cardinal B-spline: supported on [0, n]
            support = q.a
        return cls(order, complex(q.a, order.vnorm), gi, coef * sign, support)

    def evaluate(self, t: float) -> complex:
        if not t > 0 or t >= self.support_end:
            return 0j
        kmax = int(math.floor(t))
        if t == kmax:
            kmax -= 1  # (t - t)_+^(q-1) = 0 since Sc(q) > 1
        x = t - np.arange(kmax + 1, dtype=float)
        terms = self.signed_binom[: kmax + 1] * np.exp((self.w - 1.0) * np.log(x))
        total = complex(math.fsum(terms.real), math.fsum(terms.imag))
        biggest = float(np.max(np.abs(terms)))
        if biggest > CONDITION_LIMIT * abs(total):
            warnings.warn(
                f"B_q({t:g}): alternating sum amplifies rounding by "
                f"{biggest / max(abs(total), 1e-300):.2e}", ConditioningWarning, stacklevel=3)
        return self.gamma_inv * total


def _kernel(q, t_max: float) -> _SplineKernel:
    order = SplineOrder.coerce(q, 1.0)
    return _SplineKernel.build(order, int(math.floor(max(t_max, 0.0))) + 1)


def bspline_time(q, t: float) -> Quaternion:
    """``B_q(t)`` for ``Sc q > 1``; 0 for ``t <= 0``."""
    k = _kernel(q, t)
    return complex_to_quat(k.evaluate(float(t)), k.order.q)


def _thread_count() -> int:
    raw = os.environ.get("QSPLINE_THREADS", "1").strip() or "1"
    try:
        n = int(raw)
    except ValueError:
        n = 1
    if n <= 0:
        n = os.cpu_count() or 1
    return n


def bspline_time_grid(q, t0: float, dt: float, n: int, threads: Optional[int] = None) -> SampledField:
    """``B_q`` on ``t0 + j dt``; identical (bitwise) to pointwise evaluation.

    The kernel (Gamma inverse and binomial table) is built once and shared.
    With ``threads > 1`` (default: ``QSPLINE_THREADS``) contiguous chunks are
    evaluated concurrently and written back in grid order.
    """
    if not dt > 0 or n < 1:
        raise PreconditionError("grid needs dt > 0 and n >= 1")
    times = t0 + dt * np.arange(n)
    kernel = _kernel(q, float(times[-1]))
    out = np.empty(n, dtype=complex)
    threads = _thread_count() if threads is None else max(1, threads)

    def work(idx):
        for i in idx:
            out[i] = kernel.evaluate(float(times[i]))

    chunks = np.array_split(np.arange(n), min(threads, n))
    if len(chunks) == 1:
        work(chunks[0])
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            list(pool.map(work, chunks))
    samples = np.stack([complex_to_quat(c, kernel.order.q).to_array() for c in out])
    meta = {"order": format_order(kernel.order.q), "method": "time_domain_sum"}
    return SampledField(float(t0), float(dt), samples, meta)


# --------------------------------------------------------------------------
# backwards difference


def _difference_terms(q, tol: float, max_terms: int = 10 ** 5) -> int:
    """Number of terms after which ``|binom(q, k)|`` and its tail stay below ``tol``."""
    q = as_quaternion(q)
    if q.vnorm == 0.0 and q.a == math.floor(q.a) and q.a >= 0:
        return int(q.a)
    chunk = 1024
    while True:
        coef = np.abs(binomial_table(q, chunk))
        k = np.arange(chunk + 1, dtype=float)
        tail = coef * np.maximum(k / q.a, 1.0) if q.a > 0 else np.full_like(coef, np.inf)
        ok = np.nonzero(tail <= tol)[0]
        ok = ok[ok > abs(complex(q.a, q.vnorm))]
        if ok.size:
            return int(ok[0])
        if chunk >= max_terms:
            raise TruncationError(f"difference coefficients do not reach {tol:g} within {max_terms} terms")
        chunk = min(chunk * 4, max_terms)


def backwards_difference(q, f: Union[SampledField, Callable], tol: float = 1e-10,
                         grid: Optional[tuple] = None) -> SampledField:
    """``nabla^q f = sum_k (-1)^k binom(q, k) f(. - k)``.

    ``f`` is either a :class:`SampledField` whose step divides 1 (samples left
    of the grid are taken as 0, so the sum over shifts is finite and exact),
    or a callable ``t -> quaternion`` evaluated on ``grid = (t0, dt, n)``,
    in which case the series is truncated where the coefficient decay
    reaches ``tol``.  Coefficients multiply from the left.
    """
    q = as_quaternion(q)
    if isinstance(f, SampledField):
        m = 1.0 / f.dt
        step = int(round(m))
        if step < 1 or abs(m - step) > 1e-9 * m:
            raise PreconditionError("grid step must divide 1")
        n = len(f)
        K = (n - 1) // step
        values = np.asarray(f.samples)
        t0, dt = f.t0, f.dt
    else:
        if grid is None:
            raise PreconditionError("a callable needs grid=(t0, dt, n)")
        t0, dt, n = grid
        K = _difference_terms(q, tol)
        times = t0 + dt * np.arange(n)
        values = None
    coef = binomial_table(q, K) * np.where(np.arange(K + 1) % 2 == 0, 1.0, -1.0)
    quat_coef = np.stack([complex_to_quat(c, q).to_array() for c in coef])
    if values is not None:
        out = np.zeros(values.shape, dtype=values.dtype)
        for k in range(K + 1):
            shifted = np.zeros_like(values)
            s = k * step
            shifted[s:] = values[: n - s]
            out += qmul_array(quat_coef[k], shifted)
    else:
        out = np.zeros((n, 4))
        for k in range(K + 1):
            shifted = np.stack([as_quaternion(f(t - k)).to_array() for t in times])
            out += qmul_array(quat_coef[k], shifted)
    meta = {"order": format_order(q), "method": "backwards_difference", "terms": K + 1}
    return SampledField(float(t0), float(dt), out, meta)


def recursion_check(q, t: float) -> float:
    """``|(q-1) B_q(t) - t B_{q-1}(t) - (q-t) B_{q-1}(t-1)|`` (needs ``Sc q > 2``)."""
    order = SplineOrder.coerce(q, 2.0)
    q = order.q
    qm = q - 1.0
    lhs = qm * bspline_time(q, t)
    rhs = t * bspline_time(qm, t) + (q - t) * bspline_time(qm, t - 1.0)
    return abs(lhs - rhs)


def cardinal_bspline(n: int, t):
    """Classical cardinal B-spline of order ``n`` (support ``[0, n]``) by Cox-de Boor."""
    t = np.asarray(t, dtype=float)
    shifted = [np.where((t - j >= 0) & (t - j < 1), 1.0, 0.0) for j in range(n)]
    for m in range(2, n + 1):
        shifted = [((t - j) * shifted[j] + (j + m - t) * shifted[j + 1]) / (m - 1)
                   for j in range(len(shifted) - 1)]
    return shifted[0]


def refinement_residual(q, times, tol: float = 1e-8) -> float:
    """``max |B_q(t) - 2 sum_k h(k) B_q(2t - k)|`` over ``times``.

    ``h(k) = 2^-q binom(q, k)`` are the Fourier coefficients of
    ``H0 = B^(2 xi)/B^(xi)`` and sum to 1.  Transforming
    ``B^(2 xi) = H0(xi) B^(xi)`` back to time gives the dilation factor 2,
    e.g. ``B_2(t) = B_2(2t)/2 + B_2(2t - 1) + B_2(2t - 2)/2``.
    """
    from .fourier import mask_coefficients

    mask = mask_coefficients(q, tol)
    order = SplineOrder.coerce(q, 1.0)
    times = np.asarray(times, dtype=float)
    kernel = _kernel(order, 2.0 * float(np.max(times)) + 1.0)
    worst = 0.0
    for t in times:
        lhs = kernel.evaluate(float(t))
        kmax = min(len(mask) - 1, int(math.ceil(2.0 * t)))
        rhs = 2.0 * sum(mask.complex_h[k] * kernel.evaluate(2.0 * t - k) for k in range(kmax + 1))
        worst = max(worst, abs(lhs - rhs))
    return worst
