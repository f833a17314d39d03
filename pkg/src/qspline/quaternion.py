"""Real quaternions, complex quaternions and quaternionic powers.

Components are stored as ``(scalar, e1, e2, e3)`` with ``e1 e2 = e3``,
``e2 e3 = e1``, ``e3 e1 = e2`` and ``e_i**2 = -1``.  :class:`Quaternion`
holds real components, :class:`Biquaternion` complex ones.  Both are
immutable.  Array kernels (``*_array``) work on numpy arrays whose last axis
has length 4 and are what the grid code uses.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .errors import DomainError, PreconditionError

_REAL_TYPES = (int, float, np.integer, np.floating)
_COMPLEX_TYPES = (complex, np.complexfloating)


def _hamilton(p, q):
    p0, p1, p2, p3 = p
    q0, q1, q2, q3 = q
    return (
        p0 * q0 - p1 * q1 - p2 * q2 - p3 * q3,
        p0 * q1 + p1 * q0 + p2 * q3 - p3 * q2,
        p0 * q2 - p1 * q3 + p2 * q0 + p3 * q1,
        p0 * q3 + p1 * q2 - p2 * q1 + p3 * q0,
    )


def _coerce(x):
    """Return ``(components, is_complex)`` or ``None`` for foreign types."""
    if isinstance(x, Quaternion):
        return x.components, False
    if isinstance(x, Biquaternion):
        return x.components, True
    if isinstance(x, _REAL_TYPES):
        return (float(x), 0.0, 0.0, 0.0), False
    if isinstance(x, _COMPLEX_TYPES):
        return (complex(x), 0j, 0j, 0j), True
    return None


def _build(comps, is_complex):
    if is_complex:
        return Biquaternion(*comps)
    return Quaternion(*comps)


class _Algebra:
    """Arithmetic shared by :class:`Quaternion` and :class:`Biquaternion`."""

    components: tuple

    def _is_complex(self) -> bool:
        return isinstance(self, Biquaternion)

    def __add__(self, other):
        c = _coerce(other)
        if c is None:
            return NotImplemented
        oc, ocx = c
        return _build(tuple(x + y for x, y in zip(self.components, oc)),
                      self._is_complex() or ocx)

    __radd__ = __add__

    def __neg__(self):
        return _build(tuple(-x for x in self.components), self._is_complex())

    def __pos__(self):
        return self

    def __sub__(self, other):
        c = _coerce(other)
        if c is None:
            return NotImplemented
        oc, ocx = c
        return _build(tuple(x - y for x, y in zip(self.components, oc)),
                      self._is_complex() or ocx)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        c = _coerce(other)
        if c is None:
            return NotImplemented
        oc, ocx = c
        return _build(_hamilton(self.components, oc), self._is_complex() or ocx)

    def __rmul__(self, other):
        c = _coerce(other)
        if c is None:
            return NotImplemented
        oc, ocx = c
        return _build(_hamilton(oc, self.components), self._is_complex() or ocx)

    def __truediv__(self, other):
        if isinstance(other, _REAL_TYPES + _COMPLEX_TYPES):
            cx = self._is_complex() or isinstance(other, _COMPLEX_TYPES)
            return _build(tuple(x / other for x in self.components), cx)
        return NotImplemented

    def __abs__(self) -> float:
        return math.sqrt(sum(abs(x) ** 2 for x in self.components))

    def norm(self) -> float:
        return abs(self)

    def to_array(self) -> np.ndarray:
        dtype = complex if self._is_complex() else float
        return np.array(self.components, dtype=dtype)

    @property
    def vector(self) -> np.ndarray:
        return self.to_array()[1:]

    @property
    def vnorm(self) -> float:
        """Euclidean norm of the vector part (sqrt of sum of |c_i|^2)."""
        return math.sqrt(sum(abs(x) ** 2 for x in self.components[1:]))


@dataclass(frozen=True)
class Quaternion(_Algebra):
    """Real quaternion ``a + v1 e1 + v2 e2 + v3 e3``."""

    a: float = 0.0
    v1: float = 0.0
    v2: float = 0.0
    v3: float = 0.0

    def __post_init__(self):
        for name in ("a", "v1", "v2", "v3"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @property
    def components(self) -> tuple:
        return (self.a, self.v1, self.v2, self.v3)

    @classmethod
    def from_array(cls, arr) -> "Quaternion":
        arr = np.asarray(arr)
        if np.iscomplexobj(arr):
            arr = arr.real
        return cls(*(float(x) for x in arr))

    @property
    def sc(self) -> float:
        return self.a

    @property
    def ve(self) -> "Quaternion":
        return Quaternion(0.0, self.v1, self.v2, self.v3)

    @property
    def unit_vector(self) -> Optional[np.ndarray]:
        """``v/|v|`` or ``None`` when the vector part vanishes."""
        n = self.vnorm
        if n == 0.0:
            return None
        return np.array([self.v1, self.v2, self.v3]) / n

    def conj(self) -> "Quaternion":
        return Quaternion(self.a, -self.v1, -self.v2, -self.v3)

    def inverse(self) -> "Quaternion":
        n2 = self.a ** 2 + self.v1 ** 2 + self.v2 ** 2 + self.v3 ** 2
        if n2 == 0.0:
            raise ZeroDivisionError("quaternion inverse of 0")
        return Quaternion(self.a / n2, -self.v1 / n2, -self.v2 / n2, -self.v3 / n2)

    def __str__(self) -> str:
        return format_quaternion(self)


@dataclass(frozen=True)
class Biquaternion(_Algebra):
    """Quaternion with complex components (an element of H_C)."""

    c0: complex = 0j
    c1: complex = 0j
    c2: complex = 0j
    c3: complex = 0j

    def __post_init__(self):
        for name in ("c0", "c1", "c2", "c3"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @property
    def components(self) -> tuple:
        return (self.c0, self.c1, self.c2, self.c3)

    @classmethod
    def from_array(cls, arr) -> "Biquaternion":
        return cls(*(complex(x) for x in np.asarray(arr)))

    @property
    def sc(self) -> complex:
        return self.c0

    @property
    def ve(self) -> "Biquaternion":
        return Biquaternion(0j, self.c1, self.c2, self.c3)

    def conj(self) -> "Biquaternion":
        """Negate the vector part and complex-conjugate every component."""
        return Biquaternion(self.c0.conjugate(), -self.c1.conjugate(),
                            -self.c2.conjugate(), -self.c3.conjugate())

    def inverse(self) -> "Biquaternion":
        # p * (c0 - c) = c0^2 + c.c, a complex scalar; zero for null elements.
        n2 = self.c0 ** 2 + self.c1 ** 2 + self.c2 ** 2 + self.c3 ** 2
        if n2 == 0:
            raise ZeroDivisionError("biquaternion is a zero divisor")
        return Biquaternion(self.c0 / n2, -self.c1 / n2, -self.c2 / n2, -self.c3 / n2)

    @property
    def real(self) -> Quaternion:
        return Quaternion(*(c.real for c in self.components))

    @property
    def imag(self) -> Quaternion:
        return Quaternion(*(c.imag for c in self.components))


QuatLike = Union[Quaternion, Biquaternion]


def as_quaternion(x) -> Quaternion:
    """Coerce a real number, 4-sequence or string into a :class:`Quaternion`."""
    if isinstance(x, Quaternion):
        return x
    if isinstance(x, SplineOrder):
        return x.q
    if isinstance(x, _REAL_TYPES):
        return Quaternion(float(x))
    if isinstance(x, str):
        return parse_quaternion(x)
    if isinstance(x, Biquaternion):
        raise TypeError("expected a real quaternion, got a Biquaternion")
    arr = np.asarray(x, dtype=float)
    if arr.shape != (4,):
        raise TypeError(f"cannot interpret {x!r} as a quaternion")
    return Quaternion(*arr)


def quat_mul(p: QuatLike, q: QuatLike) -> QuatLike:
    return p * q


def scalar_product(p: QuatLike, q: QuatLike) -> complex:
    """``<p, q> = Sc(p conj(q))``."""
    pc, _ = _coerce(p)
    qc, _ = _coerce(q)
    return sum(complex(x) * complex(y).conjugate() for x, y in zip(pc, qc))


def quat_isclose(p, q, rtol: float = 1e-12, atol: float = 0.0) -> bool:
    d = abs(_build(tuple(x - y for x, y in zip(_coerce(p)[0], _coerce(q)[0])), True))
    return d <= atol + rtol * max(abs(p), abs(q))


# --------------------------------------------------------------------------
# exponential, logarithm, powers


def _sinc_complex(s: complex) -> complex:
    if abs(s) < 1e-4:
        s2 = s * s
        return 1 - s2 / 6 + s2 * s2 / 120
    return cmath.sin(s) / s


def quat_exp(q: QuatLike) -> QuatLike:
    """Quaternion exponential ``e^a (cos|v| + v/|v| sin|v|)``.

    Complex quaternions use ``s = sqrt(v1^2 + v2^2 + v3^2)`` (complex, any
    branch): ``e^{c0} (cos s + v sin(s)/s)``.
    """
    if isinstance(q, Biquaternion):
        c0, c1, c2, c3 = q.components
        s = cmath.sqrt(c1 * c1 + c2 * c2 + c3 * c3)
        e = cmath.exp(c0)
        k = e * _sinc_complex(s)
        return Biquaternion(e * cmath.cos(s), k * c1, k * c2, k * c3)
    q = as_quaternion(q)
    ea = math.exp(q.a)
    n = q.vnorm
    if n == 0.0:
        return Quaternion(ea)
    k = ea * math.sin(n) / n
    return Quaternion(ea * math.cos(n), k * q.v1, k * q.v2, k * q.v3)


def quat_log(q: Quaternion) -> Quaternion:
    """Principal logarithm ``log|q| + (v/|v|) atan2(|v|, a)``.

    For negative reals the rotation axis is undefined; ``e1`` is used, which
    is harmless for products of commuting factors since ``exp(k pi e1)`` is
    ``(-1)**k`` for every integer ``k``.
    """
    q = as_quaternion(q)
    r = abs(q)
    if r == 0.0:
        raise DomainError("log(0)")
    n = q.vnorm
    if n == 0.0:
        if q.a > 0:
            return Quaternion(math.log(q.a))
        return Quaternion(math.log(-q.a), math.pi)
    k = math.atan2(n, q.a) / n
    return Quaternion(math.log(r), k * q.v1, k * q.v2, k * q.v3)


def _pow_from_log(logz: complex, q: Quaternion) -> Biquaternion:
    za = cmath.exp(q.a * logz)
    n = q.vnorm
    if n == 0.0:
        return Biquaternion(za)
    c = za * cmath.cos(n * logz)
    s = za * cmath.sin(n * logz) / n
    return Biquaternion(c, s * q.v1, s * q.v2, s * q.v3)


def complex_pow_quat(z: complex, q) -> Biquaternion:
    """``z^q = z^a [cos(|v| log z) + (v/|v|) sin(|v| log z)]``, principal log.

    ``0^q`` is 0 when Sc(q) > 0 (continuity) and a :class:`DomainError`
    otherwise.
    """
    q = as_quaternion(q)
    z = complex(z)
    if z == 0:
        if q.a > 0:
            return Biquaternion()
        raise DomainError(f"0**q undefined for Sc(q) = {q.a} <= 0")
    if z.imag == 0.0:
        # -0.0 would put negative reals on the wrong side of the cut
        z = complex(z.real, 0.0)
    return _pow_from_log(cmath.log(z), q)


def real_pow_quat(x: float, q) -> Quaternion:
    """``x^q`` for real ``x > 0``; the result is a real quaternion."""
    q = as_quaternion(q)
    if x <= 0:
        raise DomainError("real_pow_quat needs x > 0")
    lx = math.log(x)
    xa = math.exp(q.a * lx)
    n = q.vnorm
    if n == 0.0:
        return Quaternion(xa)
    s = xa * math.sin(n * lx) / n
    return Quaternion(xa * math.cos(n * lx), s * q.v1, s * q.v2, s * q.v3)


def semigroup_compatible(q1, q2, tol: float = 1e-12) -> bool:
    """True iff the vector parts of ``q1`` and ``q2`` are linearly dependent.

    This is exactly when ``z^q1 z^q2 = z^(q1+q2)`` near ``z = 1``.
    """
    v1 = as_quaternion(q1).vector
    v2 = as_quaternion(q2).vector
    wedge = np.cross(v1, v2)
    return float(np.linalg.norm(wedge)) <= tol * float(np.linalg.norm(v1) * np.linalg.norm(v2))


# --------------------------------------------------------------------------
# array kernels: last axis holds (scalar, e1, e2, e3)


def qmul_array(p, q) -> np.ndarray:
    """Hamilton product of broadcastable ``(..., 4)`` arrays."""
    p = np.asarray(p)
    q = np.asarray(q)
    return np.stack(_hamilton(np.moveaxis(p, -1, 0), np.moveaxis(q, -1, 0)), axis=-1)


def qconj_array(p) -> np.ndarray:
    """H_C conjugate: complex-conjugate components, negate the vector part."""
    out = np.conj(np.asarray(p)).copy()
    out[..., 1:] *= -1
    return out


def qabs_array(p) -> np.ndarray:
    return np.sqrt(np.sum(np.abs(np.asarray(p)) ** 2, axis=-1))


def pow_from_log_array(logz, q) -> np.ndarray:
    """``exp(q log z)`` in the form of :func:`complex_pow_quat`, vectorised."""
    q = as_quaternion(q)
    logz = np.asarray(logz, dtype=complex)
    za = np.exp(q.a * logz)
    out = np.zeros(logz.shape + (4,), dtype=complex)
    n = q.vnorm
    if n == 0.0:
        out[..., 0] = za
        return out
    out[..., 0] = za * np.cos(n * logz)
    s = za * np.sin(n * logz) / n
    out[..., 1] = s * q.v1
    out[..., 2] = s * q.v2
    out[..., 3] = s * q.v3
    return out


def complex_pow_quat_array(z, q) -> np.ndarray:
    """Vectorised :func:`complex_pow_quat`; zeros map to 0 (needs Sc(q) > 0)."""
    q = as_quaternion(q)
    z = np.asarray(z, dtype=complex)
    zero = z == 0
    if np.any(zero) and q.a <= 0:
        raise DomainError(f"0**q undefined for Sc(q) = {q.a} <= 0")
    # normalise -0.0 imaginary parts onto the upper side of the cut
    z = np.where(z.imag == 0.0, z.real + 0j, z)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = pow_from_log_array(np.log(np.where(zero, 1.0, z)), q)
    out[zero] = 0.0
    return out


def real_pow_quat_array(x, q) -> np.ndarray:
    """``x_+^q`` for a real array: ``x^q`` for ``x > 0``, 0 otherwise."""
    q = as_quaternion(q)
    x = np.asarray(x, dtype=float)
    pos = x > 0
    lx = np.log(np.where(pos, x, 1.0))
    xa = np.where(pos, np.exp(q.a * lx), 0.0)
    out = np.zeros(x.shape + (4,))
    n = q.vnorm
    if n == 0.0:
        out[..., 0] = xa
        return out
    out[..., 0] = xa * np.cos(n * lx)
    s = xa * np.sin(n * lx) / n
    out[..., 1] = s * q.v1
    out[..., 2] = s * q.v2
    out[..., 3] = s * q.v3
    return out


# --------------------------------------------------------------------------
# rotations acting on the vector part (1 (x) sigma)


def rotation_matrix(axis, angle: float) -> np.ndarray:
    """Rodrigues rotation by ``angle`` about ``axis`` (normalised here)."""
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    k = np.array([[0.0, -axis[2], axis[1]],
                  [axis[2], 0.0, -axis[0]],
                  [-axis[1], axis[0], 0.0]])
    return np.eye(3) + math.sin(angle) * k + (1.0 - math.cos(angle)) * (k @ k)


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    axis = rng.normal(size=3)
    return rotation_matrix(axis, rng.uniform(0.0, 2.0 * math.pi))


def rotate_vector_part(q: QuatLike, rot: np.ndarray) -> QuatLike:
    """Apply ``1 (x) sigma``: keep the scalar part, rotate the vector part."""
    arr = q.to_array()
    arr[1:] = rot @ arr[1:]
    return type(q).from_array(arr)


# --------------------------------------------------------------------------
# spline orders


@dataclass(frozen=True)
class SplineOrder:
    """A quaternion order with Sc(q) above an operation-specific floor."""

    q: Quaternion
    floor: float = 0.0
    vnorm: float = field(init=False)
    unit: Optional[tuple] = field(init=False)

    def __post_init__(self):
        q = as_quaternion(self.q)
        object.__setattr__(self, "q", q)
        if not q.a > self.floor:
            raise PreconditionError(
                f"order {format_order(q)} needs Sc(q) > {self.floor:g}")
        n = q.vnorm
        object.__setattr__(self, "vnorm", n)
        object.__setattr__(self, "unit", None if n == 0.0 else
                           (q.v1 / n, q.v2 / n, q.v3 / n))

    @classmethod
    def coerce(cls, x, floor: float) -> "SplineOrder":
        if isinstance(x, SplineOrder):
            if x.floor >= floor:
                return x
            return cls(x.q, floor)
        return cls(as_quaternion(x), floor)

    @property
    def a(self) -> float:
        return self.q.a


# --------------------------------------------------------------------------
# text form used on the command line:  A[+|-]Be1[+|-]Ce2[+|-]De3

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)"
_TERM = re.compile(
    rf"\s*([+-])?\s*({_NUM}(?:\s*/\s*{_NUM})?)?\s*\*?\s*(e[123])?\s*")


def _parse_coefficient(text: str) -> float:
    if "/" in text:
        num, den = (Fraction(p.strip()) for p in text.split("/"))
        return float(num / den)
    return float(text)


def parse_quaternion(text: str) -> Quaternion:
    """Parse ``"3+1/5e1-0.3e2+2e3"``-style literals.

    Coefficients are decimals or fractions; exponent notation is not
    accepted since ``5e1`` means five times ``e1``.  Each unit may appear
    once; a bare unit has coefficient 1.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty quaternion literal")
    comps = {"": 0.0, "e1": 0.0, "e2": 0.0, "e3": 0.0}
    seen = set()
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse quaternion literal {text!r}")
        sign, num, unit = m.groups()
        if num is None and unit is None:
            raise ValueError(f"dangling sign in {text!r}")
        if sign is None and not first:
            raise ValueError(f"missing operator in {text!r}")
        unit = unit or ""
        if unit in seen:
            raise ValueError(f"component {unit or 'scalar'} given twice in {text!r}")
        seen.add(unit)
        value = _parse_coefficient(num) if num is not None else 1.0
        comps[unit] = -value if sign == "-" else value
        pos = m.end()
        first = False
    return Quaternion(comps[""], comps["e1"], comps["e2"], comps["e3"])


def _positional(x: float) -> str:
    if x == 0.0:
        return "0"
    return np.format_float_positional(x, trim="-")


def format_order(q) -> str:
    """Canonical literal ``A+Be1+Ce2+De3`` (zero vector terms omitted).

    Uses shortest round-trip positional digits, so
    ``parse_quaternion(format_order(q)) == q`` exactly.
    """
    q = as_quaternion(q)
    out = _positional(q.a)
    for coef, unit in ((q.v1, "e1"), (q.v2, "e2"), (q.v3, "e3")):
        if coef == 0.0:
            continue
        sign = "-" if coef < 0 else "+"
        out += f"{sign}{_positional(abs(coef))}{unit}"
    return out


def format_quaternion(q, digits: int = 15) -> str:
    """Human-readable ``a + v1 e1 + v2 e2 + v3 e3`` with ``digits`` significant digits."""
    comps = q.components if isinstance(q, _Algebra) else tuple(q)

    def fmt(x):
        x = float(x)
        text = f"{abs(x):.{digits}g}"
        return ("-" if x < 0 and text != "0" else "+"), text

    s0, t0 = fmt(comps[0])
    out = ("-" if s0 == "-" else "") + t0
    for x, unit in zip(comps[1:], ("e1", "e2", "e3")):
        sign, text = fmt(x)
        out += f" {sign} {text} {unit}"
    return out
