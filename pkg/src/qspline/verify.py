"""Property suites behind ``qspline verify``.

Each check measures a residual and compares it with a tolerance.  Most checks
require ``residual <= tol``; "separation" checks (e.g. the semigroup defect
for non-parallel orders) require ``residual > tol`` and are marked with
``kind=">"``.  The ``fast`` profile uses reduced sample counts, ``strict``
the full ones; tolerances are the same in both.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass
from typing import Callable, Dict, List

import numpy as np

from . import fourier as F
from . import gamma as G
from . import gaussian as GS
from . import quaternion as Q
from . import time_domain as T
from .quadrature import fourier_inversion

SUITES = ("algebra", "gamma", "fourier", "time", "gaussian")


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    residual: float
    tol: float
    kind: str = "<="
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        if not math.isfinite(self.residual):
            return False
        if self.kind == ">":
            return self.residual > self.tol
        return self.residual <= self.tol


@dataclass(frozen=True)
class Profile:
    name: str
    strict: bool

    def count(self, strict_n: int, fast_n: int) -> int:
        return strict_n if self.strict else fast_n


_REGISTRY: Dict[str, List[Callable]] = {s: [] for s in SUITES}


def _check(suite: str, name: str, tol: float, kind: str = "<="):
    def deco(fn):
        def run(rng, profile):
            start = time.perf_counter()
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                residual = float(fn(rng, profile))
            return CheckResult(suite, name, residual, tol, kind, time.perf_counter() - start)

        _REGISTRY[suite].append(run)
        return fn

    return deco


def _rand_quat(rng, a_lo, a_hi, vmax=1.0) -> Q.Quaternion:
    return Q.Quaternion(rng.uniform(a_lo, a_hi), *rng.uniform(-vmax, vmax, 3))


def _rel(x, y) -> float:
    return abs(x - y) / max(abs(y), 1e-300)


def _homogeneity_residual(v: np.ndarray, value: Q.Quaternion) -> float:
    w = value.vector
    m = np.outer(v, w) - np.outer(w, v)
    return float(np.max(np.abs(m))) / max(np.linalg.norm(v) * max(np.linalg.norm(w), abs(value)), 1e-300)


# --------------------------------------------------------------------------
# algebra


@_check("algebra", "vector product: Sc(vw) = -<v,w>, Ve(vw) = v x w", 1e-12)
def _vec_mult(rng, profile):
    worst = 0.0
    for _ in range(profile.count(1000, 200)):
        v, w = rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3)
        p = Q.Quaternion(0, *v) * Q.Quaternion(0, *w)
        worst = max(worst, abs(p.a + np.dot(v, w)), float(np.max(np.abs(p.vector - np.cross(v, w)))))
    return worst


@_check("algebra", "|e^q| = e^Sc(q) (relative)", 1e-12)
def _exp_modulus(rng, profile):
    return max(_rel(abs(Q.quat_exp(q)), math.exp(q.a))
               for q in (_rand_quat(rng, -3, 3, 3) for _ in range(profile.count(1000, 200))))


@_check("algebra", "|e^(zq)| <= e^(sqrt2 |zq|), |z| = 1, |arg z| < pi/2", 0.0)
def _exp_bound(rng, profile):
    worst = -math.inf
    for _ in range(profile.count(1000, 200)):
        z = complex(math.cos(t := rng.uniform(-1.5, 1.5)), math.sin(t))
        qp = z * Q.Biquaternion(*_rand_quat(rng, -3, 3, 3).components)
        worst = max(worst, math.log(abs(Q.quat_exp(qp))) - math.sqrt(2.0) * abs(qp))
    return worst


@_check("algebra", "d/dz z^q = q z^(q-1) (central difference, relative)", 1e-6)
def _pow_derivative(rng, profile):
    worst, h = 0.0, 1e-5
    for _ in range(profile.count(200, 50)):
        q = _rand_quat(rng, 0.5, 4)
        z0 = complex(rng.uniform(0.3, 2.0), rng.uniform(-1.5, 1.5))
        fd = (Q.complex_pow_quat(z0 + h, q) - Q.complex_pow_quat(z0 - h, q)) / (2 * h)
        exact = q * Q.complex_pow_quat(z0, q - 1.0)
        worst = max(worst, abs(fd - exact) / abs(exact))
    return worst


@_check("algebra", "semigroup defect for e1, e2 on |z - 1| = 0.1 (min over orders of max)", 1e-6, ">")
def _semigroup_failure(rng, profile):
    z = 1.0 + 0.1 * np.exp(1j * np.linspace(0, 2 * np.pi, 64, endpoint=False))
    worst = math.inf
    for _ in range(profile.count(50, 10)):
        s1, s2 = rng.uniform(0.2, 2, 2)
        q1, q2 = Q.Quaternion(rng.uniform(0.5, 3), s1), Q.Quaternion(rng.uniform(0.5, 3), 0, s2)
        lhs = Q.qmul_array(Q.complex_pow_quat_array(z, q1), Q.complex_pow_quat_array(z, q2))
        rhs = Q.complex_pow_quat_array(z, q1 + q2)
        worst = min(worst, float(np.max(Q.qabs_array(lhs - rhs))))
    return worst


@_check("algebra", "order literal round trip format(parse(format(q))) = format(q)", 0.0)
def _parse_roundtrip(rng, profile):
    bad = 0
    for _ in range(profile.count(500, 100)):
        q = Q.Quaternion(*(np.round(rng.uniform(-5, 5, 4), 3)))
        s = Q.format_order(q)
        bad += Q.format_order(Q.parse_quaternion(s)) != s or Q.parse_quaternion(s) != q
    return bad


# --------------------------------------------------------------------------
# gamma


@_check("gamma", "Gamma(q+1) = q Gamma(q) (relative)", 1e-10)
def _gamma_recur(rng, profile):
    worst = 0.0
    for _ in range(profile.count(1000, 200)):
        q = _rand_quat(rng, 0.1, 20, 2)
        worst = max(worst, _rel(G.gamma_quat(q + 1.0).value, q * G.gamma_quat(q).value))
    return worst


@_check("gamma", "|Gamma(q)| / (sqrt2 Gamma(Sc q))", 1.0)
def _gamma_bound(rng, profile):
    return max(abs(G.gamma_quat(q).value) / G.gamma_modulus_bound(q)
               for q in (_rand_quat(rng, 0.1, 20, 3) for _ in range(profile.count(1000, 200))))


@_check("gamma", "rotation covariance Gamma(a + R v) = R Gamma(a + v)", 1e-10)
def _gamma_rotation(rng, profile):
    worst = 0.0
    for _ in range(profile.count(200, 40)):
        q, rot = _rand_quat(rng, 0.2, 8, 2), Q.random_rotation(rng)
        lhs = G.gamma_quat(Q.rotate_vector_part(q, rot)).value
        rhs = Q.rotate_vector_part(G.gamma_quat(q).value, rot)
        worst = max(worst, _rel(lhs, rhs))
    return worst


@_check("gamma", "homogeneity v_j Gamma_i = v_i Gamma_j", 1e-12)
def _gamma_homogeneity(rng, profile):
    return max(_homogeneity_residual(q.vector, G.gamma_quat(q).value)
               for q in (_rand_quat(rng, 0.2, 10, 2) for _ in range(profile.count(500, 100))))


@_check("gamma", "Sc(q) |(q)_3 / |q|^3 - 1| along a ray, Sc = 1e2..1e4", 5.0)
def _pochhammer_asymptotics(rng, profile):
    ray = Q.Quaternion(1.0, 0.4, -0.3, 0.2)
    return max(s * abs(G.pochhammer_modulus_ratio(s * ray, 3) - 1.0) for s in (1e2, 1e3, 1e4))


@_check("gamma", "Pochhammer: quaternion recursion vs complex product, j <= 50", 1e-10)
def _pochhammer_paths(rng, profile):
    worst = 0.0
    for _ in range(profile.count(200, 40)):
        q = _rand_quat(rng, 0.1, 5)
        table = G.PochhammerTable.build(q, 50)
        for j in (1, 2, 5, 10, 20, 35, 50):
            worst = max(worst, _rel(table[j], G.pochhammer_complex(q, j)))
    return worst


@_check("gamma", "quadrature vs complexified Gamma (relative)", 1e-10)
def _gamma_quadrature(rng, profile):
    return max(_rel(G.gamma_quadrature(q).value, G.gamma_quat(q).value)
               for q in (_rand_quat(rng, 0.5, 10, 2) for _ in range(profile.count(50, 10))))


@_check("gamma", "Gauss limit (n = 1e7) vs complexified Gamma (relative)", 1e-6)
def _gamma_gauss(rng, profile):
    return max(_rel(G.gamma_gauss_limit(q, 10 ** 7), G.gamma_quat(q).value)
               for q in (_rand_quat(rng, 0.5, 2, 0.5) for _ in range(profile.count(5, 2))))


@_check("gamma", "sum binom(q,j) = 2^q and sum (-1)^j binom(q,j) = 0", 1e-8)
def _binomial_sums(rng, profile):
    worst = 0.0
    for _ in range(profile.count(50, 10)):
        q = _rand_quat(rng, 0.5, 5)
        worst = max(worst, _rel(G.binomial_sum_unit(q, 1), Q.real_pow_quat(2.0, q)),
                    abs(G.binomial_sum_unit(q, -1)))
    return worst


# --------------------------------------------------------------------------
# fourier


@_check("fourier", "Xi: (1 - e^(-i xi))/(i xi) vs e^(-i xi/2) sinc(xi/2)", 1e-13)
def _xi_forms(rng, profile):
    xi = np.concatenate([np.geomspace(1e-3, 1e3, profile.count(20000, 2000))])
    xi = np.concatenate([xi, -xi])
    direct = (1.0 - np.exp(-1j * xi)) / (1j * xi)
    return float(np.max(np.abs(direct - F.xi_array(xi))))


@_check("fourier", "graph of Xi avoids the negative real axis (violations)", 0.0)
def _xi_graph(rng, profile):
    xi = np.linspace(-200, 200, profile.count(400001, 40001))
    xi = xi[~F.lattice_zero_mask(xi)]
    val = F.xi_array(xi)
    return int(np.count_nonzero((val.real < 0) & (val.imag == 0)))


@_check("fourier", "decay |B^_q| |xi|^Sc / (2^Sc sqrt cosh(2 pi |v|)) on [10, 1e4]", 1.0)
def _decay(rng, profile):
    worst = 0.0
    xi = np.geomspace(10, 1e4, profile.count(20000, 4000))
    for _ in range(profile.count(10, 3)):
        q = _rand_quat(rng, 0.6, 5)
        scaled = F.bspline_hat_modulus(q, xi) * xi ** q.a
        worst = max(worst, float(np.max(scaled)) / (2 ** q.a * math.sqrt(math.cosh(2 * math.pi * q.vnorm))))
    return worst


def _semigroup_grid(profile):
    return np.linspace(-40, 40, profile.count(4001, 512))


@_check("fourier", "semigroup B^_q1 B^_q2 = B^_(q1+q2), parallel vector parts", 1e-10)
def _semigroup_parallel(rng, profile):
    worst = 0.0
    for _ in range(profile.count(10, 3)):
        u = rng.normal(size=3)
        u /= np.linalg.norm(u)
        q1 = Q.Quaternion(rng.uniform(0.6, 3), *(rng.uniform(-1, 1) * u))
        q2 = Q.Quaternion(rng.uniform(0.6, 3), *(rng.uniform(-1, 1) * u))
        worst = max(worst, F.semigroup_defect(q1, q2, _semigroup_grid(profile)))
    return worst


@_check("fourier", "semigroup defect for vector parts e1, e2", 1e-4, ">")
def _semigroup_nonparallel(rng, profile):
    return F.semigroup_defect(Q.Quaternion(2, 1), Q.Quaternion(2, 0, 1), _semigroup_grid(profile))


@_check("fourier", "(-i xi)^q1 and (1 - e^(-i xi))^q2 commute, parallel vector parts", 1e-12)
def _symbol_commute(rng, profile):
    xi = np.linspace(0.01, 20, profile.count(2000, 400))
    worst = 0.0
    for _ in range(profile.count(10, 3)):
        u = rng.normal(size=3)
        q1 = Q.Quaternion(rng.uniform(0.5, 3), *(rng.uniform(-1, 1) * u))
        q2 = Q.Quaternion(rng.uniform(0.5, 3), *(rng.uniform(-1, 1) * u))
        A = Q.complex_pow_quat_array(-1j * xi, q1)
        B = Q.complex_pow_quat_array(1.0 - np.exp(-1j * xi), q2)
        scale = Q.qabs_array(A) * Q.qabs_array(B)
        worst = max(worst, float(np.max(Q.qabs_array(Q.qmul_array(A, B) - Q.qmul_array(B, A)) / scale)))
    return worst


@_check("fourier", "B^_q(2 pi k) = 0 exactly for 1 <= |k| <= 20", 0.0)
def _lattice_zeros(rng, profile):
    k = np.concatenate([np.arange(-20, 0), np.arange(1, 21)]).astype(float)
    return float(np.max(np.abs(F.bspline_hat_array(Q.Quaternion(2.5, 0.7, -0.2, 0.4), 2 * np.pi * k))))


@_check("fourier", "mask: |1 - sum |h0|^2| slope at 0 minus 2", 0.01)
def _mask_slope(rng, profile):
    return max(abs(F.mask_zero_slope(q) - 2.0) for q in (Q.Quaternion(3, 1), Q.Quaternion(2.5, 0.3, -0.4, 0.2)))


@_check("fourier", "mask coefficients sum to H0(0) = 1", 1e-8)
def _mask_total(rng, profile):
    return max(abs(F.mask_coefficients(q, 1e-10).total() - 1.0)
               for q in (Q.Quaternion(3, 1), Q.Quaternion(2.5, 0.3, -0.4, 0.2), Q.Quaternion(4)))


@_check("fourier", "autocorrelation: lattice sum vs Hurwitz closed form (relative)", 1e-9)
def _autocorrelation(rng, profile):
    xi = np.linspace(0.05, 2 * np.pi - 0.05, 200)
    worst = 0.0
    for q in (Q.Quaternion(3, 1), Q.Quaternion(2.5, 0.3, -0.4, 0.2)):
        K = F.riesz_shift_count(q.a)
        s = F.autocorrelation_symbol(q, xi, K)
        c = F.autocorrelation_closed_form(q, xi)
        worst = max(worst, float(np.max(np.abs(s - c) / c)))
    return worst


@_check("fourier", "Riesz lower bound (minimum over orders) is positive", 0.0, ">")
def _riesz_lower(rng, profile):
    orders = (Q.Quaternion(2), Q.Quaternion(3, 1, -1), Q.Quaternion(1.5, 0.5, 0, 0.5))
    return min(F.riesz_bounds(q)[0] for q in orders)


# --------------------------------------------------------------------------
# time


@_check("time", "terms with k > t contribute a literal zero", 0.0)
def _finite_sum(rng, profile):
    worst = 0.0
    for _ in range(profile.count(100, 20)):
        q, t = _rand_quat(rng, 1.1, 5), rng.uniform(0, 10)
        for k in range(int(t) + 1, int(t) + 6):
            worst = max(worst, abs(T.truncated_power(t - k, q - 1.0)))
    return worst


@_check("time", "real orders give real values (imaginary residue of the H_C sum)", 1e-12)
def _real_closure(rng, profile):
    worst = 0.0
    for _ in range(profile.count(50, 10)):
        q, t = _rand_quat(rng, 1.1, 5), rng.uniform(0.1, 8)
        total = sum((G.binom_quat(q, k) * ((-1) ** k) * Q.complex_pow_quat(t - k, q - 1.0)
                     for k in range(int(math.floor(t)) + 1)), Q.Biquaternion(0))
        worst = max(worst, abs(total.imag) / max(abs(total), 1.0))
    return worst


@_check("time", "q = 2, 3, 4 reproduce cardinal B-splines", 1e-12)
def _classical(rng, profile):
    worst = 0.0
    for n in (2, 3, 4):
        times = np.linspace(0, n + 1, 100)
        ref = T.cardinal_bspline(n, times)
        vals = T.bspline_time_grid(float(n), 0.0, times[1] - times[0], 100).samples[:, 0]
        worst = max(worst, float(np.max(np.abs(vals - ref))))
    return worst


@_check("time", "refinement residual with the default series tolerance", 10 * T.EvalConfig().series_tol)
def _refinement(rng, profile):
    times = np.linspace(0, 8, profile.count(161, 41))
    orders = (Q.Quaternion(3, 1), Q.Quaternion(2.5, 0, 0.5), Q.Quaternion(4, -1, 0, 1))
    return max(T.refinement_residual(q, times, T.EvalConfig().series_tol) for q in orders)


@_check("time", "homogeneity v_j B_i = v_i B_j", 1e-10)
def _time_homogeneity(rng, profile):
    worst = 0.0
    for _ in range(profile.count(100, 20)):
        q, t = _rand_quat(rng, 1.2, 5), rng.uniform(0.1, 8)
        worst = max(worst, _homogeneity_residual(q.vector, T.bspline_time(q, t)))
    return worst


@_check("time", "rotation covariance B_(a + R v)(t) = R B_(a+v)(t)", 1e-9)
def _time_rotation(rng, profile):
    worst = 0.0
    n = profile.count(20, 5)
    for _ in range(n):
        q, rot = _rand_quat(rng, 1.5, 5), Q.random_rotation(rng)
        qr = Q.rotate_vector_part(q, rot)
        for t in rng.uniform(0.1, 8, n):
            lhs, rhs = T.bspline_time(qr, t), Q.rotate_vector_part(T.bspline_time(q, t), rot)
            worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1.0))
    return worst


@_check("time", "time domain vs Fourier inversion on [0.25, 6]", 1e-5)
def _cross_domain(rng, profile):
    worst = 0.0
    times = np.linspace(0.25, 6, profile.count(24, 6))
    for a in (1.5, 2.5, 3.5):
        q = Q.Quaternion(a, *rng.uniform(-0.5, 0.5, 3))
        for t in times:
            worst = max(worst, abs(T.bspline_time(q, t) - fourier_inversion(q, t)))
    return worst


@_check("time", "partition of unity sum_k B_q(t - k) = 1 (k >= -400)", 1e-7)
def _partition(rng, profile):
    q = Q.Quaternion(3, 0.5, -0.5, 0.25)
    kernel = T._kernel(q, 410.0)
    worst = 0.0
    for t in np.linspace(0, 1, profile.count(11, 3)):
        total = sum(kernel.evaluate(t - k) for k in range(-400, 2))
        worst = max(worst, abs(total - 1.0))
    return worst


# --------------------------------------------------------------------------
# gaussian


@_check("gaussian", "quat_sqrt(q)^2 = q (relative)", 1e-12)
def _sqrt(rng, profile):
    worst = 0.0
    for _ in range(profile.count(1000, 200)):
        q = _rand_quat(rng, 1e-3, 10, 5)
        r = GS.quat_sqrt(q)
        worst = max(worst, _rel(r * r, q))
    return worst


@_check("gaussian", "Gaussian transforms vs adaptive quadrature (relative)", 1e-7)
def _gaussian_oracle(rng, profile):
    worst = _rel(GS.modulated_gaussian_ft(Q.Quaternion(1 / 24, 1 / 24), 12.0, 0.5),
                 GS.modulated_gaussian_ft_oracle(Q.Quaternion(1 / 24, 1 / 24), 12.0, 0.5))
    for _ in range(profile.count(100, 15)):
        q = _rand_quat(rng, 0.05, 5)
        alpha, t = rng.uniform(-1, 1), rng.uniform(-3, 3)
        closed = GS.modulated_gaussian_ft(q, alpha, t)
        worst = max(worst, abs(closed - GS.modulated_gaussian_ft_oracle(q, alpha, t)) / max(abs(closed), 1e-3))
    return worst


@_check("gaussian", "sinc envelope, 1e5 points, a in {2, 5, 10, 100} (max violation)", 0.0)
def _sinc_envelope(rng, profile):
    xi = np.linspace(-20, 20, 100001)
    return max(GS.sinc_envelope_check(a, xi) for a in (2, 5, 10, 100))


@_check("gaussian", "|B^_q(xi/sqrt a)| below the a-independent envelope, a in {2, 10, 100}", 0.0)
def _transform_envelope(rng, profile):
    xi = np.linspace(-400, 400, profile.count(200001, 20001))
    vs = (Q.Quaternion(0), Q.Quaternion(0, 1), Q.Quaternion(0, 0.3, -0.4, 0.5))
    return max(GS.envelope_violation(v, a, xi) for v in vs for a in (2, 10, 100))


@_check("gaussian", "|A_q| below e^(3|v|^2) e^(-(|xi|/sqrt24 - sqrt3 |v|)^2)", 1e-15)
def _approximant_envelope(rng, profile):
    xi = np.linspace(-80, 80, 8001)
    worst = -math.inf
    for v in (Q.Quaternion(0, 1), Q.Quaternion(0, 1, -1), Q.Quaternion(0, 0.2, 0.1)):
        for a in (2, 16, 1024):
            g = GS.GaussianApproximant.build(v, a)
            worst = max(worst, float(np.max(Q.qabs_array(g.approx_hat(xi)) / g.envelope(xi))) - 1.0)
    return worst


@_check("gaussian", "pointwise ratio: log-slope of |ratio - 1| in a, minus (-1)", 0.3)
def _ratio_slope(rng, profile):
    a_list = (1e2, 1e3, 1e4)
    worst = 0.0
    for v in (Q.Quaternion(0, 1), Q.Quaternion(0, 0.5, -0.5, 0.2)):
        for xi in (0.5, 1.0, 2.0):
            devs = [GS.ratio_deviation(v, a, xi) for a in a_list]
            if any(d2 >= d1 for d1, d2 in zip(devs, devs[1:])):
                return math.inf
            worst = max(worst, abs(GS.log_slope(a_list, devs) + 1.0))
    return worst


@_check("gaussian", "L^p errors (p = 1, 2, inf) strictly decrease over a = 4, 64, 1024; final value", 0.05)
def _lp(rng, profile):
    worst = 0.0
    for v in (Q.Quaternion(0), Q.Quaternion(0, 1, -1)):
        for p in (1.0, 2.0, math.inf):
            errs = GS.lp_convergence_trend(v, (4, 64, 1024), p)
            if any(e2 >= e1 for e1, e2 in zip(errs, errs[1:])):
                return math.inf
            worst = max(worst, errs[-1])
    return worst


# --------------------------------------------------------------------------


def run_suite(suite: str = "all", profile: str = "fast", seed: int = 20240601) -> List[CheckResult]:
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    if profile not in ("fast", "strict"):
        raise ValueError(f"unknown tolerance profile {profile!r}")
    prof = Profile(profile, profile == "strict")
    names = SUITES if suite == "all" else (suite,)
    results = []
    for name in names:
        rng = np.random.default_rng(seed)
        for check in _REGISTRY[name]:
            results.append(check(rng, prof))
    return results


def format_table(results: List[CheckResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'suite':<9} {'check':<{width}}  {'residual':>11}  {'':2} {'tol':>9}  {'time':>7}  result"]
    for r in results:
        lines.append(f"{r.suite:<9} {r.name:<{width}}  {r.residual:>11.3e}  {r.kind:>2} {r.tol:>9.1e}  "
                     f"{r.seconds:>6.2f}s  {'PASS' if r.passed else 'FAIL'}")
    n_fail = sum(not r.passed for r in results)
    lines.append(f"{len(results) - n_fail}/{len(results)} checks passed")
    return "\n".join(lines)
