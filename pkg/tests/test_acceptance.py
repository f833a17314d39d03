"""The twelve acceptance criteria, each at its stated tolerance and time budget.

Every test prints one ``PASS``/``FAIL`` line (visible even without ``-s``)
before asserting.
"""

import math
import time
import warnings

import numpy as np
import pytest

from qspline import (
    Quaternion,
    bspline_time,
    bspline_time_grid,
    cardinal_bspline,
    fourier_inversion,
    gamma,
    gamma_quat,
    mask_zero_slope,
    real_pow_quat,
    refinement_residual,
    rotate_vector_part,
    semigroup_defect,
)
from qspline.cli import main
from qspline.fourier import riesz_sandwich
from qspline.gamma import binomial_sum_unit
from qspline.gaussian import (
    log_slope,
    lp_error,
    ratio_deviation,
    sinc_envelope_check,
)
from qspline.quaternion import random_rotation

from conftest import random_quaternion


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail, seconds, budget):
        ok = bool(ok) and seconds < budget
        line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d} {title}: {detail}; {seconds:.2f} s (< {budget:g} s)"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return emit


def _rel(x, y):
    return abs(x - y) / max(abs(y), 1e-300)


def test_01_classical_reduction(report):
    start = time.perf_counter()
    worst = 0.0
    for n in (2, 3, 4):
        t = np.linspace(-0.5, n + 0.5, 100)
        vals = np.array([bspline_time(n, x).a for x in t])
        worst = max(worst, float(np.max(np.abs(vals - cardinal_bspline(n, t)))))
    report(1, "classical reduction", worst < 1e-12, f"max abs error {worst:.2e} (< 1e-12)",
           time.perf_counter() - start, 1)


def test_02_gamma_triangulation(report):
    rng = np.random.default_rng(2)
    start = time.perf_counter()
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for _ in range(50):
            q = random_quaternion(rng, 0.5, 10)
            vals = [gamma(q, m, n=10 ** 6).value for m in ("complexified", "quadrature", "gauss_limit")]
            worst = max(worst, max(_rel(vals[i], vals[j]) for i in range(3) for j in range(3) if i != j))
    report(2, "Gamma triangulation (Gauss n = 1e6)", worst < 1e-6,
           f"max pairwise relative deviation {worst:.2e} (< 1e-6)", time.perf_counter() - start, 60)


def test_03_functional_equation(report):
    rng = np.random.default_rng(3)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        q = random_quaternion(rng, 0.1, 20)
        lhs = gamma_quat(q + 1.0).value
        worst = max(worst, _rel(lhs, q * gamma_quat(q).value))
    report(3, "functional equation", worst < 1e-10, f"max relative residual {worst:.2e} (< 1e-10)",
           time.perf_counter() - start, 5)


def test_04_binomial_identities(report):
    rng = np.random.default_rng(4)
    start = time.perf_counter()
    worst_plus = worst_minus = 0.0
    for _ in range(50):
        q = random_quaternion(rng, 0.5, 5)
        worst_plus = max(worst_plus, _rel(binomial_sum_unit(q, 1), real_pow_quat(2.0, q)))
        worst_minus = max(worst_minus, abs(binomial_sum_unit(q, -1)))
    report(4, "binomial identities", max(worst_plus, worst_minus) < 1e-8,
           f"2^q sum {worst_plus:.2e}, alternating sum {worst_minus:.2e} (< 1e-8)",
           time.perf_counter() - start, 30)


def test_05_cross_domain(report):
    orders = [Quaternion(1.5, 0.3, -0.2, 0.1), Quaternion(2, 1), Quaternion(2.5, 0, 0.5),
              Quaternion(3, -1, 1, 2), Quaternion(4.2, 0.2, 0.4, -0.3)]
    times = [0.3, 1.0, 1.7, 2.9, 4.5]
    start = time.perf_counter()
    worst = max(abs(bspline_time(q, t) - fourier_inversion(q, t)) for q in orders for t in times)
    report(5, "cross-domain equivalence", worst < 1e-5, f"max abs error {worst:.2e} (< 1e-5)",
           time.perf_counter() - start, 60)


def test_06_semigroup_dichotomy(report):
    rng = np.random.default_rng(6)
    xi = np.linspace(-40, 40, 512)
    start = time.perf_counter()
    parallel = 0.0
    for _ in range(10):
        u = rng.normal(size=3)
        u /= np.linalg.norm(u)
        q1 = Quaternion(rng.uniform(0.6, 3), *(rng.uniform(-1, 1) * u))
        q2 = Quaternion(rng.uniform(0.6, 3), *(rng.uniform(-1, 1) * u))
        parallel = max(parallel, semigroup_defect(q1, q2, xi))
    crossed = semigroup_defect(Quaternion(2, 1), Quaternion(2, 0, 1), xi)
    report(6, "semigroup dichotomy", parallel < 1e-10 and crossed > 1e-4,
           f"parallel defect {parallel:.2e} (< 1e-10), (e1, e2) defect {crossed:.2e} (> 1e-4)",
           time.perf_counter() - start, 10)


def test_07_riesz_sandwich(report):
    orders = [Quaternion(3, 1, -1), Quaternion(2, 1), Quaternion(1.5, 0, 0.5, 0.5)]
    start = time.perf_counter()
    results = [riesz_sandwich(q) for q in orders]
    bad = sum(r.violations for r in results)
    lowest = min(r.lower_a for r in results)
    report(7, "Riesz sandwich", bad == 0 and lowest > 0,
           f"violations {bad}, smallest lower bound {lowest:.3e}", time.perf_counter() - start, 30)


def test_08_refinement(report):
    start = time.perf_counter()
    res = refinement_residual(Quaternion(3, 1), np.linspace(0, 8, 161), 1e-8)
    report(8, "refinement equation", res < 1e-6, f"max residual {res:.2e} (< 1e-6)",
           time.perf_counter() - start, 30)


def test_09_mask_zero_order(report):
    start = time.perf_counter()
    slopes = [mask_zero_slope(q) for q in (Quaternion(3, 1), Quaternion(2.5, 0.3, -0.4, 0.2))]
    worst = max(abs(s - 2.0) for s in slopes)
    report(9, "mask zero order", worst <= 0.01, "slopes " + ", ".join(f"{s:.4f}" for s in slopes),
           time.perf_counter() - start, 5)


def test_10_gaussian_convergence(report):
    start = time.perf_counter()
    v = Quaternion(0, 0.2, -0.3, 0.4)
    a_vals = [1e2, 1e3, 1e4]
    devs = [ratio_deviation(v, a, 1.0) for a in a_vals]
    slope = log_slope(a_vals, devs)
    ratio_ok = devs[0] > devs[1] > devs[2] and -1.3 <= slope <= -0.7
    lp_ok = True
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for p in (1, 2, math.inf):
            errs = [lp_error(v, a, p) for a in (4, 64, 1024)]
            lp_ok &= errs[0] > errs[1] > errs[2]
    xi = np.linspace(-100, 100, 10 ** 5)
    envelope = max(sinc_envelope_check(a, xi) for a in (2.0, 10.0, 100.0))
    report(10, "Gaussian convergence", ratio_ok and lp_ok and envelope <= 0.0,
           f"ratio slope {slope:.3f}, L^p decreasing {lp_ok}, envelope excess {envelope:.2e}",
           time.perf_counter() - start, 120)


def test_11_figures(report, tmp_path, capsys):
    start = time.perf_counter()
    code = main(["figures", "--out", str(tmp_path)])
    capsys.readouterr()
    names = {"fig1_modulus_scalar.csv", "fig2_vector_parts.csv", "fig3_phase.csv", "fig4_v1_v2.csv"}
    present = names <= {p.name for p in tmp_path.iterdir()}
    rows = np.genfromtxt(tmp_path / "fig3_phase.csv", delimiter=",", skip_header=1)
    m0_zero = bool(np.all(rows[rows[:, 0] == 0][:, 3:] == 0.0))
    fig1 = np.genfromtxt(tmp_path / "fig1_modulus_scalar.csv", delimiter=",", skip_header=1)
    peaks = fig1[:, 1:6].max(axis=0)
    monotone = bool(np.all(np.diff(peaks) > 0))
    planarity = 0.0
    for m in range(5):
        vec = rows[rows[:, 0] == m][:, 3:]
        if np.any(vec):
            planarity = max(planarity, float(np.min(np.linalg.svd(vec, compute_uv=False))))
    report(11, "figure reproduction", code == 0 and present and m0_zero and monotone and planarity < 1e-9,
           f"files {present}, m=0 vector zero {m0_zero}, monotone {monotone}, planarity {planarity:.1e}",
           time.perf_counter() - start, 60)


def test_12_covariance_homogeneity(report):
    rng = np.random.default_rng(12)
    start = time.perf_counter()
    rot_gamma = 0.0
    for _ in range(100):
        q, rot = random_quaternion(rng, 0.2, 8, 2.0), random_rotation(rng)
        rot_gamma = max(rot_gamma, abs(gamma_quat(rotate_vector_part(q, rot)).value
                                       - rotate_vector_part(gamma_quat(q).value, rot)))
    rot_b = 0.0
    for _ in range(20):
        q, rot = random_quaternion(rng, 1.5, 5), random_rotation(rng)
        qr = rotate_vector_part(q, rot)
        for t in rng.uniform(0.1, 8, 20):
            rot_b = max(rot_b, abs(bspline_time(qr, t) - rotate_vector_part(bspline_time(q, t), rot)))
    homog = 0.0
    for _ in range(100):
        q, t = random_quaternion(rng, 1.2, 5), rng.uniform(0.1, 8)
        b = bspline_time(q, t)
        m = np.outer(q.vector, b.vector) - np.outer(b.vector, q.vector)
        homog = max(homog, float(np.max(np.abs(m))) / (np.linalg.norm(q.vector) * max(abs(b), 1e-300)))
    report(12, "covariance and homogeneity", rot_gamma < 1e-9 and rot_b < 1e-9 and homog < 1e-10,
           f"Gamma rotation {rot_gamma:.1e}, B rotation {rot_b:.1e}, homogeneity {homog:.1e}",
           time.perf_counter() - start, 30)
