"""Data for the four spline figures, written as CSV (plus optional SVG).

Figures 1-3 use the family ``q_m = 3 + m/5 e1 - 3m/10 e2 + 2m/5 e3``,
``m = 0..4``; Figure 4 compares ``3 - e1 + e2 + 2e3`` with ``3 + e1 + 2e2 + 2e3``.
All series are sampled on ``t = 0, 0.05, ..., 6``.

Alongside the files, :func:`write_figures` checks three structural facts:

* ``m = 0`` is the real quadratic B-spline, so its vector columns are zero;
* the maximal modulus grows with ``m``;
* for each ``m`` the vector parts lie in a plane through the origin
  (in fact on the line spanned by ``v``, by homogeneity).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from .quaternion import Quaternion, format_order
from .time_domain import SampledField, bspline_time_grid

T0, DT, N_SAMPLES = 0.0, 0.05, 121
FAMILY_M = tuple(range(5))
FIG4_ORDERS = (Quaternion(3, -1, 1, 2), Quaternion(3, 1, 2, 2))
PLANARITY_TOL = 1e-9


def family_order(m: int) -> Quaternion:
    """``3 + m/5 e1 - 3m/10 e2 + 2m/5 e3``."""
    return Quaternion(3.0, float(Fraction(m, 5)), float(Fraction(-3 * m, 10)), float(Fraction(2 * m, 5)))


def _fmt(x: float) -> str:
    return format(float(x) + 0.0, ".15g")  # + 0.0 turns -0.0 into 0.0


def write_csv(path: Path, header: Sequence[str], rows) -> None:
    """UTF-8, LF line endings, ``.15g`` numbers."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(x) if isinstance(x, (float, np.floating)) else x for x in row])


def planarity_residual(vectors: np.ndarray) -> float:
    """Largest distance of the rows of ``vectors`` from the best plane through 0."""
    vectors = np.asarray(vectors, dtype=float)
    if not np.any(vectors):
        return 0.0
    _, _, vt = np.linalg.svd(vectors, full_matrices=True)
    return float(np.max(np.abs(vectors @ vt[-1])))


# --------------------------------------------------------------------------
# SVG


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def write_svg(path: Path, series: Dict[str, tuple], title: str, width: int = 640, height: int = 400) -> None:
    """One polyline per ``name -> (x, y)`` series with a bounding frame."""
    xs = np.concatenate([np.asarray(x, float) for x, _ in series.values()])
    ys = np.concatenate([np.asarray(y, float) for _, y in series.values()])
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    x1 = x1 if x1 > x0 else x0 + 1.0
    y1 = y1 if y1 > y0 else y0 + 1.0
    pad = 40

    def sx(x):
        return pad + (x - x0) / (x1 - x0) * (width - 2 * pad)

    def sy(y):
        return height - pad - (y - y0) / (y1 - y0) * (height - 2 * pad)

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
             f'<rect x="{pad}" y="{pad}" width="{width - 2 * pad}" height="{height - 2 * pad}" '
             'fill="none" stroke="#888"/>',
             f'<text x="{width / 2}" y="{pad / 2}" text-anchor="middle" font-size="14">{title}</text>']
    for i, (name, (x, y)) in enumerate(series.items()):
        colour = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x, y))
        parts.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{pts}"/>')
        parts.append(f'<text x="{width - pad + 4}" y="{pad + 14 * (i + 1)}" font-size="10" '
                     f'fill="{colour}">{name}</text>')
    parts.append("</svg>")
    path.write_text("\n".join(parts) + "\n", encoding="utf-8")


# --------------------------------------------------------------------------


@dataclass
class FigureReport:
    outputs: List[str] = field(default_factory=list)
    orders: List[str] = field(default_factory=list)
    max_modulus: List[float] = field(default_factory=list)
    planarity: List[float] = field(default_factory=list)
    zero_vector_m0: bool = False

    @property
    def monotone(self) -> bool:
        return all(b > a for a, b in zip(self.max_modulus, self.max_modulus[1:]))

    @property
    def planar(self) -> bool:
        return max(self.planarity) < PLANARITY_TOL

    @property
    def ok(self) -> bool:
        return self.zero_vector_m0 and self.monotone and self.planar


def compute_series(threads: Optional[int] = None) -> Dict[str, SampledField]:
    series = {f"m{m}": bspline_time_grid(family_order(m), T0, DT, N_SAMPLES, threads) for m in FAMILY_M}
    for i, q in enumerate(FIG4_ORDERS, start=1):
        series[f"q{i}"] = bspline_time_grid(q, T0, DT, N_SAMPLES, threads)
    return series


def write_figures(out_dir, svg: bool = False, threads: Optional[int] = None) -> FigureReport:
    """Write ``fig1..fig4`` CSV files (and SVG if requested) into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    series = compute_series(threads)
    fam = [series[f"m{m}"] for m in FAMILY_M]
    t = fam[0].times
    mod = [np.linalg.norm(f.samples, axis=1) for f in fam]
    report = FigureReport()
    report.orders = [format_order(family_order(m)) for m in FAMILY_M] + [format_order(q) for q in FIG4_ORDERS]

    def emit(name, header, rows):
        path = out / f"{name}.csv"
        write_csv(path, header, rows)
        report.outputs.append(str(path))

    emit("fig1_modulus_scalar",
         ["t"] + [f"modulus_m{m}" for m in FAMILY_M] + [f"scalar_m{m}" for m in FAMILY_M],
         [[t[j]] + [mod[m][j] for m in FAMILY_M] + [fam[m].samples[j, 0] for m in FAMILY_M]
          for j in range(N_SAMPLES)])
    emit("fig2_vector_parts",
         ["t"] + [f"v{c}_m{m}" for c in (1, 2, 3) for m in FAMILY_M],
         [[t[j]] + [fam[m].samples[j, c] for c in (1, 2, 3) for m in FAMILY_M] for j in range(N_SAMPLES)])
    emit("fig3_phase", ["m", "t", "scalar", "v1", "v2", "v3"],
         [[m, t[j], *fam[m].samples[j]] for m in FAMILY_M for j in range(N_SAMPLES)])
    q1, q2 = series["q1"].samples, series["q2"].samples
    emit("fig4_v1_v2", ["t", "v1_q1", "v2_q1", "v1_q2", "v2_q2"],
         [[t[j], q1[j, 1], q1[j, 2], q2[j, 1], q2[j, 2]] for j in range(N_SAMPLES)])

    if svg:
        plots = {
            "fig1_modulus_scalar": ({f"|B| m={m}": (t, mod[m]) for m in FAMILY_M}
                                    | {f"Sc m={m}": (t, fam[m].samples[:, 0]) for m in FAMILY_M}),
            "fig2_vector_parts": {f"v{c} m={m}": (t, fam[m].samples[:, c]) for c in (1, 2, 3) for m in FAMILY_M},
            "fig3_phase": ({f"Sc/v1 m={m}": (fam[m].samples[:, 0], fam[m].samples[:, 1]) for m in FAMILY_M}
                           | {f"v1/v2 m={m}": (fam[m].samples[:, 1], fam[m].samples[:, 2]) for m in FAMILY_M}),
            "fig4_v1_v2": {"q1": (q1[:, 1], q1[:, 2]), "q2": (q2[:, 1], q2[:, 2])},
        }
        for name, data in plots.items():
            path = out / f"{name}.svg"
            write_svg(path, data, name)
            report.outputs.append(str(path))

    report.max_modulus = [float(np.max(m)) for m in mod]
    report.planarity = [planarity_residual(f.samples[:, 1:]) for f in fam]
    report.zero_vector_m0 = bool(np.all(fam[0].samples[:, 1:] == 0.0))
    return report
