"""Least-squares polynomial surrogates for the two hexagon densities.

Coefficients are always listed from the highest power down to ``d**0``.
Fits solve the Vandermonde least-squares problem by Householder QR on
column-normalised monomials; the normal equations would square an already
enormous condition number at degree 20.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass

import numpy as np
from scipy import linalg

from .distributions import DistanceKind, pdf_eval, support
from .verify import CheckReport

__all__ = [
    "PolyFitReport",
    "PUBLISHED_COEFFICIENTS",
    "PUBLISHED_NR",
    "DEFAULT_GRID_POINTS",
    "fit",
    "eval_poly",
    "published_coefficient_check",
    "residual_table_csv",
]

DEFAULT_GRID_POINTS = 1001

# published surrogates, transcribed digit for digit with their group factors
PUBLISHED_COEFFICIENTS = {
    DistanceKind.HEX_INTERIOR: tuple(1e2 * c for c in (
        -0.0146710, 0.136604, -0.538052, 1.167903, -1.525478, 1.230615,
        -0.605940, 0.175147, -0.043772, 0.025830, -0.000025,
    )),
    DistanceKind.HEX_ADJACENT: tuple(1e4 * c for c in (
        0.00000035, -0.000013, 0.000207, -0.002094, 0.014469, -0.072522,
        0.272508, -0.782682, 1.736254, -2.986406, 3.976655, -4.072372,
        3.169347, -1.841066, 0.778001, -0.230634, 0.045522, -0.005534,
        0.000394, -0.0000103, 0.00000007092,
    )),
}
PUBLISHED_NR = {DistanceKind.HEX_INTERIOR: 0.075608, DistanceKind.HEX_ADJACENT: 0.191157}
PUBLISHED_DEGREE = {DistanceKind.HEX_INTERIOR: 10, DistanceKind.HEX_ADJACENT: 20}

_FITTABLE = (DistanceKind.HEX_INTERIOR, DistanceKind.HEX_ADJACENT)


@dataclass(frozen=True)
class PolyFitReport:
    kind: str
    degree: int
    coefficients: tuple[float, ...]
    norm_of_residuals: float
    grid: dict

    def to_dict(self) -> dict:
        d = asdict(self)
        d["coefficients"] = list(self.coefficients)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __call__(self, d):
        return eval_poly(self.coefficients, d)


def eval_poly(coefficients, d):
    """Horner evaluation, highest power first."""
    coefficients = list(coefficients)
    if not coefficients:
        raise ValueError("need at least one coefficient")
    x = np.asarray(d, dtype=float)
    acc = np.zeros(x.shape) + coefficients[0]
    for c in coefficients[1:]:
        acc = acc * x + c
    return float(acc) if np.ndim(d) == 0 else acc


def _parse_fittable(kind) -> DistanceKind:
    kind = DistanceKind.parse(kind)
    if kind not in _FITTABLE:
        raise ValueError("polynomial fits are defined for hex-interior and hex-adjacent only")
    return kind


def fit(kind, degree: int, grid_points: int = DEFAULT_GRID_POINTS) -> PolyFitReport:
    """Least-squares polynomial of ``degree`` through the density on a uniform grid.

    The grid spans the exact support with both endpoints included.

    Raises
    ------
    ValueError
        ``degree`` negative or not smaller than ``grid_points``.
    numpy.linalg.LinAlgError
        The scaled Vandermonde matrix is numerically rank deficient.
    """
    kind = _parse_fittable(kind)
    degree, grid_points = int(degree), int(grid_points)
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if degree >= grid_points:
        raise ValueError(f"degree {degree} needs more than {grid_points} grid points")
    lo, hi = support(kind)
    x = np.linspace(lo, hi, grid_points)
    y = pdf_eval(kind, x)
    vander = np.vander(x, degree + 1)
    norms = np.linalg.norm(vander, axis=0)
    q, r = linalg.qr(vander / norms, mode="economic")
    diag = np.abs(np.diag(r))
    if diag.min() <= diag.max() * grid_points * np.finfo(float).eps:
        raise np.linalg.LinAlgError(
            f"rank-deficient fit: |R| diagonal spans {diag.min():.3e}..{diag.max():.3e}")
    coef = linalg.solve_triangular(r, q.T @ y) / norms
    nr = float(np.linalg.norm(eval_poly(coef, x) - y))
    grid = {"points": grid_points, "lo": lo, "hi": hi, "spacing": (hi - lo) / (grid_points - 1)}
    return PolyFitReport(kind.value, degree, tuple(float(c) for c in coef), nr, grid)


def published_coefficient_check(kind, threshold: float = 0.05, trim: float = 0.05,
                            grid_points: int = 2001) -> CheckReport:
    """Sup-norm gap between the published polynomial and the exact density.

    The support is trimmed by ``trim`` of its length at both ends.
    """
    kind = _parse_fittable(kind)
    lo, hi = support(kind)
    span = hi - lo
    x = np.linspace(lo + trim * span, hi - trim * span, grid_points)
    diff = np.abs(eval_poly(PUBLISHED_COEFFICIENTS[kind], x) - pdf_eval(kind, x))
    i = int(np.argmax(diff))
    return CheckReport(f"published_polynomial[{kind.value}]", float(diff[i]), float(threshold),
                       bool(diff[i] <= threshold), grid_points,
                       f"degree {PUBLISHED_DEGREE[kind]}; worst at d={float(x[i])!r}")


def residual_table_csv(report: PolyFitReport, points: int | None = None) -> str:
    """``d,pdf,poly,residual`` rows over the fit interval for plotting."""
    g = report.grid
    x = np.linspace(g["lo"], g["hi"], points or g["points"])
    y = pdf_eval(report.kind, x)
    p = eval_poly(report.coefficients, x)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["d", "pdf", "poly", "residual"])
    for row in zip(x, y, p, p - y):
        w.writerow([f"{v:.17g}" for v in row])
    return buf.getvalue()
