"""Machine-checkable validation of the closed forms.

Every check returns a report with a measured error, the threshold it was
held to and a pass flag; nothing is asserted here.  Grids always contain
every breakpoint of every distribution involved so that kinks cannot hide
errors.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import stats

from .distributions import (
    HEX_ADJACENT_MIXTURE,
    HEX_INTERIOR_MIXTURE,
    RECURSION_MIXTURE,
    DistanceKind,
    Mixture,
    cdf_eval,
    cdf_sorted,
    closed_cdf,
    mixture_pdf,
    pdf_eval,
    piecewise,
)
from .geometry import canonical_placement, make_rng, sample_distances

__all__ = [
    "CheckReport",
    "KsReport",
    "SCHEMA_VERSION",
    "SUITES",
    "check_normalization",
    "check_mixture_hi",
    "check_mixture_ha",
    "check_mixture",
    "check_recursion",
    "check_continuity",
    "check_cdf_consistency",
    "ks_critical_value",
    "ks_check",
    "run_suite",
]

SCHEMA_VERSION = 1
SUITES = ("all", "normalization", "mixture", "recursion", "continuity", "cdf", "ks")


@dataclass(frozen=True)
class CheckReport:
    check_name: str
    max_abs_error: float
    threshold: float
    passed: bool
    grid_size: int
    details: str = ""

    def to_dict(self) -> dict:
        return {
            "check_name": self.check_name,
            "max_abs_error": self.max_abs_error,
            "threshold": self.threshold,
            "pass": self.passed,
            "grid_size": self.grid_size,
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _report(name, err, threshold, grid_size, details="") -> CheckReport:
    err = float(err)
    return CheckReport(name, err, float(threshold), bool(err <= threshold), int(grid_size), details)


@dataclass(frozen=True)
class KsReport:
    kind: str
    n: int
    seed: int
    ks_distance: float
    critical_value: float
    passed: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def _grid(lo: float, hi: float, size: int, extra=()) -> np.ndarray:
    pts = np.linspace(lo, hi, max(int(size), 2))
    extra = [e for e in extra if lo <= e <= hi]
    return np.unique(np.concatenate([pts, np.asarray(extra, dtype=float)]))


def check_normalization(kind, tol: float = 1e-9) -> CheckReport:
    kind = DistanceKind.parse(kind)
    pw = piecewise(kind)
    total = pw.integrate()
    return _report(f"normalization[{kind.value}]", abs(total - 1.0), tol, len(pw.pieces),
                   f"integral={total!r}")


def check_mixture(target, mixture: Mixture, grid_size: int = 1001,
                  tol: float = 1e-12, name: str | None = None) -> CheckReport:
    """Sup-norm of ``mixture - pdf(target)`` over the target support."""
    target = DistanceKind.parse(target)
    if grid_size < 2:
        raise ValueError("grid_size must be >= 2")
    lo, hi = piecewise(target).support
    grid = _grid(lo, hi, grid_size, mixture.breakpoints() + piecewise(target).breakpoints)
    diff = np.abs(mixture_pdf(mixture, grid) - pdf_eval(target, grid))
    i = int(np.argmax(diff))
    return _report(name or f"mixture[{target.value}]", diff[i], tol, grid.size,
                   f"worst at d={float(grid[i])!r}")


def check_mixture_hi(grid_size: int = 1001, tol: float = 1e-12) -> CheckReport:
    return check_mixture(DistanceKind.HEX_INTERIOR, HEX_INTERIOR_MIXTURE, grid_size, tol,
                         "mixture_hi")


def check_mixture_ha(grid_size: int = 1001, tol: float = 1e-12) -> CheckReport:
    return check_mixture(DistanceKind.HEX_ADJACENT, HEX_ADJACENT_MIXTURE, grid_size, tol,
                         "mixture_ha")


def check_recursion(grid_size: int = 4001, tol: float = 1e-9) -> CheckReport:
    """Side-2 hexagon density two ways: scaled unit density vs weighted case sum.

    ``details`` names the breakpoint interval holding the largest error.
    """
    if grid_size < 2:
        raise ValueError("grid_size must be >= 2")
    bps = set(RECURSION_MIXTURE.breakpoints())
    bps.update(2.0 * b for b in piecewise(DistanceKind.HEX_INTERIOR).breakpoints)
    bps = sorted(bps)
    grid = _grid(0.0, 4.0, grid_size, bps)
    lhs = mixture_pdf(RECURSION_MIXTURE, grid)
    rhs = 0.5 * pdf_eval(DistanceKind.HEX_INTERIOR, grid / 2.0)
    diff = np.abs(lhs - rhs)
    i = int(np.argmax(diff))
    j = min(max(int(np.searchsorted(bps, grid[i], side="right")) - 1, 0), len(bps) - 2)
    details = f"worst at d={float(grid[i])!r} in [{bps[j]!r}, {bps[j + 1]!r}]"
    return _report("recursion", diff[i], tol, grid.size, details)


def check_continuity(kind, tol: float = 1e-9) -> CheckReport:
    """Left and right branches agree at every interior breakpoint."""
    kind = DistanceKind.parse(kind)
    pw = piecewise(kind)
    errs = []
    for i, b in enumerate(pw.breakpoints[1:-1]):
        errs.append(abs(float(pw.piece_value(i, b)) - float(pw.piece_value(i + 1, b))))
    worst = max(errs) if errs else 0.0
    details = ", ".join(f"{b:.6f}:{e:.2e}" for b, e in zip(pw.breakpoints[1:-1], errs))
    return _report(f"continuity[{kind.value}]", worst, tol, len(errs), details)


def check_cdf_consistency(kind, grid_size: int = 1000, tol: float = 1e-9) -> CheckReport:
    """Printed CDF (or the bulk CDF path for D1..D8) against quadrature of the density.

    The quadrature oracle accumulates adaptive integrals between successive
    grid points, never crossing a breakpoint.
    """
    kind = DistanceKind.parse(kind)
    pw = piecewise(kind)
    lo, hi = pw.support
    grid = np.linspace(lo, hi, int(grid_size))
    edges = np.unique(np.concatenate([grid, pw.breakpoints]))
    cum = np.zeros(edges.size)
    for i in range(1, edges.size):
        cum[i] = cum[i - 1] + pw.integrate(edges[i - 1], edges[i])
    oracle = np.interp(grid, edges, cum)
    if closed_cdf(kind) is not None:
        got, route = cdf_eval(kind, grid), "closed form"
    else:
        got, route = cdf_sorted(kind, grid), "bulk quadrature"
    diff = np.abs(got - oracle)
    i = int(np.argmax(diff))
    return _report(f"cdf_consistency[{kind.value}]", diff[i], tol, grid.size,
                   f"{route}; worst at d={float(grid[i])!r}")


def ks_critical_value(n: int) -> float:
    """Asymptotic 99% one-sample Kolmogorov-Smirnov critical value."""
    return 1.63 / math.sqrt(n)


def ks_check(kind, n: int = 2000, seed: int = 0, stream: int | None = None) -> KsReport:
    """KS distance between ``n`` seeded Monte Carlo distances and the exact CDF."""
    kind = DistanceKind.parse(kind)
    if n < 100:
        raise ValueError("ks_check needs n >= 100")
    x = sample_distances(canonical_placement(kind), make_rng(seed, stream), n)
    res = stats.kstest(x, lambda t: cdf_sorted(kind, t))
    crit = ks_critical_value(n)
    return KsReport(kind.value, int(n), int(seed), float(res.statistic), crit,
                    bool(res.statistic <= crit))


def run_suite(suite: str = "all", seed: int = 0, grid: int | None = None,
              n: int = 2000) -> dict:
    """Run one named suite (or all of them) and collect a JSON-ready document.

    ``grid`` overrides the default grid size of grid-based checks.  KS
    checks for kind ``i`` draw from child stream ``i`` of ``seed``.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    want = lambda name: suite in ("all", name)  # noqa: E731
    checks: list[CheckReport] = []
    ks: list[KsReport] = []
    kinds = list(DistanceKind)
    if want("normalization"):
        checks += [check_normalization(k) for k in kinds]
    if want("mixture"):
        checks += [check_mixture_hi(grid or 1001), check_mixture_ha(grid or 1001)]
    if want("recursion"):
        checks.append(check_recursion(grid or 4001))
    if want("continuity"):
        checks += [check_continuity(k) for k in kinds]
    if want("cdf"):
        checks += [check_cdf_consistency(k, grid or 1000)
                   for k in (DistanceKind.HEX_INTERIOR, DistanceKind.HEX_ADJACENT)]
    if want("ks"):
        ks += [ks_check(k, n, seed, stream=i) for i, k in enumerate(kinds)]
    ok = all(c.passed for c in checks) and all(r.passed for r in ks)
    return {
        "schema_version": SCHEMA_VERSION,
        "suite": suite,
        "seed": int(seed),
        "n": int(n),
        "checks": [c.to_dict() for c in checks],
        "ks": [r.to_dict() for r in ks],
        "pass": ok,
    }
