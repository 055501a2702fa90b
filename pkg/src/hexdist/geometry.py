"""Canonical coordinates for each distance configuration and exact samplers.

Hexagon 1 is centred at the origin with vertices ``Q0..Q5`` at angles
30, 90, ..., 330 degrees.  It splits into three unit rhombuses R1, R2, R3
meeting at the centre.  Hexagon 2 is hexagon 1 shifted by ``(sqrt(3), 0)``
so the two share the vertical side ``x = sqrt(3)/2``; S1..S3 are the
shifted rhombuses.

Random streams come from numpy's PCG64 bit generator.  Independent
per-worker streams are derived with :class:`numpy.random.SeedSequence`
spawn keys, so a ``(seed, worker)`` pair always yields the same stream.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .distributions import DistanceKind

__all__ = [
    "ConvexPolygon",
    "PlacementPair",
    "HEXAGON_1",
    "HEXAGON_2",
    "make_rng",
    "spawn_rngs",
    "canonical_placement",
    "uniform_point",
    "uniform_points",
    "sample_distance",
    "sample_distances",
    "sample_distances_split",
    "min_max_distance",
    "polygon_moments",
    "write_samples_csv",
]

_S3 = math.sqrt(3.0)


@dataclass(frozen=True)
class ConvexPolygon:
    """Strictly convex polygon with counterclockwise vertices."""

    vertices: np.ndarray = field(repr=False)
    name: str = ""

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
            raise ValueError("polygon needs at least three 2-D vertices")
        if not np.all(np.isfinite(v)):
            raise ValueError("polygon vertices must be finite")
        edges = np.roll(v, -1, axis=0) - v
        turns = edges[:, 0] * np.roll(edges, -1, axis=0)[:, 1] - edges[:, 1] * np.roll(edges, -1, axis=0)[:, 0]
        if np.any(turns <= 1e-14):
            raise ValueError(f"polygon {self.name!r} is degenerate or not strictly convex/counterclockwise")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @property
    def area(self) -> float:
        x, y = self.vertices[:, 0], self.vertices[:, 1]
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))

    @property
    def centroid(self) -> np.ndarray:
        return polygon_moments(self)[1]

    def translated(self, dx: float, dy: float, name: str = "") -> "ConvexPolygon":
        return ConvexPolygon(self.vertices + np.array([dx, dy]), name or self.name)

    def contains(self, points, tol: float = 1e-12) -> np.ndarray:
        """Boolean mask of points lying inside or on the boundary."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        v = self.vertices
        e = np.roll(v, -1, axis=0) - v
        rel = pts[:, None, :] - v[None, :, :]
        cross = e[None, :, 0] * rel[:, :, 1] - e[None, :, 1] * rel[:, :, 0]
        return np.all(cross >= -tol, axis=1)

    def fan_triangles(self) -> np.ndarray:
        """Triangles ``(v0, v_i, v_{i+1})`` as an array of shape (n-2, 3, 2)."""
        v = self.vertices
        return np.stack([np.broadcast_to(v[0], (len(v) - 2, 2)), v[1:-1], v[2:]], axis=1)


def _poly(points: Iterable[Sequence[float]], name: str) -> ConvexPolygon:
    return ConvexPolygon(np.array(list(points), dtype=float), name)


O = (0.0, 0.0)
Q0 = (_S3 / 2, 0.5)
Q1 = (0.0, 1.0)
Q2 = (-_S3 / 2, 0.5)
Q3 = (-_S3 / 2, -0.5)
Q4 = (0.0, -1.0)
Q5 = (_S3 / 2, -0.5)

HEXAGON_1 = _poly([Q0, Q1, Q2, Q3, Q4, Q5], "H1")
HEXAGON_2 = HEXAGON_1.translated(_S3, 0.0, "H2")

R1 = _poly([O, Q5, Q0, Q1], "R1")
R2 = _poly([O, Q1, Q2, Q3], "R2")
R3 = _poly([O, Q3, Q4, Q5], "R3")
S1 = R1.translated(_S3, 0.0, "S1")
S2 = R2.translated(_S3, 0.0, "S2")
S3 = R3.translated(_S3, 0.0, "S3")

# opposite corner rhombuses of a side-2 hexagon
T_UP = _poly([(0.0, 2.0), (-_S3 / 2, 1.5), (0.0, 1.0), (_S3 / 2, 1.5)], "T_up")
T_DOWN = T_UP.translated(0.0, -3.0, "T_down")


@dataclass(frozen=True)
class PlacementPair:
    """Two regions; a distance sample joins a uniform point of each."""

    region_a: ConvexPolygon
    region_b: ConvexPolygon
    kind: DistanceKind

    @property
    def same_region(self) -> bool:
        return self.region_a is self.region_b


_PLACEMENTS = {
    DistanceKind.D1: (R1, R1),
    DistanceKind.D2: (R1, S2),
    DistanceKind.D3: (R1, S1),
    DistanceKind.D4: (R1, S3),
    DistanceKind.D5: (R3, S3),
    DistanceKind.D6: (R2, S3),
    DistanceKind.D7: (R2, S1),
    DistanceKind.D8: (T_UP, T_DOWN),
    DistanceKind.HEX_INTERIOR: (HEXAGON_1, HEXAGON_1),
    DistanceKind.HEX_ADJACENT: (HEXAGON_1, HEXAGON_2),
}


def canonical_placement(kind) -> PlacementPair:
    kind = DistanceKind.parse(kind)
    a, b = _PLACEMENTS[kind]
    return PlacementPair(a, b, kind)


# --------------------------------------------------------------------------
# random streams
# --------------------------------------------------------------------------

def make_rng(seed: int, worker: int | None = None) -> np.random.Generator:
    """PCG64 generator for ``seed``; ``worker`` selects an independent child stream."""
    if worker is None:
        ss = np.random.SeedSequence(seed)
    else:
        if worker < 0:
            raise ValueError("worker index must be non-negative")
        ss = np.random.SeedSequence(seed, spawn_key=(worker,))
    return np.random.Generator(np.random.PCG64(ss))


def spawn_rngs(seed: int, count: int) -> list[np.random.Generator]:
    return [make_rng(seed, i) for i in range(count)]


# --------------------------------------------------------------------------
# sampling
# --------------------------------------------------------------------------

def _points_from_uniforms(region: ConvexPolygon, u: np.ndarray) -> np.ndarray:
    # u has shape (n, 3): triangle pick, then two barycentric draws
    tris = region.fan_triangles()
    a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
    areas = 0.5 * np.abs((b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1])
                         - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0]))
    cum = np.cumsum(areas)
    cum /= cum[-1]
    idx = np.minimum(np.searchsorted(cum, u[:, 0], side="right"), len(tris) - 1)
    s, t = u[:, 1].copy(), u[:, 2].copy()
    flip = s + t > 1.0
    s[flip], t[flip] = 1.0 - s[flip], 1.0 - t[flip]
    p0 = a[idx]
    return p0 + s[:, None] * (b[idx] - p0) + t[:, None] * (c[idx] - p0)


def uniform_points(region: ConvexPolygon, rng: np.random.Generator, n: int) -> np.ndarray:
    """``n`` independent uniform points in ``region``, shape (n, 2).

    Fan triangulation from the first vertex; a triangle is picked by
    inverse transform on cumulative area and then sampled by the
    parallelogram-reflection method.  Consumes three uniforms per point.
    """
    if region.area <= 0.0:
        raise ValueError("cannot sample a polygon with zero area")
    return _points_from_uniforms(region, rng.random((int(n), 3)))


def uniform_point(region: ConvexPolygon, rng: np.random.Generator) -> np.ndarray:
    return uniform_points(region, rng, 1)[0]


def sample_distances(placement: PlacementPair, rng: np.random.Generator, n: int) -> np.ndarray:
    """``n`` distances between independent uniform points of the two regions.

    Each sample consumes six uniforms (three per point, region A first),
    so ``n`` draws reproduce ``n`` successive calls to
    :func:`sample_distance`.
    """
    u = rng.random((int(n), 6))
    pa = _points_from_uniforms(placement.region_a, u[:, :3])
    pb = _points_from_uniforms(placement.region_b, u[:, 3:])
    return np.hypot(pa[:, 0] - pb[:, 0], pa[:, 1] - pb[:, 1])


def sample_distance(placement: PlacementPair, rng: np.random.Generator) -> float:
    return float(sample_distances(placement, rng, 1)[0])


def sample_distances_split(placement: PlacementPair, n: int, seed: int,
                           workers: int = 1) -> np.ndarray:
    """Sample ``n`` distances over ``workers`` independent child streams.

    Worker ``i`` draws its share from ``make_rng(seed, i)``; shares are
    concatenated in worker order, so the result depends only on
    ``(seed, n, workers)``.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if workers == 1:
        return sample_distances(placement, make_rng(seed), n)
    sizes = [n // workers + (1 if i < n % workers else 0) for i in range(workers)]
    parts = [sample_distances(placement, make_rng(seed, i), m) for i, m in enumerate(sizes)]
    return np.concatenate(parts)


# --------------------------------------------------------------------------
# exact geometry
# --------------------------------------------------------------------------

def _point_segment_distance(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    ab = b - a
    t = np.clip(np.dot(p - a, ab) / np.dot(ab, ab), 0.0, 1.0)
    return float(np.hypot(*(p - (a + t * ab))))


def _separated(pa: ConvexPolygon, pb: ConvexPolygon, tol: float = 1e-12) -> bool:
    for poly in (pa, pb):
        v = poly.vertices
        edges = np.roll(v, -1, axis=0) - v
        for e in edges:
            axis = np.array([e[1], -e[0]]) / np.hypot(*e)
            ia, ib = pa.vertices @ axis, pb.vertices @ axis
            if ia.max() < ib.min() - tol or ib.max() < ia.min() - tol:
                return True
    return False


def min_max_distance(placement: PlacementPair) -> tuple[float, float]:
    """Exact smallest and largest distance between points of the two regions."""
    va, vb = placement.region_a.vertices, placement.region_b.vertices
    diff = va[:, None, :] - vb[None, :, :]
    dmax = float(np.sqrt((diff**2).sum(axis=2)).max())
    if not _separated(placement.region_a, placement.region_b):
        return 0.0, dmax
    best = math.inf
    for src, dst in ((va, vb), (vb, va)):
        for p in src:
            for a, b in zip(dst, np.roll(dst, -1, axis=0)):
                best = min(best, _point_segment_distance(p, a, b))
    return best, dmax


def polygon_moments(poly: ConvexPolygon) -> tuple[float, np.ndarray, np.ndarray]:
    """Area, centroid and covariance matrix of the uniform law on ``poly``.

    Uses the exact Green's-theorem polygon integrals of 1, x, y, x^2, xy, y^2.
    """
    v = poly.vertices
    x0, y0 = v[:, 0], v[:, 1]
    x1, y1 = np.roll(x0, -1), np.roll(y0, -1)
    c = x0 * y1 - x1 * y0
    area = c.sum() / 2
    cx = ((x0 + x1) * c).sum() / (6 * area)
    cy = ((y0 + y1) * c).sum() / (6 * area)
    ixx = ((x0**2 + x0 * x1 + x1**2) * c).sum() / (12 * area)
    iyy = ((y0**2 + y0 * y1 + y1**2) * c).sum() / (12 * area)
    ixy = ((x0 * y1 + 2 * x0 * y0 + 2 * x1 * y1 + x1 * y0) * c).sum() / (24 * area)
    cov = np.array([[ixx - cx * cx, ixy - cx * cy], [ixy - cx * cy, iyy - cy * cy]])
    return float(area), np.array([cx, cy]), cov


def write_samples_csv(samples, out=None) -> str | None:
    """Write samples under a ``distance`` header, one per row, 17 significant digits.

    ``out`` may be a path or a text stream; with ``None`` the CSV text is returned.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["distance"])
    for x in np.asarray(samples, dtype=float):
        writer.writerow([f"{x:.17g}"])
    text = buf.getvalue()
    if out is None:
        return text
    if hasattr(out, "write"):
        out.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    return None
