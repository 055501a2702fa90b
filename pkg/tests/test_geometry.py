import io
import math

import numpy as np
import pytest
from scipy import integrate

from hexdist import geometry as geo
from hexdist.distributions import DistanceKind, support
from hexdist.geometry import (
    HEXAGON_1,
    R1,
    R2,
    R3,
    ConvexPolygon,
    canonical_placement,
    make_rng,
    min_max_distance,
    polygon_moments,
    sample_distance,
    sample_distances,
    sample_distances_split,
    uniform_points,
    write_samples_csv,
)

ALL_KINDS = list(DistanceKind)
SQ3 = math.sqrt(3.0)


class TestRegions:
    @pytest.mark.parametrize("poly", [R1, R2, R3, geo.S1, geo.S2, geo.S3])
    def test_rhombus_area(self, poly):
        assert poly.area == pytest.approx(SQ3 / 2, abs=1e-12)

    def test_hexagon_area(self):
        assert HEXAGON_1.area == pytest.approx(1.5 * SQ3, abs=1e-12)
        assert geo.HEXAGON_2.area == pytest.approx(1.5 * SQ3, abs=1e-12)

    def test_triangle_pair_area(self):
        # two equilateral triangles of side 1 glued along an edge
        assert geo.T_UP.area == pytest.approx(SQ3 / 2, abs=1e-12)
        assert geo.T_DOWN.area == pytest.approx(SQ3 / 2, abs=1e-12)

    def test_rhombi_tile_hexagon(self):
        assert R1.area + R2.area + R3.area == pytest.approx(HEXAGON_1.area, abs=1e-12)

    def test_fan_triangles_cover_area(self):
        tris = HEXAGON_1.fan_triangles()
        a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
        areas = 0.5 * np.abs((b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1])
                             - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0]))
        assert areas.sum() == pytest.approx(HEXAGON_1.area, abs=1e-12)

    def test_contains(self):
        assert HEXAGON_1.contains([[0.0, 0.0]]).all()
        assert HEXAGON_1.contains([[0.0, 1.0]]).all()  # vertex counts as inside
        assert not HEXAGON_1.contains([[0.0, 1.01]]).any()
        assert not R1.contains([[-0.1, 0.0]]).any()

    @pytest.mark.parametrize("verts", [
        [(0, 0), (1, 0), (2, 0)],               # collinear
        [(0, 0), (0, 1), (1, 0)],               # clockwise
        [(0, 0), (1, 0)],                       # too few
        [(0, 0), (2, 0), (0.5, 0.5), (0, 2)],   # reflex vertex
        [(0, 0), (1, 0), (float("nan"), 1)],
    ])
    def test_degenerate_polygons_rejected(self, verts):
        with pytest.raises(ValueError):
            ConvexPolygon(np.array(verts, dtype=float), "bad")


class TestMoments:
    def test_hexagon_moments(self):
        area, c, cov = polygon_moments(HEXAGON_1)
        assert area == pytest.approx(1.5 * SQ3, abs=1e-12)
        np.testing.assert_allclose(c, 0.0, atol=1e-15)
        np.testing.assert_allclose(cov, np.diag([5 / 24, 5 / 24]), atol=1e-14)

    @pytest.mark.parametrize("poly", [R1, R2, geo.T_UP])
    def test_moments_against_dblquad(self, poly):
        v = poly.vertices
        edges = list(zip(v, np.roll(v, -1, axis=0)))

        def y_range(x):
            ys = [a[1] + (x - a[0]) * (b[1] - a[1]) / (b[0] - a[0])
                  for a, b in edges if a[0] != b[0] and min(a[0], b[0]) <= x <= max(a[0], b[0])]
            return min(ys), max(ys)

        xs = np.unique(v[:, 0])

        def integral(g):
            # vertical slices between successive vertex abscissae
            return sum(integrate.dblquad(lambda y, x: g(x, y), xa, xb,
                                         lambda x: y_range(x)[0], lambda x: y_range(x)[1],
                                         epsabs=1e-13, epsrel=1e-12)[0]
                       for xa, xb in zip(xs[:-1], xs[1:]))

        area, c, cov = polygon_moments(poly)
        a = integral(lambda x, y: 1.0)
        assert a == pytest.approx(area, abs=1e-12)
        assert integral(lambda x, y: x) / a == pytest.approx(c[0], abs=1e-12)
        assert integral(lambda x, y: y) / a == pytest.approx(c[1], abs=1e-12)
        assert integral(lambda x, y: (x - c[0]) ** 2) / a == pytest.approx(cov[0, 0], abs=1e-12)
        assert integral(lambda x, y: (x - c[0]) * (y - c[1])) / a == pytest.approx(cov[0, 1], abs=1e-12)


class TestPlacements:
    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_extremes_match_support(self, kind):
        lo, hi = min_max_distance(canonical_placement(kind))
        slo, shi = support(kind)
        assert lo == pytest.approx(slo, abs=1e-9)
        assert hi == pytest.approx(shi, abs=1e-9)

    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_samples_inside_support(self, kind):
        x = sample_distances(canonical_placement(kind), make_rng(3), 20_000)
        lo, hi = support(kind)
        assert x.min() >= lo - 1e-12 and x.max() <= hi + 1e-12

    def test_d8_samples_span(self):
        x = sample_distances(canonical_placement("D8"), make_rng(1), 50_000)
        assert 2.0 <= x.min() < 2.1 and 3.9 < x.max() <= 4.0

    def test_same_region_flag(self):
        assert canonical_placement("D1").same_region
        assert not canonical_placement("D2").same_region

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="hex-interior"):
            canonical_placement("D9")


class TestSampler:
    def test_points_inside(self):
        pts = uniform_points(HEXAGON_1, make_rng(0), 50_000)
        assert HEXAGON_1.contains(pts).all()

    def test_uniform_point_moments(self):
        pts = uniform_points(HEXAGON_1, make_rng(7), 1_000_000)
        np.testing.assert_allclose(pts.mean(axis=0), 0.0, atol=0.005)
        assert np.trace(np.cov(pts.T)) == pytest.approx(5 / 12, abs=0.005)

    def test_triangle_weighting(self):
        # quadrant masses of the hexagon are equal by symmetry
        pts = uniform_points(HEXAGON_1, make_rng(11), 400_000)
        q = np.histogram2d(pts[:, 0], pts[:, 1], bins=[[-1, 0, 1], [-1, 0, 1]])[0].ravel()
        np.testing.assert_allclose(q / q.sum(), 0.25, atol=0.004)

    def test_hex_interior_mean(self):
        x = sample_distances(canonical_placement("hex-interior"), make_rng(5), 1_000_000)
        assert x.mean() == pytest.approx(0.82626, abs=0.0015)

    def test_d1_range(self):
        x = sample_distances(canonical_placement("D1"), make_rng(0), 100_000)
        assert x.min() >= 0.0 and x.max() <= SQ3


class TestStreams:
    def test_reproducible(self):
        p = canonical_placement("D4")
        a = sample_distances(p, make_rng(123), 1000)
        b = sample_distances(p, make_rng(123), 1000)
        np.testing.assert_array_equal(a, b)

    def test_seeds_differ(self):
        p = canonical_placement("D4")
        assert not np.array_equal(sample_distances(p, make_rng(1), 100),
                                  sample_distances(p, make_rng(2), 100))

    def test_scalar_stream_matches_vector_stream(self):
        p = canonical_placement("hex-adjacent")
        rng = make_rng(9)
        scalar = np.array([sample_distance(p, rng) for _ in range(50)])
        np.testing.assert_array_equal(scalar, sample_distances(p, make_rng(9), 50))

    def test_worker_streams_independent_of_parent(self):
        a = make_rng(4).random(5)
        b = make_rng(4, 0).random(5)
        c = make_rng(4, 1).random(5)
        assert not np.array_equal(a, b) and not np.array_equal(b, c)

    def test_split_deterministic(self):
        p = canonical_placement("D6")
        a = sample_distances_split(p, 1001, 5, workers=4)
        b = sample_distances_split(p, 1001, 5, workers=4)
        assert a.shape == (1001,)
        np.testing.assert_array_equal(a, b)

    def test_split_single_worker_is_plain_stream(self):
        p = canonical_placement("D6")
        np.testing.assert_array_equal(sample_distances_split(p, 100, 5, 1),
                                      sample_distances(p, make_rng(5), 100))

    def test_bad_worker_args(self):
        with pytest.raises(ValueError):
            sample_distances_split(canonical_placement("D1"), 10, 0, workers=0)
        with pytest.raises(ValueError):
            make_rng(0, -1)


class TestCsv:
    def test_format_round_trip(self):
        x = sample_distances(canonical_placement("D2"), make_rng(0), 10)
        text = write_samples_csv(x)
        lines = text.splitlines()
        assert lines[0] == "distance" and len(lines) == 11
        np.testing.assert_array_equal(np.array([float(s) for s in lines[1:]]), x)

    def test_stream_and_path(self, tmp_path):
        buf = io.StringIO()
        assert write_samples_csv([1.0, 2.5], buf) is None
        path = tmp_path / "s.csv"
        write_samples_csv([1.0, 2.5], path)
        assert path.read_text() == buf.getvalue() == "distance\n1\n2.5\n"
