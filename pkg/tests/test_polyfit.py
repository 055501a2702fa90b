import csv
import io
import json
from pathlib import Path

import numpy as np
import pytest

from hexdist.distributions import pdf_eval, support
from hexdist.polyfit import (
    DEFAULT_GRID_POINTS,
    PUBLISHED_COEFFICIENTS,
    PUBLISHED_NR,
    eval_poly,
    fit,
    published_coefficient_check,
    residual_table_csv,
)

DATA = json.loads((Path(__file__).parent / "data" / "polyfit_regression.json").read_text())


class TestEvalPoly:
    def test_linear(self):
        assert eval_poly([2.0, 3.0], 5.0) == 13.0

    def test_constant_broadcasts(self):
        np.testing.assert_array_equal(eval_poly([4.0], np.zeros(3)), [4.0, 4.0, 4.0])

    def test_matches_polyval(self):
        c = [0.3, -1.0, 2.0, 0.5]
        x = np.linspace(-2, 2, 9)
        np.testing.assert_allclose(eval_poly(c, x), np.polyval(c, x), rtol=1e-14)

    def test_empty(self):
        with pytest.raises(ValueError):
            eval_poly([], 1.0)


class TestFit:
    def test_degree_zero_is_grid_mean(self):
        r = fit("hex-interior", 0, 101)
        y = pdf_eval("hex-interior", np.linspace(*support("hex-interior"), 101))
        assert r.coefficients[0] == pytest.approx(y.mean(), abs=1e-14)

    def test_exact_for_polynomial_data(self, monkeypatch):
        import hexdist.polyfit as pf
        monkeypatch.setattr(pf, "pdf_eval", lambda kind, x: 1 - 2 * x + 0.5 * x**3)
        r = pf.fit("hex-interior", 3, 50)
        np.testing.assert_allclose(r.coefficients, [0.5, 0.0, -2.0, 1.0], atol=1e-11)
        assert r.norm_of_residuals < 1e-12

    @pytest.mark.parametrize("kind", ["hex-interior", "hex-adjacent"])
    def test_residual_norm_decreases_with_degree(self, kind):
        nrs = [fit(kind, d).norm_of_residuals for d in range(0, 21, 4)]
        assert all(b <= a + 1e-12 for a, b in zip(nrs, nrs[1:]))

    def test_degree_ten_sup_error(self):
        r = fit("hex-interior", 10)
        lo, hi = support("hex-interior")
        x = np.linspace(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo), 2001)
        assert np.abs(r(x) - pdf_eval("hex-interior", x)).max() <= 0.05

    def test_grid_record(self):
        r = fit("hex-adjacent", 4)
        assert r.grid["points"] == DEFAULT_GRID_POINTS
        assert r.grid["lo"] == 0.0 and r.grid["hi"] == pytest.approx(np.sqrt(13), abs=1e-15)

    @pytest.mark.parametrize("kind", ["hex-interior", "hex-adjacent"])
    def test_regression(self, kind):
        ref = DATA[kind]
        r = fit(kind, ref["degree"])
        assert r.norm_of_residuals == pytest.approx(ref["norm_of_residuals"], rel=1e-8)
        x = np.linspace(*support(kind), 301)
        np.testing.assert_allclose(r(x), eval_poly(ref["coefficients"], x), atol=1e-9)

    def test_degree_too_large(self):
        with pytest.raises(ValueError):
            fit("hex-interior", 10, 10)
        with pytest.raises(ValueError):
            fit("hex-interior", -1)

    def test_rank_deficiency_detected(self):
        with pytest.raises(np.linalg.LinAlgError):
            fit("hex-adjacent", 60, 61)

    def test_other_kinds_rejected(self):
        with pytest.raises(ValueError, match="hex-interior"):
            fit("D3", 4)

    def test_json(self):
        doc = json.loads(fit("hex-interior", 3).to_json())
        assert len(doc["coefficients"]) == 4 and doc["degree"] == 3


class TestPublishedPolynomials:
    def test_coefficient_counts(self):
        assert len(PUBLISHED_COEFFICIENTS["HexInterior"]) == 11
        assert len(PUBLISHED_COEFFICIENTS["HexAdjacent"]) == 21
        assert PUBLISHED_NR["HexInterior"] == 0.075608

    def test_interior_within_tolerance(self):
        r = published_coefficient_check("hex-interior")
        assert r.passed and r.max_abs_error < 0.02

    def test_strict_threshold_fails(self):
        assert not published_coefficient_check("hex-interior", threshold=1e-6).passed


def test_residual_csv():
    r = fit("hex-interior", 2, 11)
    rows = list(csv.reader(io.StringIO(residual_table_csv(r))))
    assert rows[0] == ["d", "pdf", "poly", "residual"] and len(rows) == 12
    d, y, p, res = map(float, rows[5])
    assert res == pytest.approx(p - y, abs=1e-15)
