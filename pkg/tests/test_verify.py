import json
import math

import pytest

from hexdist import verify
from hexdist.distributions import HEX_INTERIOR_MIXTURE, DistanceKind, Mixture
from hexdist.verify import (
    CheckReport,
    check_cdf_consistency,
    check_continuity,
    check_mixture,
    check_mixture_ha,
    check_mixture_hi,
    check_normalization,
    check_recursion,
    ks_check,
    ks_critical_value,
    run_suite,
)

ALL_KINDS = list(DistanceKind)


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_normalization(kind):
    r = check_normalization(kind)
    assert r.passed and r.max_abs_error < 1e-10


def test_normalization_reports_failure_at_impossible_tolerance():
    r = check_normalization("hex-adjacent", tol=1e-18)
    assert not r.passed and r.threshold == 1e-18


def test_mixture_hi():
    r = check_mixture_hi()
    assert r.passed and r.grid_size >= 1001 and r.max_abs_error <= 1e-12


def test_mixture_ha():
    r = check_mixture_ha()
    assert r.passed and r.max_abs_error <= 1e-12


def test_mixture_tiny_grid_still_includes_breakpoints():
    r = check_mixture_hi(grid_size=2)
    assert r.passed and r.grid_size > 2


def test_wrong_mixture_fails():
    wrong = Mixture(((0.5, DistanceKind.D1), (0.5, DistanceKind.D2)))
    r = check_mixture("hex-interior", wrong)
    assert not r.passed and r.max_abs_error > 0.01


def test_mixture_rejects_bad_grid():
    with pytest.raises(ValueError):
        check_mixture("hex-interior", HEX_INTERIOR_MIXTURE, grid_size=1)


def test_recursion():
    r = check_recursion()
    assert r.passed and r.max_abs_error <= 1e-9
    assert r.grid_size >= 4001
    assert "worst at d=" in r.details and "[" in r.details


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_continuity(kind):
    r = check_continuity(kind)
    assert r.passed and r.max_abs_error < 1e-12


def test_continuity_counts_interior_breakpoints():
    from hexdist.distributions import piecewise
    assert check_continuity("D6").grid_size == 6
    for kind in ALL_KINDS:
        assert check_continuity(kind).grid_size == len(piecewise(kind).pieces) - 1


@pytest.mark.parametrize("kind", ["hex-interior", "hex-adjacent", "D3"])
def test_cdf_consistency(kind):
    r = check_cdf_consistency(kind)
    assert r.passed and r.max_abs_error < 1e-10


def test_critical_value():
    assert ks_critical_value(2000) == pytest.approx(0.036448, abs=1e-6)
    assert ks_critical_value(100_000) == pytest.approx(0.0051545, abs=1e-7)


@pytest.mark.parametrize("kind,n", [("hex-interior", 2000), ("hex-adjacent", 100_000), ("D3", 20_000)])
def test_ks(kind, n):
    r = ks_check(kind, n, seed=42)
    assert r.passed and r.ks_distance <= 1.63 / math.sqrt(n)


def test_ks_detects_wrong_distribution():
    # D2 samples tested against the D1 law must be rejected
    from hexdist.distributions import cdf_sorted
    from hexdist.geometry import canonical_placement, make_rng, sample_distances
    from scipy import stats
    x = sample_distances(canonical_placement("D2"), make_rng(0), 2000)
    stat = stats.kstest(x, lambda t: cdf_sorted("D1", t)).statistic
    assert stat > ks_critical_value(2000)


def test_ks_needs_enough_samples():
    with pytest.raises(ValueError):
        ks_check("D1", n=10)


def test_report_json():
    r = check_recursion(grid_size=101)
    doc = json.loads(r.to_json())
    assert set(doc) == {"check_name", "max_abs_error", "threshold", "pass", "grid_size", "details"}
    assert isinstance(CheckReport(**{**r.__dict__}).passed, bool)


class TestRunSuite:
    def test_fields(self):
        doc = run_suite("continuity")
        assert doc["schema_version"] == verify.SCHEMA_VERSION
        assert doc["suite"] == "continuity" and doc["pass"] is True
        assert len(doc["checks"]) == len(ALL_KINDS) and doc["ks"] == []

    def test_ks_suite_uses_one_stream_per_kind(self):
        doc = run_suite("ks", seed=42)
        assert [r["kind"] for r in doc["ks"]] == [k.value for k in ALL_KINDS]
        stats = [r["ks_distance"] for r in doc["ks"]]
        assert len(set(stats)) == len(stats)

    def test_deterministic(self):
        a = json.dumps(run_suite("all", seed=42), sort_keys=True)
        b = json.dumps(run_suite("all", seed=42), sort_keys=True)
        assert a == b

    def test_grid_override(self):
        doc = run_suite("mixture", grid=11)
        assert all(c["grid_size"] < 100 for c in doc["checks"])

    def test_unknown_suite(self):
        with pytest.raises(ValueError, match="normalization"):
            run_suite("everything")

    def test_failure_propagates(self, monkeypatch):
        monkeypatch.setattr(verify, "check_normalization",
                            lambda k: verify._report("n", 1.0, 0.0, 1))
        assert run_suite("normalization")["pass"] is False
