"""Command-line front end: ``hexdist {eval,table,sample,validate,moments,fit}``.

Exit status: 0 success, 1 a validation suite failed, 2 bad usage,
3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import distributions as dist
from . import geometry, moments, polyfit, verify
from .distributions import DistanceKind

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


class UsageError(Exception):
    pass


def _kind(text: str) -> DistanceKind:
    try:
        return DistanceKind.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(x) or x <= 0:
        raise argparse.ArgumentTypeError(f"must be positive and finite: {text!r}")
    return x


def _finite_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"must be finite: {text!r}")
    return x


def _count(minimum: int):
    def parse(text: str) -> int:
        try:
            n = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if n < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}: {text!r}")
        return n
    return parse


def build_parser() -> argparse.ArgumentParser:
    kinds = ", ".join(k.cli_name for k in DistanceKind)
    p = argparse.ArgumentParser(
        prog="hexdist",
        description="Random distance distributions associated with regular hexagons.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, kind=True, fmt=("json",)):
        if kind:
            sp.add_argument("--kind", type=_kind, required=True, help=f"one of: {kinds}")
        sp.add_argument("--format", choices=fmt, default=fmt[0])
        sp.add_argument("--out", help="write to PATH instead of standard output")

    sp = sub.add_parser("eval", help="density and CDF at one distance")
    common(sp)
    sp.add_argument("--d", type=_finite_float, required=True)
    sp.add_argument("--scale", type=_positive_float, default=1.0)

    sp = sub.add_parser("table", help="d,pdf,cdf rows on a uniform grid plus breakpoints")
    common(sp, fmt=("csv", "json"))
    sp.add_argument("--points", type=_count(2), default=201)
    sp.add_argument("--scale", type=_positive_float, default=1.0)

    sp = sub.add_parser("sample", help="seeded Monte Carlo distances")
    common(sp, fmt=("csv", "json"))
    sp.add_argument("--n", type=_count(1), default=2000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--scale", type=_positive_float, default=1.0)
    sp.add_argument("--workers", type=_count(1), default=1,
                    help="split the stream over this many derived child streams")

    sp = sub.add_parser("validate", help="run verification suites")
    common(sp, kind=False)
    sp.add_argument("--suite", choices=verify.SUITES, default="all")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--grid", type=_count(2), default=None)
    sp.add_argument("--n", type=_count(100), default=2000, help="KS sample size")

    sp = sub.add_parser("moments", help="raw moments and variance")
    common(sp, fmt=("json", "csv"))
    sp.add_argument("--scale", type=_positive_float, default=1.0)
    sp.add_argument("--method", choices=moments.METHODS, default="quadrature")
    sp.add_argument("--n", type=_count(2), default=1_000_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--compare", action="store_true",
                    help="table of every available method next to the published rows")

    sp = sub.add_parser("fit", help="least-squares polynomial surrogate")
    common(sp, fmt=("json", "csv"))
    sp.add_argument("--degree", type=_count(0), required=True)
    sp.add_argument("--points", type=_count(2), default=polyfit.DEFAULT_GRID_POINTS)
    return p


def _json(doc: dict) -> str:
    doc = {"schema_version": verify.SCHEMA_VERSION, **doc}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([f"{v:.17g}" if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _cmd_eval(a):
    pdf = dist.scaled_pdf(a.kind, a.scale, a.d)
    cdf = dist.scaled_cdf(a.kind, a.scale, a.d)
    return _json({"kind": a.kind.value, "d": a.d, "scale": a.scale, "pdf": pdf, "cdf": cdf}), 0


def _cmd_table(a):
    lo, hi = (a.scale * b for b in dist.support(a.kind))
    bps = [a.scale * b for b in dist.breakpoints(a.kind)]
    d = np.unique(np.concatenate([np.linspace(lo, hi, a.points), bps]))
    pdf = dist.scaled_pdf(a.kind, a.scale, d)
    cdf = dist.cdf_sorted(a.kind, d / a.scale)
    if a.format == "csv":
        return _csv(["d", "pdf", "cdf"], zip(map(float, d), map(float, pdf), map(float, cdf))), 0
    rows = [{"d": float(x), "pdf": float(y), "cdf": float(z)} for x, y, z in zip(d, pdf, cdf)]
    return _json({"kind": a.kind.value, "scale": a.scale, "rows": rows}), 0


def _cmd_sample(a):
    x = a.scale * geometry.sample_distances_split(
        geometry.canonical_placement(a.kind), a.n, a.seed, a.workers)
    if a.format == "csv":
        return geometry.write_samples_csv(x), 0
    return _json({"kind": a.kind.value, "n": a.n, "seed": a.seed, "scale": a.scale,
                  "workers": a.workers, "distances": [float(v) for v in x]}), 0


def _cmd_validate(a):
    doc = verify.run_suite(a.suite, seed=a.seed, grid=a.grid, n=a.n)
    doc.pop("schema_version")
    return _json(doc), EXIT_OK if doc["pass"] else EXIT_VALIDATION


def _compare_rows(a):
    rows = []
    methods = ["quadrature", "covariance_oracle", "monte_carlo"]
    if a.kind is DistanceKind.HEX_INTERIOR:
        methods.insert(0, "closed_form")
    for m in methods:
        r = moments.moment_report(a.kind, a.scale, m, n=a.n, seed=a.seed)
        rows.append({"source": m, "m1": r.m1, "m2": r.m2, "variance": r.variance})
    ref = moments.TABLE_I.get(a.kind, {})
    for label, (m1, m2, var) in ref.items():
        rows.append({"source": f"published_{label}", "m1": a.scale * m1,
                     "m2": a.scale**2 * m2, "variance": a.scale**2 * var})
    return rows


def _cmd_moments(a):
    if a.compare:
        rows = _compare_rows(a)
        if a.format == "csv":
            return _csv(["source", "m1", "m2", "variance"],
                        ([r["source"], r["m1"], r["m2"], r["variance"]] for r in rows)), 0
        return _json({"kind": a.kind.value, "scale": a.scale, "rows": rows}), 0
    if a.method == "closed_form" and a.kind is not DistanceKind.HEX_INTERIOR:
        raise UsageError("closed_form moments exist only for hex-interior")
    r = moments.moment_report(a.kind, a.scale, a.method, n=a.n, seed=a.seed)
    if a.format == "csv":
        d = r.to_dict()
        return _csv(list(d), [[d[k] if d[k] is not None else "" for k in d]]), 0
    return _json(r.to_dict()), 0


def _cmd_fit(a):
    if a.kind not in (DistanceKind.HEX_INTERIOR, DistanceKind.HEX_ADJACENT):
        raise UsageError("fit supports hex-interior and hex-adjacent only")
    if a.degree >= a.points:
        raise UsageError(f"--degree must be smaller than --points ({a.points})")
    r = polyfit.fit(a.kind, a.degree, a.points)
    if a.format == "csv":
        return polyfit.residual_table_csv(r), 0
    doc = r.to_dict()
    ref = polyfit.PUBLISHED_NR.get(a.kind)
    if ref is not None:
        doc["published_norm_of_residuals"] = ref
    return _json(doc), 0


_COMMANDS = {
    "eval": _cmd_eval,
    "table": _cmd_table,
    "sample": _cmd_sample,
    "validate": _cmd_validate,
    "moments": _cmd_moments,
    "fit": _cmd_fit,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        text, status = _COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"hexdist: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (np.linalg.LinAlgError, FloatingPointError, ArithmeticError) as exc:
        print(f"hexdist: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
