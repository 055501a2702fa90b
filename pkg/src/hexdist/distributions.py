"""Closed-form densities of random distances associated with unit hexagons.

Every density is stored as a :class:`PiecewisePdf`: an ordered list of
pieces, each holding the bracketed branch expression ``g(d)`` so that the
density on that piece is ``prefactor * d * g(d)``.  Unit side length is
assumed throughout; use :func:`scaled_pdf` / :func:`scaled_cdf` for other
sizes.

Branch expressions use four inverse-sine terms and four radicands:

=====  ====================  ========================
name   inverse sine of        radicand
=====  ====================  ========================
a1     sqrt(3) / (2d)         r1 = sqrt(4d^2 - 3)
a2     sqrt(3) / d            r2 = sqrt(d^2 - 3)
a3     3 sqrt(3) / (2d)       r3 = sqrt(4d^2 - 27)
a4     2 sqrt(3) / d          r4 = sqrt(d^2 - 12)
=====  ====================  ========================
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

__all__ = [
    "DistanceKind",
    "Piece",
    "PiecewisePdf",
    "Mixture",
    "HEX_INTERIOR_MIXTURE",
    "HEX_ADJACENT_MIXTURE",
    "RECURSION_MIXTURE",
    "piecewise",
    "pdf_eval",
    "cdf_eval",
    "cdf_sorted",
    "closed_cdf",
    "support",
    "breakpoints",
    "scaled_pdf",
    "scaled_cdf",
    "mixture_pdf",
    "integrate_piecewise",
    "QUAD_TOL",
]

SQRT3 = math.sqrt(3.0)
PI = math.pi
# pi / sqrt(3) shows up in nearly every branch
P3 = PI / SQRT3

HALF_SQRT3 = SQRT3 / 2.0
THREE_HALF_SQRT3 = 3.0 * SQRT3 / 2.0
SQRT7 = math.sqrt(7.0)
TWO_SQRT3 = 2.0 * SQRT3
SQRT13 = math.sqrt(13.0)

# absolute tolerance per piece for every quadrature in the package
QUAD_TOL = 1e-11


class DistanceKind(str, enum.Enum):
    """The ten distance configurations.

    D1..D8 are rhombus-to-rhombus placements, the last two are the
    hexagon-level distributions.
    """

    D1 = "D1"
    D2 = "D2"
    D3 = "D3"
    D4 = "D4"
    D5 = "D5"
    D6 = "D6"
    D7 = "D7"
    D8 = "D8"
    HEX_INTERIOR = "HexInterior"
    HEX_ADJACENT = "HexAdjacent"

    @property
    def cli_name(self) -> str:
        if self is DistanceKind.HEX_INTERIOR:
            return "hex-interior"
        if self is DistanceKind.HEX_ADJACENT:
            return "hex-adjacent"
        return self.value.lower()

    @classmethod
    def parse(cls, name: "str | DistanceKind") -> "DistanceKind":
        """Case-insensitive lookup by tag (``D3``, ``HexInterior``) or CLI name."""
        if isinstance(name, DistanceKind):
            return name
        key = str(name).strip().lower().replace("_", "-")
        for kind in cls:
            if key in (kind.value.lower(), kind.cli_name, kind.cli_name.replace("-", "")):
                return kind
        valid = ", ".join(k.cli_name for k in cls)
        raise ValueError(f"unknown distance kind {name!r}; valid names: {valid}")


# --------------------------------------------------------------------------
# clamped building blocks
# --------------------------------------------------------------------------

def _asin(x):
    # arguments are exactly 1 at breakpoints; rounding may push them over
    if isinstance(x, float):
        return math.asin(min(x, 1.0))
    return np.arcsin(np.minimum(x, 1.0))


def _sqrt(x):
    # radicands vanish at lower breakpoints and may round slightly negative
    if isinstance(x, float):
        return math.sqrt(x) if x > 0.0 else 0.0
    return np.sqrt(np.maximum(x, 0.0))


def _a1(d):
    return _asin(SQRT3 / (2.0 * d))


def _a2(d):
    return _asin(SQRT3 / d)


def _a3(d):
    return _asin(3.0 * SQRT3 / (2.0 * d))


def _a4(d):
    return _asin(2.0 * SQRT3 / d)


def _r1(d):
    return _sqrt(4.0 * d * d - 3.0)


def _r2(d):
    return _sqrt(d * d - 3.0)


def _r3(d):
    return _sqrt(4.0 * d * d - 27.0)


def _r4(d):
    return _sqrt(d * d - 12.0)


# --------------------------------------------------------------------------
# branch expressions (density = prefactor * d * branch(d))
# --------------------------------------------------------------------------

# D1: both points in the same rhombus
def _d1_0(d):
    return (4 / 3 + 2 * P3 / 9) * d**2 - 16 / 3 * d + 2 * P3


def _d1_1(d):
    return (8 / SQRT3 * (1 + d**2 / 3) * _a1(d) + (4 / 3 - 10 * P3 / 9) * d**2
            - 16 / 3 * d + 10 / 3 * _r1(d) - 2 * P3)


def _d1_2(d):
    return (4 / SQRT3 * (1 - d**2 / 3) * _a1(d) - (2 / 3 - 2 * P3 / 9) * d**2
            + _r1(d) - 2 * P3 / 3 - 1)


# D2: rhombuses sharing a side, different orientation
def _d2_0(d):
    return 4 / 3 * d - (1 / 3 + 2 * P3 / 9) * d**2


def _d2_1(d):
    return (-4 / SQRT3 * (d**2 / 3 + 1) * _a1(d) + (4 * P3 / 9 - 1 / 3) * d**2
            + 4 / 3 * d - 5 / 3 * _r1(d) + 2 * P3)


def _d2_2(d):
    return (-2 / SQRT3 * (d**2 / 3 + 2) * _a1(d) + (2 * P3 / 9 + 1 / 3) * d**2
            - 1.5 * _r1(d) + 2 * P3 + 0.5)


def _d2_3(d):
    return (2 / SQRT3 * (d**2 / 3 + 4) * _a2(d) - (2 * P3 / 9 + 1 / 3) * d**2
            + 10 / 3 * _r2(d) - 8 * P3 / 3 - 2)


# D3
def _d3_0(d):
    return -2 * d**2 / (3 * SQRT3) * _a1(d) + P3 / 3 * d**2 - _r1(d) / 6


def _d3_1(d):
    return ((d**2 + 4) / SQRT3 * _a1(d) - (1 / 3 + 2 * P3 / 9) * d**2 - 2 / 3 * d
            + 19 / 12 * _r1(d) - 4 * P3 / 3 - 0.75)


def _d3_2(d):
    return (-(d**2 / (3 * SQRT3) + 10 / SQRT3) * _a2(d)
            - (2 * d**2 / (3 * SQRT3) + 2 * SQRT3) * _a1(d)
            + (4 / 3 + 2 * P3 / 9) * d**2 - 13 / 6 * _r1(d) - 11 / 3 * _r2(d)
            - 2 / 3 * d + 16 * P3 / 3 + 5.5)


def _d3_3(d):
    return ((d**2 / (3 * SQRT3) + 2 * SQRT3) * _a2(d)
            - (2 * d**2 / (3 * SQRT3) + 2 * SQRT3) * _a1(d)
            - 13 / 6 * _r1(d) + 7 / 3 * _r2(d) + 2 * d - 0.5)


def _d3_4(d):
    return ((2 * d**2 / (3 * SQRT3) + 4 * SQRT3) * _a3(d)
            + (d**2 / (3 * SQRT3) + 2 * SQRT3) * _a2(d)
            - (2 * d**2 / (3 * SQRT3) + 2 * SQRT3) * _a1(d)
            - P3 / 3 * d**2 - 13 / 6 * _r1(d) + 7 / 3 * _r2(d)
            + 11 / 6 * _r3(d) + 2 * d - 2 * SQRT3 * PI - 0.5)


def _d3_5(d):
    return (-d**2 / (3 * SQRT3) * _a3(d) + (P3 / 9 - 1 / 3) * d**2 + 2 * d
            - _r3(d) / 4 - 2.25)


# D4
def _d4_0(d):
    return (2 * P3 / 9 - 1 / 6) * d**2


def _d4_1(d):
    return (2 / SQRT3 * (2 * d**2 / 3 + 1) * _a1(d) - (4 * P3 / 9 + 1 / 6) * d**2
            + _r1(d) - P3)


def _d4_2(d):
    return (1 / SQRT3 * (4 * d**2 / 3 + 1) * _a1(d) + (1 / 3 - 4 * P3 / 9) * d**2
            + 2 / 3 * _r1(d) - 2 / 3 * d - 2 * P3 / 3 + 0.5)


def _d4_3(d):
    return (5 / SQRT3 * _a1(d) - 4 / SQRT3 * (d**2 / 3 + 2) * _a2(d)
            + (4 * P3 / 9 - 1 / 3) * d**2 + 5 / 3 * _r1(d) - 4 * _r2(d)
            - 2 / 3 * d + 8 * P3 / 3 - 0.5)


def _d4_4(d):
    return (5 / SQRT3 * _a1(d) - 2 / SQRT3 * (d**2 / 3 + 2) * _a2(d)
            + (2 * P3 / 9 - 1 / 6) * d**2 + 5 / 3 * _r1(d) - 2 * _r2(d)
            - 2 * d + 4 * P3 / 3 - 0.5)


def _d4_5(d):
    return ((2 * d**2 / (3 * SQRT3) + 3 * SQRT3) * _a3(d)
            + (1 / 6 - 2 * P3 / 9) * d**2 + 1.5 * _r3(d) - 2 * d - SQRT3 * PI)


# D5
def _d5_0(d):
    return (1 / 3 - P3 / 9) * d**2


def _d5_1(d):
    return (-4 * d**2 / (3 * SQRT3) * _a1(d) + (P3 / 3 - 1) * d**2 + 8 / 3 * d
            - _r1(d) / 3 - 1)


def _d5_2(d):
    return (4 / SQRT3 * (d**2 / 3 - 2) * _a1(d) + (1 / 3 - P3 / 9) * d**2
            + 8 / 3 * d - 7 / 3 * _r1(d) + 4 * P3 / 3 + 1)


def _d5_3(d):
    return (4 / SQRT3 * (d**2 / 3 - 2) * _a1(d) + 2 * d**2 / (3 * SQRT3) * _a2(d)
            + (1 - P3 / 3) * d**2 - 7 / 3 * _r1(d) + 2 / 3 * _r2(d)
            + 4 * P3 / 3 + 3)


def _d5_4(d):
    return (2 / SQRT3 * (4 - d**2 / 3) * _a2(d) + (P3 / 9 - 1 / 3) * d**2
            + 2 * _r2(d) - 4 * P3 / 3 - 2)


# D6
def _d6_0(d):
    return (-(d**2 / (3 * SQRT3) + 1 / SQRT3) * _a1(d) + (1 / 6 + P3 / 9) * d**2
            - 5 / 12 * _r1(d) + P3 / 3 + 0.25)


def _d6_1(d):
    return ((2 * d**2 / (3 * SQRT3) + 4 / SQRT3) * _a2(d)
            + (2 / SQRT3 - d**2 / (3 * SQRT3)) * _a1(d)
            - (1 / 3 + 2 * P3 / 9) * d**2 + 7 / 12 * _r1(d) + 2 * _r2(d)
            - 13 * P3 / 6 - 1.25)


def _d6_2(d):
    return (d**2 / (3 * SQRT3) * _a2(d) + (2 / SQRT3 - d**2 / (3 * SQRT3)) * _a1(d)
            - (1 / 6 + P3 / 9) * d**2 + 7 / 12 * _r1(d) + _r2(d) / 3
            - 5 * P3 / 6 - 0.25)


def _d6_3(d):
    return (d**2 / (3 * SQRT3) * _a2(d) + (2 / SQRT3 - d**2 / (3 * SQRT3)) * _a1(d)
            - (2 * d**2 / (3 * SQRT3) + 3 * SQRT3) * _a3(d)
            + (2 * P3 / 9 - 1 / 6) * d**2 + 7 / 12 * _r1(d) + _r2(d) / 3
            - 1.5 * _r3(d) + 11 * P3 / 3 - 0.25)


def _d6_4(d):
    return ((d**2 / (3 * SQRT3) - 4 / SQRT3) * _a2(d)
            - (d**2 / (3 * SQRT3) + 1 / (2 * SQRT3)) * _a1(d)
            - (2 * d**2 / (3 * SQRT3) + 7 * SQRT3 / 2) * _a3(d)
            + (1 / 3 + 2 * P3 / 9) * d**2 - _r1(d) / 4 - _r2(d)
            - 5 / 3 * _r3(d) + 11 * P3 / 2 + 3.25)


def _d6_5(d):
    return ((d**2 / (3 * SQRT3) - 4 / SQRT3) * _a2(d)
            - (d**2 / (3 * SQRT3) + 1 / (2 * SQRT3)) * _a1(d)
            + 5 * SQRT3 / 2 * _a3(d) - _r1(d) / 4 - _r2(d) + 5 / 6 * _r3(d)
            - P3 / 2 - 1.25)


def _d6_6(d):
    return ((d**2 / (3 * SQRT3) + 8 / SQRT3) * _a4(d)
            - (d**2 / (3 * SQRT3) + 1 / (2 * SQRT3)) * _a1(d)
            + 5 * SQRT3 / 2 * _a3(d) - (1 / 6 + P3 / 9) * d**2 - _r1(d) / 4
            + 5 / 6 * _r3(d) + 2 * _r4(d) - 31 * P3 / 6 - 2.25)


# D7
def _d7_0(d):
    return (2 / SQRT3 * (2 * d**2 / 3 + 1) * _a1(d) + 4 / SQRT3 * _a2(d)
            - (1 / 3 + 2 * P3 / 9) * d**2 + _r1(d) + 4 / 3 * _r2(d)
            - 7 * P3 / 3 - 2)


def _d7_1(d):
    return (2 / SQRT3 * (2 * d**2 / 3 + 1) * _a1(d)
            - 2 / SQRT3 * (d**2 / 3 + 2) * _a2(d) + _r1(d) - 2 * _r2(d) + P3 / 3)


def _d7_2(d):
    return (2 / SQRT3 * (2 * d**2 / 3 + 1) * _a1(d)
            - 2 / SQRT3 * (d**2 / 3 + 2) * _a2(d) - 2 * SQRT3 * _a3(d)
            + _r1(d) - 2 * _r2(d) - 2 / 3 * _r3(d) + 10 * P3 / 3)


def _d7_3(d):
    return (1 / SQRT3 * (2 * d**2 / 3 + 1) * _a1(d)
            - 4 / SQRT3 * (d**2 / 3 + 2) * _a2(d) - 3 * SQRT3 * _a3(d)
            + (1 / 3 + 2 * P3 / 9) * d**2 + _r1(d) / 2 - 4 * _r2(d) - _r3(d)
            + 17 * P3 / 3 + 4.5)


def _d7_4(d):
    return (1 / SQRT3 * (2 * d**2 / 3 + 1) * _a1(d)
            - 4 / SQRT3 * (d**2 / 3 + 2) * _a2(d)
            + (2 * d**2 / (3 * SQRT3) + 3 * SQRT3) * _a3(d)
            + _r1(d) / 2 - 4 * _r2(d) + 1.5 * _r3(d) - P3 / 3)


def _d7_5(d):
    return (1 / SQRT3 * (2 * d**2 / 3 + 1) * _a1(d)
            + (2 * d**2 / (3 * SQRT3) + 3 * SQRT3) * _a3(d) + 8 / SQRT3 * _a4(d)
            - (1 / 3 + 2 * P3 / 9) * d**2 + _r1(d) / 2 + 1.5 * _r3(d)
            + 4 / 3 * _r4(d) - 17 * P3 / 3 - 8)


# D8: rhombus to the opposite rhombus of a side-2 hexagon
def _d8_0(d):
    return (-2 / SQRT3 * (d**2 / 3 + 4) * _a2(d) + (1 / 3 + 2 * P3 / 9) * d**2
            - 10 / 3 * _r2(d) + 8 * P3 / 3 + 2)


def _d8_1(d):
    return (2 / SQRT3 * (d**2 / 3 + 8) * _a2(d) + 4 / SQRT3 * (d**2 / 3 + 6) * _a3(d)
            - (1 + 2 * P3 / 3) * d**2 + 6 * _r2(d) + 11 / 3 * _r3(d)
            - 40 * P3 / 3 - 11)


def _d8_2(d):
    return (2 / SQRT3 * (d**2 / 3 + 8) * _a2(d) - 4 / SQRT3 * (d**2 / 3 + 12) * _a3(d)
            + (1 / 3 + 2 * P3 / 9) * d**2 + 6 * _r2(d) - 19 / 3 * _r3(d)
            + 32 * P3 / 3 + 7)


def _d8_3(d):
    return (-4 / SQRT3 * (d**2 / 3 + 12) * _a3(d) - 2 / SQRT3 * (d**2 / 3 + 8) * _a4(d)
            + (1 + 2 * P3 / 3) * d**2 - 19 / 3 * _r3(d) - 4 * _r4(d)
            + 64 * P3 / 3 + 17)


def _d8_4(d):
    return (2 / SQRT3 * (d**2 / 3 + 16) * _a4(d) - (1 / 3 + 2 * P3 / 9) * d**2
            + 20 / 3 * _r4(d) - 32 * P3 / 3 - 8)


# within one hexagon
def _hi_0(d):
    return (2 / 3 - 2 * P3 / 9) * d**2 - 8 / 3 * d + 2 * P3


def _hi_1(d):
    return (-4 / SQRT3 * (2 * d**2 / 3 + 1) * _a1(d) + 2 * P3 / 3 * d**2
            - 2 * _r1(d) + 10 * P3 / 3)


def _hi_2(d):
    return (4 / SQRT3 * (d**2 / 3 + 4) * _a2(d) - (4 * P3 / 9 + 2 / 3) * d**2
            + 20 / 3 * _r2(d) - 16 * P3 / 3 - 4)


# between two adjacent hexagons
def _ha_0(d):
    return (P3 / 9 - 1 / 3) * d**2 + 4 / 3 * d


def _ha_1(d):
    return (2 / SQRT3 * (d**2 + 2) * _a1(d) - (1 / 3 + 5 * P3 / 9) * d**2
            + 11 / 6 * _r1(d) - 4 * P3 / 3 - 0.5)


def _ha_2(d):
    return (2 / SQRT3 * (d**2 / 3 - 2) * _a1(d) - 4 / SQRT3 * (d**2 / 3 + 4) * _a2(d)
            + (1 + P3 / 3) * d**2 - 7 / 6 * _r1(d) - 20 / 3 * _r2(d)
            + 8 * P3 + 4.5)


def _ha_3(d):
    return (2 / SQRT3 * (d**2 / 3 - 2) * _a1(d) + (1 / 3 - P3 / 9) * d**2
            - 7 / 6 * _r1(d) + 8 * P3 / 3 + 0.5)


def _ha_4(d):
    return (-2 / SQRT3 * (d**2 / 3 + 6) * _a3(d) - 4 / SQRT3 * (d**2 / 3 + 2) * _a2(d)
            + (1 / 3 + 5 * P3 / 9) * d**2 - 4 * _r2(d) - 11 / 6 * _r3(d)
            + 28 * P3 / 3 + 4.5)


def _ha_5(d):
    return (2 / SQRT3 * (d**2 / 3 + 12) * _a3(d) - 4 / SQRT3 * (d**2 / 3 + 2) * _a2(d)
            + (P3 / 9 - 1 / 3) * d**2 - 4 * _r2(d) + 19 / 6 * _r3(d)
            - 8 * P3 / 3 - 4.5)


def _ha_6(d):
    return (2 / SQRT3 * (d**2 / 3 + 12) * (_a3(d) + _a4(d))
            - (2 / 3 + 4 * P3 / 9) * d**2 + 19 / 6 * _r3(d) + 16 / 3 * _r4(d)
            - 16 * P3 - 12.5)


# closed-form CDF branches
def _hi_cdf_0(d):
    return (1 / 3 - P3 / 9) / 3 * d**4 - 16 / 27 * d**3 + 2 * P3 / 3 * d**2


def _hi_cdf_1(d):
    return (-4 / (3 * SQRT3) * (d**4 / 3 + d**2) * _a1(d) + P3 / 9 * d**4
            + 10 * P3 / 9 * d**2 - (26 * d**2 + 3) / 54 * _r1(d) + 1 / 18)


def _hi_cdf_2(d):
    return (2 / (3 * SQRT3) * (d**4 / 3 + 8 * d**2) * _a2(d)
            - (2 * P3 / 27 + 1 / 9) * d**4 - (16 * P3 / 9 + 4 / 3) * d**2
            + (14 * d**2 + 12) / 9 * _r2(d) + 5 / 9)


def _ha_cdf_0(d):
    return (P3 / 9 - 1 / 3) / 18 * d**4 + 8 / 81 * d**3


def _ha_cdf_1(d):
    return (1 / (9 * SQRT3) * (d**4 + 4 * d**2) * _a1(d)
            - (5 * P3 / 162 + 1 / 54) * d**4 - (4 * P3 / 27 + 1 / 18) * d**2
            + (94 * d**2 + 15) / 648 * _r1(d) - 1 / 72)


def _ha_cdf_2(d):
    return (1 / (9 * SQRT3) * (d**4 / 3 - 4 * d**2) * _a1(d)
            - 2 / (9 * SQRT3) * (d**4 / 3 + 8 * d**2) * _a2(d)
            + (P3 / 54 + 1 / 18) * d**4 + (8 * P3 / 9 + 0.5) * d**2
            # 14 d^2 (not 4 d^2): the 4 d^2 form misses (10/27) d^2 r2 of mass
            - (2 * d**2 + 1) / 24 * _r1(d) - (14 * d**2 + 12) / 27 * _r2(d) - 7 / 72)


def _ha_cdf_3(d):
    return (1 / (9 * SQRT3) * (d**4 / 3 - 4 * d**2) * _a1(d)
            - (P3 / 162 - 1 / 54) * d**4 + (8 * P3 / 27 + 1 / 18) * d**2
            - (2 * d**2 + 1) / 24 * _r1(d) - 53 / 216)


def _ha_cdf_4(d):
    return (-2 / (9 * SQRT3) * (d**4 / 3 + 4 * d**2) * _a2(d)
            - 1 / (3 * SQRT3) * (d**4 / 9 + 4 * d**2) * _a3(d)
            + (5 * P3 / 162 + 1 / 54) * d**4 + (28 * P3 / 27 + 0.5) * d**2
            - (26 * d**2 + 12) / 81 * _r2(d) - (94 * d**2 + 135) / 648 * _r3(d)
            - 101 / 216)


def _ha_cdf_5(d):
    return (-2 / (9 * SQRT3) * (d**4 / 3 + 4 * d**2) * _a2(d)
            + 1 / (3 * SQRT3) * (d**4 / 9 + 8 * d**2) * _a3(d)
            + (P3 / 162 - 1 / 54) * d**4 - (8 * P3 / 27 + 0.5) * d**2
            - (26 * d**2 + 12) / 81 * _r2(d) + (158 * d**2 + 351) / 648 * _r3(d)
            - 263 / 216)


def _ha_cdf_6(d):
    return (1 / (3 * SQRT3) * (d**4 / 9 + 8 * d**2) * (_a3(d) + _a4(d))
            # 25/18 (not 15/18) so the CDF is continuous at 2 sqrt(3) and ends at 1
            - (2 * P3 / 81 + 1 / 27) * d**4 - (16 * P3 / 9 + 25 / 18) * d**2
            + (158 * d**2 + 351) / 648 * _r3(d) + (34 * d**2 + 96) / 81 * _r4(d)
            + 25 / 216)


# --------------------------------------------------------------------------
# piecewise containers
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Piece:
    lo: float
    hi: float
    branch: Callable[[np.ndarray], np.ndarray]

    @property
    def name(self) -> str:
        return self.branch.__name__.lstrip("_")


@dataclass(frozen=True)
class PiecewisePdf:
    """Piecewise closed form ``prefactor * d * branch_i(d)`` on ``[lo_i, hi_i]``.

    Pieces are contiguous; a point is assigned to the piece whose half-open
    interval ``[lo, hi)`` contains it, the final piece being closed.  The
    same container is used for the printed CDFs, with ``linear=False``
    meaning the leading factor of ``d`` is absent.
    """

    kind: DistanceKind
    prefactor: float
    pieces: tuple[Piece, ...]
    linear: bool = True

    @property
    def support(self) -> tuple[float, float]:
        return self.pieces[0].lo, self.pieces[-1].hi

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return (self.pieces[0].lo,) + tuple(p.hi for p in self.pieces)

    def piece_value(self, index: int, d):
        """Evaluate the branch of piece ``index`` at ``d`` regardless of its interval."""
        d = np.asarray(d, dtype=float)
        val = self.pieces[index].branch(d)
        if self.linear:
            val = d * val
        return self.prefactor * val

    def integrate(self, a: float | None = None, b: float | None = None, power: int = 0,
                  tol: float | None = None) -> float:
        """Adaptive quadrature of ``d**power * f(d)`` over ``[a, b]`` clipped to the support.

        Each piece is integrated on its own branch expression, so no
        quadrature ever spans a breakpoint.
        """
        lo, hi = self.support
        a = lo if a is None else max(a, lo)
        b = hi if b is None else min(b, hi)
        tol = QUAD_TOL if tol is None else tol
        total = 0.0
        for i, piece in enumerate(self.pieces):
            x0, x1 = max(a, piece.lo), min(b, piece.hi)
            if x1 <= x0:
                continue
            branch, c = piece.branch, self.prefactor
            if self.linear:
                f = lambda t, br=branch: c * t ** (power + 1) * float(br(t))  # noqa: E731
            else:
                f = lambda t, br=branch: c * t**power * float(br(t))  # noqa: E731
            val, _ = integrate.quad(f, x0, x1, epsabs=tol, epsrel=1e-13, limit=200)
            total += val
        return total

    def __call__(self, d):
        d = np.asarray(d, dtype=float)
        if not np.all(np.isfinite(d)):
            raise ValueError("distance must be finite")
        out = np.zeros(d.shape)
        lo, hi = self.support
        inner = np.asarray(self.breakpoints[1:-1])
        idx = np.searchsorted(inner, d, side="right")
        inside = (d >= lo) & (d <= hi)
        for i in range(len(self.pieces)):
            mask = inside & (idx == i)
            if np.any(mask):
                out[mask] = self.piece_value(i, d[mask])
        if self.linear:
            # cancellation leaves ~1e-15 negatives where a density touches zero
            np.maximum(out, 0.0, out=out)
        return out


def _build(kind, prefactor, bounds, branches, linear=True):
    if len(bounds) != len(branches) + 1:
        raise ValueError("need one more bound than branches")
    pieces = tuple(Piece(bounds[i], bounds[i + 1], b) for i, b in enumerate(branches))
    return PiecewisePdf(kind, prefactor, pieces, linear)


K = DistanceKind

_PDFS: dict[DistanceKind, PiecewisePdf] = {
    K.D1: _build(K.D1, 2.0, (0.0, HALF_SQRT3, 1.0, SQRT3), (_d1_0, _d1_1, _d1_2)),
    K.D2: _build(K.D2, 2.0, (0.0, HALF_SQRT3, 1.0, SQRT3, 2.0),
                 (_d2_0, _d2_1, _d2_2, _d2_3)),
    K.D3: _build(K.D3, 2.0, (HALF_SQRT3, 1.0, SQRT3, 2.0, THREE_HALF_SQRT3, SQRT7, 3.0),
                 (_d3_0, _d3_1, _d3_2, _d3_3, _d3_4, _d3_5)),
    K.D4: _build(K.D4, 2.0, (0.0, HALF_SQRT3, 1.0, SQRT3, 2.0, SQRT7, 3.0),
                 (_d4_0, _d4_1, _d4_2, _d4_3, _d4_4, _d4_5)),
    K.D5: _build(K.D5, 2.0, (0.0, 1.0, SQRT3, 2.0, SQRT7, TWO_SQRT3),
                 (_d5_0, _d5_1, _d5_2, _d5_3, _d5_4)),
    K.D6: _build(K.D6, 2.0, (1.0, SQRT3, 2.0, THREE_HALF_SQRT3, SQRT7, 3.0, TWO_SQRT3, SQRT13),
                 (_d6_0, _d6_1, _d6_2, _d6_3, _d6_4, _d6_5, _d6_6)),
    K.D7: _build(K.D7, 2.0, (SQRT3, 2.0, THREE_HALF_SQRT3, SQRT7, 3.0, TWO_SQRT3, SQRT13),
                 (_d7_0, _d7_1, _d7_2, _d7_3, _d7_4, _d7_5)),
    K.D8: _build(K.D8, 2.0, (2.0, SQRT7, 3.0, TWO_SQRT3, SQRT13, 4.0),
                 (_d8_0, _d8_1, _d8_2, _d8_3, _d8_4)),
    K.HEX_INTERIOR: _build(K.HEX_INTERIOR, 2 / 3, (0.0, 1.0, SQRT3, 2.0),
                           (_hi_0, _hi_1, _hi_2)),
    K.HEX_ADJACENT: _build(K.HEX_ADJACENT, 2 / 9,
                           (0.0, 1.0, SQRT3, 2.0, SQRT7, 3.0, TWO_SQRT3, SQRT13),
                           (_ha_0, _ha_1, _ha_2, _ha_3, _ha_4, _ha_5, _ha_6)),
}

_CLOSED_CDFS: dict[DistanceKind, PiecewisePdf] = {
    K.HEX_INTERIOR: _build(K.HEX_INTERIOR, 1.0, (0.0, 1.0, SQRT3, 2.0),
                           (_hi_cdf_0, _hi_cdf_1, _hi_cdf_2), linear=False),
    K.HEX_ADJACENT: _build(K.HEX_ADJACENT, 1.0,
                           (0.0, 1.0, SQRT3, 2.0, SQRT7, 3.0, TWO_SQRT3, SQRT13),
                           (_ha_cdf_0, _ha_cdf_1, _ha_cdf_2, _ha_cdf_3, _ha_cdf_4,
                            _ha_cdf_5, _ha_cdf_6), linear=False),
}


def piecewise(kind) -> PiecewisePdf:
    """The :class:`PiecewisePdf` backing ``kind``."""
    return _PDFS[DistanceKind.parse(kind)]


def closed_cdf(kind) -> PiecewisePdf | None:
    """Printed closed-form CDF for the hexagon kinds, ``None`` for D1..D8."""
    return _CLOSED_CDFS.get(DistanceKind.parse(kind))


def support(kind) -> tuple[float, float]:
    return piecewise(kind).support


def breakpoints(kind) -> tuple[float, ...]:
    return piecewise(kind).breakpoints


def _scalar_or_array(value, like):
    if np.ndim(like) == 0:
        return float(value)
    return value


def pdf_eval(kind, d):
    """Density of the distance ``kind`` at ``d``; zero off the support.

    Accepts a scalar or array. Non-finite input raises ``ValueError``.
    """
    return _scalar_or_array(piecewise(kind)(d), d)


def integrate_piecewise(func, edges: Sequence[float], tol: float = QUAD_TOL) -> float:
    """Sum of adaptive quadratures of ``func`` over consecutive ``edges``.

    Each sub-interval is integrated separately so that no kink is crossed.
    """
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        if b <= a:
            continue
        val, _ = integrate.quad(func, a, b, epsabs=tol, epsrel=1e-13, limit=200)
        total += val
    return total


def _cdf_scalar(kind: DistanceKind, x: float) -> float:
    pw = _PDFS[kind]
    lo, hi = pw.support
    if x <= lo:
        return 0.0
    if x >= hi:
        return 1.0
    closed = _CLOSED_CDFS.get(kind)
    if closed is not None:
        return float(closed(x))
    return pw.integrate(lo, x)


def cdf_eval(kind, d):
    """Cumulative probability ``P(D <= d)``.

    The two hexagon kinds use their closed forms; D1..D8 integrate the
    density piecewise between breakpoints.
    """
    kind = DistanceKind.parse(kind)
    arr = np.asarray(d, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("distance must be finite")
    out = np.array([_cdf_scalar(kind, float(x)) for x in arr.ravel()]).reshape(arr.shape)
    return _scalar_or_array(out, d)


_GL_X, _GL_W = np.polynomial.legendre.leggauss(8)


def cdf_sorted(kind, xs) -> np.ndarray:
    """CDF at many points at once; same values as :func:`cdf_eval`.

    For D1..D8 the probability mass below each breakpoint comes from
    adaptive quadrature, and the mass between consecutive query points
    inside a piece from an 8-node Gauss-Legendre rule, accumulated.  Gaps
    never straddle a breakpoint.  Intended for ECDF comparisons on large
    samples where a quadrature per point would be too slow.
    """
    kind = DistanceKind.parse(kind)
    xs = np.asarray(xs, dtype=float)
    if not np.all(np.isfinite(xs)):
        raise ValueError("distance must be finite")
    closed = _CLOSED_CDFS.get(kind)
    pw = _PDFS[kind]
    lo, hi = pw.support
    out = np.empty(xs.shape)
    flat = xs.ravel()
    res = np.empty(flat.shape)
    res[flat <= lo] = 0.0
    res[flat >= hi] = 1.0
    inner = (flat > lo) & (flat < hi)
    if closed is not None:
        res[inner] = closed(flat[inner])
        out[...] = res.reshape(xs.shape)
        return out
    base = 0.0
    for piece in pw.pieces:
        sel = np.nonzero(inner & (flat >= piece.lo) & (flat < piece.hi))[0]
        if sel.size:
            order = sel[np.argsort(flat[sel], kind="stable")]
            pts = np.concatenate(([piece.lo], flat[order]))
            a, b = pts[:-1], pts[1:]
            half = 0.5 * (b - a)
            nodes = (0.5 * (a + b))[:, None] + half[:, None] * _GL_X[None, :]
            vals = pw(nodes)
            seg = half * (vals @ _GL_W)
            res[order] = base + np.cumsum(seg)
        base += pw.integrate(piece.lo, piece.hi)
    out[...] = res.reshape(xs.shape)
    return out


def _check_scale(s) -> float:
    s = float(s)
    if not math.isfinite(s) or s <= 0.0:
        raise ValueError(f"scale must be a positive finite number, got {s}")
    return s


def scaled_pdf(kind, s, d):
    """Density of ``s * D``: ``pdf(d / s) / s``."""
    s = _check_scale(s)
    return pdf_eval(kind, np.asarray(d, dtype=float) / s if np.ndim(d) else float(d) / s) / s


def scaled_cdf(kind, s, d):
    """CDF of ``s * D``: ``cdf(d / s)``."""
    s = _check_scale(s)
    return cdf_eval(kind, np.asarray(d, dtype=float) / s if np.ndim(d) else float(d) / s)


# --------------------------------------------------------------------------
# mixtures
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Mixture:
    """Weighted sum of distance densities; weights are case probabilities."""

    components: tuple[tuple[float, DistanceKind], ...]

    def __post_init__(self):
        comps = tuple((float(w), DistanceKind.parse(k)) for w, k in self.components)
        if not comps:
            raise ValueError("mixture needs at least one component")
        if any(not w > 0.0 for w, _ in comps):
            raise ValueError("mixture weights must be positive")
        total = math.fsum(w for w, _ in comps)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"mixture weights sum to {total!r}, not 1")
        object.__setattr__(self, "components", comps)

    @property
    def kinds(self) -> tuple[DistanceKind, ...]:
        return tuple(k for _, k in self.components)

    def breakpoints(self) -> tuple[float, ...]:
        pts = set()
        for k in self.kinds:
            pts.update(breakpoints(k))
        return tuple(sorted(pts))

    def __call__(self, d):
        return mixture_pdf(self, d)


def mixture_pdf(m: Mixture, d):
    """``sum(w_i * pdf(kind_i, d))``."""
    if not isinstance(m, Mixture):
        m = Mixture(tuple(m))
    arr = np.asarray(d, dtype=float)
    out = np.zeros(arr.shape)
    for w, k in m.components:
        out = out + w * piecewise(k)(arr)
    return _scalar_or_array(out, d)


HEX_INTERIOR_MIXTURE = Mixture(((1 / 3, K.D1), (2 / 3, K.D2)))

HEX_ADJACENT_MIXTURE = Mixture((
    (1 / 9, K.D2), (1 / 9, K.D5), (1 / 9, K.D7),
    (2 / 9, K.D3), (2 / 9, K.D4), (2 / 9, K.D6),
))

# side-2 hexagon split into three unit hexagons and three unit rhombuses
RECURSION_MIXTURE = Mixture((
    (3 / 16, K.HEX_INTERIOR), (3 / 8, K.HEX_ADJACENT),
    (1 / 12, K.D2), (1 / 12, K.D4), (1 / 12, K.D3), (1 / 12, K.D6),
    (1 / 24, K.D7), (1 / 24, K.D8), (1 / 48, K.D1),
))
