"""Points, the Chebyshev metric, dyadic cells and segment classification.

Everything here works on plain values. The vectorised helpers at the bottom
return pairwise matrices for an (m, 2) coordinate array and are what the
pair scans in quantize, arrays and gamma are built on.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from const import *
from errors import CellIndexOverflow, InvalidArgument


class Point(NamedTuple):
    x: float
    y: float


class CellIndex(NamedTuple):
    i: int
    j: int


@dataclass(frozen=True)
class SegmentClass:
    almost_vertical: bool
    almost_horizontal: bool
    long: bool

    @property
    def short(self):
        return not self.long

    @property
    def almost_axis_aligned(self):
        return self.almost_vertical or self.almost_horizontal


def check_level(n):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 0:
        raise InvalidArgument(f"Level must be a nonnegative integer, got {n!r}")
    return int(n)


def check_positive(name, value):
    if not (value > 0) or math.isinf(value):
        raise InvalidArgument(f"{name} must be a positive finite number, got {value!r}")
    return float(value)


def cell_side(n):
    return 2.0 ** -check_level(n)


def chebyshev(a: Point, b: Point) -> float:
    return max(abs(a[0] - b[0]), abs(a[1] - b[1]))


def cell_index(p: Point, n: int) -> CellIndex:
    scale = 2.0 ** check_level(n)
    i, j = math.floor(p[0] * scale), math.floor(p[1] * scale)
    if abs(i) >= MAX_CELL_INDEX or abs(j) >= MAX_CELL_INDEX:
        raise CellIndexOverflow(f"Point {tuple(p)} is out of range for level {n}")
    return CellIndex(i, j)


def classify_segment(a: Point, b: Point, n: int, delta: float) -> SegmentClass:
    check_positive("delta", delta)
    near = 2.0 * cell_side(n)
    dx, dy = abs(a[0] - b[0]), abs(a[1] - b[1])
    return SegmentClass(
        almost_vertical=dx < near,
        almost_horizontal=dy < near,
        long=max(dx, dy) >= delta,
    )


def min_level_for(delta):
    """Smallest n >= 0 with 1/2^n <= delta"""
    check_positive("delta", delta)
    n = max(0, math.ceil(-math.log2(delta)))
    # log2 may round either way near powers of two
    while n > 0 and 2.0 ** -(n - 1) <= delta:
        n -= 1
    while 2.0**-n > delta:
        n += 1
    return n


# vectorised versions


def as_coordinates(points):
    coords = np.asarray(points, dtype=float)
    if coords.ndim != 2 or coords.shape[1] != 2:
        coords = coords.reshape(-1, 2)
    return coords


def cell_indices(coords, n):
    """(m, 2) integer array of cell indices, same convention as cell_index"""
    scaled = np.floor(as_coordinates(coords) * 2.0 ** check_level(n))
    if scaled.size and np.abs(scaled).max() >= MAX_CELL_INDEX:
        raise CellIndexOverflow(f"Coordinates are out of range for level {n}")
    return scaled.astype(np.int64)


def axis_differences(coords):
    """Pairwise |dx| and |dy| matrices"""
    coords = as_coordinates(coords)
    dx = np.abs(coords[:, 0, None] - coords[None, :, 0])
    dy = np.abs(coords[:, 1, None] - coords[None, :, 1])
    return dx, dy

