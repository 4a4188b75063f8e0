"""Continuous piecewise-linear extension of the tables G^n and H^n to the line."""

import logging
import math
from dataclasses import dataclass

import numpy as np

from const import *
from errors import EmptyColumnNotFound
from gamma import TableFunction
from geometry import cell_side, check_level

logger = logging.getLogger(APPLICATION)


@dataclass(frozen=True, eq=False)
class PWLinear:
    """Piecewise-linear function on R, constant beyond the extreme breakpoints"""

    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        breakpoints = np.asarray(self.breakpoints, dtype=float).reshape(-1).copy()
        values = np.asarray(self.values, dtype=float).reshape(-1).copy()
        if len(breakpoints) != len(values):
            raise ValueError(
                f"{len(breakpoints)} breakpoints but {len(values)} values"
            )
        if len(breakpoints) == 0:
            raise ValueError("A piecewise-linear function needs at least one breakpoint")
        if np.any(np.diff(breakpoints) <= 0):
            raise ValueError("Breakpoints must be strictly increasing")
        if not (np.isfinite(breakpoints).all() and np.isfinite(values).all()):
            raise ValueError("Breakpoints and values must be finite")
        breakpoints.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "breakpoints", breakpoints)
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, value=0.0):
        return cls([0.0], [value])

    def __call__(self, x):
        result = np.interp(x, self.breakpoints, self.values)
        return float(result) if np.ndim(result) == 0 else result

    def __add__(self, other):
        if not isinstance(other, PWLinear):
            return NotImplemented
        union = np.union1d(self.breakpoints, other.breakpoints)
        return PWLinear(union, self(union) + other(union))

    def __eq__(self, other):
        if not isinstance(other, PWLinear):
            return NotImplemented
        return np.array_equal(self.breakpoints, other.breakpoints) and np.array_equal(
            self.values, other.values
        )

    __hash__ = None

    def __len__(self):
        return len(self.breakpoints)

    @property
    def norm(self):
        """Sup norm over R, attained at a breakpoint"""
        return float(np.abs(self.values).max())

    def to_dict(self):
        return {
            "breakpoints": self.breakpoints.tolist(),
            "values": self.values.tolist(),
            "tails": "constant",
        }

    @classmethod
    def from_dict(cls, data):
        if data.get("tails", "constant") != "constant":
            raise ValueError(f"Unsupported tail mode {data.get('tails')!r}")
        return cls(data["breakpoints"], data["values"])


def eval_pwl(g: PWLinear, x):
    return g(x)


def pwl_sum(functions):
    functions = list(functions)
    if not functions:
        return PWLinear.constant(0.0)
    total = functions[0]
    for function in functions[1:]:
        total = total + function
    return total


def empty_column(left, right, n, projected_cells):
    """Smallest j with left < j/2^n, (j+1)/2^n <= right and j not occupied"""
    scale = 2.0**n
    first = math.floor(left * scale) + 1
    last = math.floor(right * scale) - 1
    # at most len(projected_cells) occupied columns precede the answer
    for j in range(first, last + 1):
        if j not in projected_cells:
            return j
    return None


def extend_pwl(table: TableFunction, n: int, projected_cells) -> PWLinear:
    """Extends table to R.

    Neighbours closer than 2/2^n are joined linearly. Across a wider gap the
    left value is held up to an unoccupied dyadic column, the function rises
    linearly across that column and the right value is held after it.
    """
    n = check_level(n)
    side = cell_side(n)
    projected_cells = set(projected_cells)
    breakpoints, values = [float(table.domain[0])], [float(table.values[0])]
    for k in range(1, len(table)):
        left, right = float(table.domain[k - 1]), float(table.domain[k])
        if right - left >= 2 * side:
            j = empty_column(left, right, n, projected_cells)
            if j is None:
                raise EmptyColumnNotFound(
                    f"No unoccupied column of level {n} between {left!r} and {right!r}"
                )
            start, end = j * side, (j + 1) * side
            breakpoints.append(start)
            values.append(values[-1])
            if end < right:
                breakpoints.append(end)
                values.append(float(table.values[k]))
        breakpoints.append(right)
        values.append(float(table.values[k]))
    return PWLinear(breakpoints, values)
