"""Finite approximation V^n of the sampled compactum and the level search.

V^n keeps one representative per occupied dyadic cell. Whether a level is
usable is decided by the bridge gap: the length of the shortest chain of
short or almost axis-aligned segments that leads from an end of a long almost
vertical segment to an end of a long almost horizontal segment. A level is
accepted once that gap is at least F.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from const import *
from errors import LevelNotFound, SampleError
from geometry import (
    CellIndex,
    Point,
    as_coordinates,
    cell_indices,
    cell_side,
    check_level,
    check_positive,
    min_level_for,
)

logger = logging.getLogger(APPLICATION)

# rows per block in the pairwise scans, keeps the scratch matrices small
SCAN_BLOCK = 512


@dataclass(frozen=True, eq=False)
class SampledCompactum:
    """Finite sample of K with the values of f attached.

    Generators produce coordinates first; their values are zero until a
    function is attached.
    """

    coords: np.ndarray
    values: Optional[np.ndarray] = None
    declared_spacing: Optional[float] = None

    def __post_init__(self):
        coords = as_coordinates(self.coords).copy()
        if len(coords) == 0:
            raise SampleError("Sample must contain at least one point")
        values = (
            np.zeros(len(coords))
            if self.values is None
            else np.asarray(self.values, dtype=float).reshape(-1).copy()
        )
        if len(values) != len(coords):
            raise SampleError(
                f"Sample has {len(coords)} points but {len(values)} values"
            )
        bad = np.flatnonzero(~np.isfinite(coords).all(axis=1) | ~np.isfinite(values))
        if len(bad):
            raise SampleError("Sample contains non-finite numbers", rows=bad.tolist())
        duplicates = duplicate_rows(coords)
        if duplicates:
            raise SampleError("Sample contains duplicate points", rows=duplicates)
        if self.declared_spacing is not None:
            check_positive("declared_spacing", self.declared_spacing)
        coords.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_points(cls, points, values=None, declared_spacing=None):
        return cls(np.array([tuple(p) for p in points], dtype=float), values, declared_spacing)

    def __len__(self):
        return len(self.coords)

    @property
    def points(self):
        return [Point(float(x), float(y)) for x, y in self.coords]

    @property
    def norm(self):
        """Sup norm of f over the sample"""
        return float(np.abs(self.values).max())

    def with_values(self, values):
        return SampledCompactum(self.coords, values, self.declared_spacing)

    def column_cells(self, n):
        """Column indices occupied by the projection of the sample onto the x axis"""
        return set(cell_indices(self.coords, n)[:, 0].tolist())

    def row_cells(self, n):
        return set(cell_indices(self.coords, n)[:, 1].tolist())


def duplicate_rows(coords):
    """Indices of rows repeating an earlier row"""
    if len(coords) < 2:
        return []
    order = np.lexsort((coords[:, 1], coords[:, 0]))
    ordered = coords[order]
    same = (ordered[1:] == ordered[:-1]).all(axis=1)
    return sorted(order[1:][same].tolist())


@dataclass(frozen=True, eq=False)
class RepresentativeSet:
    """V^n: representatives listed in lexicographic (x, y) order"""

    level: int
    coords: np.ndarray
    values: np.ndarray
    cells: np.ndarray
    sample_index: np.ndarray
    source: SampledCompactum = field(repr=False)

    def __len__(self):
        return len(self.coords)

    @property
    def points(self):
        return [Point(float(x), float(y)) for x, y in self.coords]

    def point(self, k):
        return Point(float(self.coords[k, 0]), float(self.coords[k, 1]))

    @property
    def reps(self):
        return {
            CellIndex(int(i), int(j)): self.point(k)
            for k, (i, j) in enumerate(self.cells)
        }


def build_representatives(sample: SampledCompactum, n: int) -> RepresentativeSet:
    n = check_level(n)
    cells = cell_indices(sample.coords, n)
    # lexicographic order of the points, so the first hit per cell is its minimum
    order = np.lexsort((sample.coords[:, 1], sample.coords[:, 0]))
    _, first = np.unique(cells[order], axis=0, return_index=True)
    chosen = order[np.sort(first)]
    coords = sample.coords[chosen]
    values = sample.values[chosen]
    chosen_cells = cells[chosen]
    for array in (coords, values, chosen_cells, chosen):
        array.setflags(write=False)
    return RepresentativeSet(n, coords, values, chosen_cells, chosen, sample)


def _blocks(m):
    for start in range(0, m, SCAN_BLOCK):
        yield slice(start, min(start + SCAN_BLOCK, m))


def long_end_masks(V: RepresentativeSet, delta: float):
    """Boolean masks (long_vertical_end, long_horizontal_end) over V"""
    check_positive("delta", delta)
    near = 2.0 * cell_side(V.level)
    x, y = V.coords[:, 0], V.coords[:, 1]
    vertical = np.zeros(len(V), dtype=bool)
    horizontal = np.zeros(len(V), dtype=bool)
    for rows in _blocks(len(V)):
        dx = np.abs(x[rows, None] - x[None, :])
        dy = np.abs(y[rows, None] - y[None, :])
        # a point is at distance 0 from itself, never a long segment
        long = np.maximum(dx, dy) >= delta
        vertical[rows] = ((dx < near) & long).any(axis=1)
        horizontal[rows] = ((dy < near) & long).any(axis=1)
    return vertical, horizontal


def long_vertical_ends(V: RepresentativeSet, delta: float):
    vertical, _ = long_end_masks(V, delta)
    return {V.point(k) for k in np.flatnonzero(vertical)}


def long_horizontal_ends(V: RepresentativeSet, delta: float):
    _, horizontal = long_end_masks(V, delta)
    return {V.point(k) for k in np.flatnonzero(horizontal)}


def bridge_neighbours(V: RepresentativeSet, delta: float, frontier):
    """For each vertex of V, the first frontier vertex joined to it in the bridge graph.

    Returns -1 where no frontier vertex is adjacent. Bridge edges join pairs
    forming a short, an almost vertical or an almost horizontal segment.
    """
    near = 2.0 * cell_side(V.level)
    x, y = V.coords[:, 0], V.coords[:, 1]
    parent = np.full(len(V), -1, dtype=np.int64)
    for start in range(0, len(frontier), SCAN_BLOCK):
        block = frontier[start : start + SCAN_BLOCK]
        dx = np.abs(x[block, None] - x[None, :])
        dy = np.abs(y[block, None] - y[None, :])
        adjacent = (dx < near) | (dy < near) | (np.maximum(dx, dy) < delta)
        hit = adjacent.any(axis=0)
        fresh = hit & (parent < 0)
        parent[fresh] = block[adjacent[:, fresh].argmax(axis=0)]
    return parent


def bridge_search(V: RepresentativeSet, delta: float, cutoff=None):
    """Multi-source BFS of the bridge graph from the long vertical ends.

    Returns (gap, path) where path lists V indices from a long vertical end
    to the first long horizontal end reached. With a cutoff the search stops
    once the depth reaches it and reports (inf, None) when nothing was found
    before that depth, which callers read as "at least cutoff".
    """
    vertical, horizontal = long_end_masks(V, delta)
    if not vertical.any() or not horizontal.any():
        return math.inf, None
    parent = np.full(len(V), -1, dtype=np.int64)
    visited = vertical.copy()
    frontier = np.flatnonzero(vertical)
    depth = 0
    while len(frontier):
        reached = frontier[horizontal[frontier]]
        if len(reached):
            path = [int(reached.min())]
            while parent[path[-1]] >= 0:
                path.append(int(parent[path[-1]]))
            return depth, path[::-1]
        if cutoff is not None and depth + 1 >= cutoff:
            return math.inf, None
        candidate = bridge_neighbours(V, delta, frontier)
        fresh = (candidate >= 0) & ~visited
        parent[fresh] = candidate[fresh]
        visited |= fresh
        frontier = np.flatnonzero(fresh)
        depth += 1
    return math.inf, None


def bridge_gap(V: RepresentativeSet, delta: float):
    """Edge count of the shortest bridging chain, math.inf when there is none"""
    check_positive("delta", delta)
    gap, _ = bridge_search(V, delta)
    return gap


def select_level(sample: SampledCompactum, delta: float, F: int, n_max: int = DEFAULT_N_MAX):
    """Smallest level n >= -log2(delta) whose bridge gap is at least F"""
    check_positive("delta", delta)
    if F < 0:
        raise ValueError(f"F must be nonnegative, got {F}")
    n_max = check_level(n_max)
    best_gap, best_level, best_path = -1, None, None
    for n in range(min_level_for(delta), n_max + 1):
        V = build_representatives(sample, n)
        gap, path = bridge_search(V, delta, cutoff=F)
        logger.debug(f"Level {n}: {len(V)} representatives, bridge gap {gap}, F={F}")
        if gap >= F:
            return n
        if gap > best_gap:
            best_gap, best_level = gap, n
            best_path = [V.point(k) for k in path]
    raise LevelNotFound(
        f"No level up to {n_max} separates long vertical from long horizontal ends "
        f"by {F} steps"
        + (
            f" (best gap {best_gap} at level {best_level})"
            if best_level is not None
            else f" (delta {delta} needs a level above {n_max})"
        ),
        F=F,
        n_max=n_max,
        best_gap=max(best_gap, 0),
        best_level=best_level,
        witness=best_path,
    )
