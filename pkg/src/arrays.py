"""Arrays (alternating axis-parallel polylines) and almost arrays.

find_length2_array is the check for the hypothesis of the decomposition: a
vertical segment followed by a horizontal one, or the reverse. find_array
audits longer arrays. shortest_bridging_almost_array returns the chain that
bridge_gap measures, so a rejected level can be explained point by point.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from const import *
from errors import InvalidArgument
from geometry import Point, as_coordinates, axis_differences, classify_segment
from quantize import RepresentativeSet, bridge_search

logger = logging.getLogger(APPLICATION)


@dataclass(frozen=True)
class ArrayCertificate:
    points: List[Point]
    orientations: List[Axis]

    @property
    def length(self):
        return len(self.points) - 1

    def validate(self, tol=0.0):
        """True when consecutive points form alternating axis-parallel segments"""
        if len(self.orientations) != self.length or self.length < 1:
            return False
        for k, axis in enumerate(self.orientations):
            a, b = self.points[k], self.points[k + 1]
            if not _is_axis_segment(a, b, axis, tol):
                return False
            if k and axis == self.orientations[k - 1]:
                return False
        return True

    def to_dict(self):
        return {
            "points": [[p.x, p.y] for p in self.points],
            "orientations": [axis.value for axis in self.orientations],
        }


@dataclass(frozen=True)
class AlmostArrayPath:
    points: List[Point]
    level: int

    @property
    def length(self):
        return len(self.points) - 1

    def validate(self, delta):
        """Re-checks the path edge by edge.

        Edges of the bridge graph are almost vertical, almost horizontal or
        short, so each of the three is accepted.
        """
        if len(set(self.points)) != len(self.points):
            return False
        for a, b in zip(self.points, self.points[1:]):
            kind = classify_segment(a, b, self.level, delta)
            if not (kind.almost_axis_aligned or kind.short):
                return False
        return True

    def to_dict(self):
        return {"level": self.level, "points": [[p.x, p.y] for p in self.points]}


def _is_axis_segment(a, b, axis, tol):
    if tuple(a) == tuple(b):
        return False
    if axis == Axis.VERTICAL:
        return abs(a[0] - b[0]) <= tol
    return abs(a[1] - b[1]) <= tol


def axis_matrices(coords, tol=0.0):
    """Pairwise vertical / horizontal segment relations with coordinate tolerance.

    A pair is vertical when its x coordinates agree within tol and horizontal
    when its y coordinates do. Coinciding points form no segment. With tol > 0
    a pair can be both, so shrinking tol never creates an array.
    """
    if tol < 0:
        raise InvalidArgument(f"tol must be nonnegative, got {tol}")
    dx, dy = axis_differences(coords)
    distinct = (dx > 0) | (dy > 0)
    return (dx <= tol) & distinct, (dy <= tol) & distinct


def _sorted_coords(points):
    coords = as_coordinates(points) if len(points) else np.zeros((0, 2))
    order = np.lexsort((coords[:, 1], coords[:, 0])) if len(coords) else []
    return coords[order]


def _first_pair(starts, ends):
    for start in starts:
        for end in ends:
            if end != start:
                return int(start), int(end)
    return None


def find_length2_array(points, tol=0.0) -> Optional[ArrayCertificate]:
    """Lexicographically first triple z1, z2, z3 forming an array of length two"""
    coords = _sorted_coords(points)
    if len(coords) < 3:
        return None
    vertical, horizontal = axis_matrices(coords, tol)
    best = None
    for middle in np.flatnonzero(vertical.any(axis=1) & horizontal.any(axis=1)):
        middle = int(middle)
        # points are sorted, so comparing index triples compares the points
        for axes, into, out_of in (
            ([Axis.VERTICAL, Axis.HORIZONTAL], vertical, horizontal),
            ([Axis.HORIZONTAL, Axis.VERTICAL], horizontal, vertical),
        ):
            pair = _first_pair(np.flatnonzero(into[middle]), np.flatnonzero(out_of[middle]))
            if pair is None:
                continue
            key = (pair[0], middle, pair[1])
            if best is None or key < best[0]:
                best = (key, axes)
    if best is None:
        return None
    key, axes = best
    return ArrayCertificate([Point(*map(float, coords[k])) for k in key], axes)


def find_array(points, length=2, tol=0.0) -> Optional[ArrayCertificate]:
    """Some array of the given length, found by dynamic programming over segment ends.

    reach[axis][k] marks points that end an array of k + 1 segments whose
    last segment has the given orientation; parents allow the witness to be
    rebuilt. Points may repeat along the array and only consecutive ones must
    differ, so for length 3 and up a witness can revisit a point, for example
    by going round the corners of a rectangle. Length 2 is delegated to
    find_length2_array, which also requires z1 != z3.
    """
    if length < 1:
        raise InvalidArgument(f"Array length must be at least 1, got {length}")
    if length == 2:
        return find_length2_array(points, tol)
    coords = _sorted_coords(points)
    if len(coords) < 2:
        return None
    relation = dict(zip((Axis.VERTICAL, Axis.HORIZONTAL), axis_matrices(coords, tol)))
    other = {Axis.VERTICAL: Axis.HORIZONTAL, Axis.HORIZONTAL: Axis.VERTICAL}
    reach = {axis: [relation[axis].any(axis=0)] for axis in relation}
    parents = {axis: [relation[axis].argmax(axis=0)] for axis in relation}
    for _ in range(1, length):
        previous = {axis: reach[axis][-1] for axis in relation}
        for axis in relation:
            # previous segment had the other orientation and ended where this one starts
            allowed = relation[axis] & previous[other[axis]][:, None]
            reach[axis].append(allowed.any(axis=0))
            parents[axis].append(allowed.argmax(axis=0))
    for axis in (Axis.VERTICAL, Axis.HORIZONTAL):
        ends = np.flatnonzero(reach[axis][-1])
        if not len(ends):
            continue
        chain, axes, current, current_axis = [int(ends[0])], [], int(ends[0]), axis
        for step in range(length - 1, -1, -1):
            current = int(parents[current_axis][step][current])
            chain.append(current)
            axes.append(current_axis)
            current_axis = other[current_axis]
        chain.reverse()
        axes.reverse()
        return ArrayCertificate([Point(*map(float, coords[k])) for k in chain], axes)
    return None


def shortest_bridging_almost_array(V: RepresentativeSet, delta: float) -> Optional[AlmostArrayPath]:
    """Witness path realising bridge_gap, or None when the gap is infinite"""
    _, path = bridge_search(V, delta)
    if path is None:
        return None
    return AlmostArrayPath([V.point(k) for k in path], V.level)
