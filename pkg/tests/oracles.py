"""Brute-force reference implementations the fast code is compared against."""

import itertools
from collections import Counter

import networkx as nx
import numpy as np

from geometry import classify_segment


def long_ends(points, n, delta):
    vertical, horizontal = set(), set()
    for a, b in itertools.permutations(points, 2):
        kind = classify_segment(a, b, n, delta)
        if kind.long and kind.almost_vertical:
            vertical.add(tuple(a))
        if kind.long and kind.almost_horizontal:
            horizontal.add(tuple(a))
    return vertical, horizontal


def first_length2_array(points, tol=0.0):
    """Lexicographically first (z1, z2, z3) by exhaustive triple scan"""
    points = sorted(tuple(p) for p in points)

    def vertical(a, b):
        return a != b and abs(a[0] - b[0]) <= tol

    def horizontal(a, b):
        return a != b and abs(a[1] - b[1]) <= tol

    for z1, z2, z3 in itertools.product(points, repeat=3):
        if z1 == z3:
            continue
        if (vertical(z1, z2) and horizontal(z2, z3)) or (
            horizontal(z1, z2) and vertical(z2, z3)
        ):
            return z1, z2, z3
    return None


def has_length2_array(points):
    """Exact existence of an array of length two: some point shares its x with
    one other point and its y with another"""
    coords = np.asarray(points, dtype=float).reshape(-1, 2)
    same_x = coords[:, 0][:, None] == coords[:, 0][None, :]
    same_y = coords[:, 1][:, None] == coords[:, 1][None, :]
    np.fill_diagonal(same_x, False)
    np.fill_diagonal(same_y, False)
    return bool((same_x.any(axis=1) & same_y.any(axis=1)).any())


def level_histogram(values, epsilon):
    counts = Counter()
    for value in values:
        level = 0
        while (level + 1) * epsilon <= value:
            level += 1
        while level * epsilon > value:
            level -= 1
        counts[level] += 1
    return counts


def unit_distances(graph, source):
    return nx.single_source_dijkstra_path_length(graph, source)
