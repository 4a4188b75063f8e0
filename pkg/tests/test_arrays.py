import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrays import (
    AlmostArrayPath,
    ArrayCertificate,
    find_array,
    find_length2_array,
    shortest_bridging_almost_array,
)
from const import Axis
from geometry import Point
from oracles import first_length2_array, has_length2_array
from quantize import build_representatives

STAIRCASE = [(0, 0), (0, 1), (1, 1), (1, 2)]


def test_l_shape_has_an_array(l_shape_sample):
    certificate = find_length2_array(l_shape_sample.points)
    assert certificate is not None
    assert certificate.length == 2
    assert certificate.validate()


def test_hand_l_shape_certificate():
    certificate = find_length2_array([(1, 1), (0, 1), (0, 0)])
    assert certificate.points == [Point(0, 0), Point(0, 1), Point(1, 1)]
    assert certificate.orientations == [Axis.VERTICAL, Axis.HORIZONTAL]


def test_monotone_curve_has_no_array(curve_sample):
    assert find_length2_array(curve_sample.points) is None
    assert find_array(curve_sample.points, 1) is None


def test_cross_free_has_segments_but_no_length2_array(cross_free_sample):
    assert find_array(cross_free_sample.points, 1) is not None
    assert find_length2_array(cross_free_sample.points) is None


def test_too_few_points():
    assert find_length2_array([(0, 0), (0, 1)]) is None
    assert find_array([], 3) is None


@pytest.mark.parametrize("seed", range(20))
@pytest.mark.parametrize("tol", [0.0, 1 / 16])
def test_matches_triple_scan_on_snapped_points(seed, tol):
    rng = np.random.default_rng(seed)
    size = 6 if seed % 2 else 16
    grid = {tuple(p) for p in rng.integers(0, size, (40, 2)).tolist()}
    points = [(i / size, j / size) for i, j in sorted(grid)]
    certificate = find_length2_array(points, tol)
    expected = first_length2_array(points, tol)
    if expected is None:
        assert certificate is None
    else:
        assert tuple(map(tuple, certificate.points)) == expected
        assert certificate.validate(tol)


@pytest.mark.parametrize("seed", range(100))
def test_existence_matches_axis_oracle_on_full_grid(seed):
    grid = np.unique(np.random.default_rng(seed).integers(0, 40, (150, 2)), axis=0)
    points = [(i / 40, j / 40) for i, j in grid.tolist()]
    certificate = find_length2_array(points)
    assert (certificate is not None) == has_length2_array(points)
    if certificate is not None:
        assert certificate.validate()

@settings(max_examples=50, deadline=None)
@given(
    st.lists(
        st.tuples(st.integers(0, 8), st.integers(0, 8)), min_size=3, max_size=12, unique=True
    ),
    st.sampled_from([0.0, 0.1, 0.2]),
    st.sampled_from([0.0, 0.1, 0.2]),
)
def test_no_array_stays_no_array_for_smaller_tol(grid, tol_a, tol_b):
    points = [(i / 8, j / 8) for i, j in grid]
    small, large = sorted((tol_a, tol_b))
    if find_length2_array(points, large) is None:
        assert find_length2_array(points, small) is None


def test_length3_array_on_staircase():
    certificate = find_array(STAIRCASE, 3)
    assert certificate is not None
    assert certificate.length == 3
    assert certificate.validate()


def test_l_shape_has_no_length3_array():
    assert find_array([(0, 0), (0, 1), (0.5, 1), (1, 1)], 3) is None


def test_long_array_may_revisit_corners():
    corners = [(0, 0), (0, 1), (1, 1), (1, 0)]
    certificate = find_array(corners, 6)
    assert certificate is not None
    assert certificate.length == 6
    assert certificate.validate()
    assert len(set(certificate.points)) == 4


def test_array_length_must_be_positive():
    with pytest.raises(ValueError):
        find_array(STAIRCASE, 0)


def test_certificate_validation_rejects_repeated_orientation():
    certificate = ArrayCertificate(
        [Point(0, 0), Point(0, 1), Point(0, 2)], [Axis.VERTICAL, Axis.VERTICAL]
    )
    assert not certificate.validate()
    bent = ArrayCertificate(
        [Point(0, 0), Point(0.05, 1), Point(1, 1)], [Axis.VERTICAL, Axis.HORIZONTAL]
    )
    assert not bent.validate()
    assert bent.validate(tol=0.05)


def test_certificate_to_dict():
    certificate = find_length2_array([(0, 0), (0, 1), (1, 1)])
    assert certificate.to_dict() == {
        "points": [[0.0, 0.0], [0.0, 1.0], [1.0, 1.0]],
        "orientations": ["vertical", "horizontal"],
    }


def test_bridging_path_on_chain(chain_sample):
    V = build_representatives(chain_sample, 4)
    path = shortest_bridging_almost_array(V, 0.5)
    assert path.length == 4
    assert path.level == 4
    assert path.points[0] == Point(0.01, 0.9)
    assert path.points[-1] == Point(1.21, 2.1)
    assert path.validate(0.5)


def test_no_bridging_path_when_gap_is_infinite(cross_free_sample):
    V = build_representatives(cross_free_sample, 5)
    assert shortest_bridging_almost_array(V, 0.1) is None


def test_almost_array_rejects_repeated_points():
    path = AlmostArrayPath([Point(0, 0), Point(0, 1), Point(0, 0)], 3)
    assert not path.validate(0.5)
