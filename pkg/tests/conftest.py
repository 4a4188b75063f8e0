import pytest

from generators import attach_function, gen_disjoint_cross_free, gen_monotone_curve, gen_with_array
from log import addLoggingLevel
from quantize import SampledCompactum

addLoggingLevel("SUCCESS", 60, "success")

# long vertical ends A, B and long horizontal ends C, D joined by a chain of
# four short steps; at level 4 with delta 0.5 every point has its own cell
CHAIN = [
    (0.0, 0.0),
    (0.01, 0.9),
    (0.31, 1.2),
    (0.61, 1.5),
    (0.91, 1.8),
    (1.21, 2.1),
    (2.0, 2.15),
]

# four points on a vertical segment and four on a horizontal one, mixed signs
MIXED = [
    ((0.0, 0.0), -1.0),
    ((0.0, 0.3), -0.4),
    ((0.0, 0.6), 0.2),
    ((0.0, 0.9), 0.7),
    ((2.0, 2.0), 1.3),
    ((2.3, 2.0), 0.9),
    ((2.6, 2.0), 0.4),
    ((2.9, 2.0), -0.2),
]


@pytest.fixture
def chain_sample():
    return SampledCompactum.from_points(CHAIN)


@pytest.fixture
def mixed_sample():
    return SampledCompactum.from_points([p for p, _ in MIXED], [f for _, f in MIXED])


@pytest.fixture
def curve_sample():
    return attach_function(gen_monotone_curve(80, seed=1), "sin_poly", (3.0, 2.0))


@pytest.fixture
def cross_free_sample():
    return attach_function(gen_disjoint_cross_free(seed=2, count=120), "sin_poly", (3.0, 2.0))


@pytest.fixture
def l_shape_sample():
    return attach_function(gen_with_array(seed=3, count=80), "coordinate_sum")


@pytest.fixture
def zero_sample():
    return gen_monotone_curve(40, seed=4)
