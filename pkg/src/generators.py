"""Seeded test compacta with known array structure, and the functions put on them."""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from const import *
from errors import InvalidArgument, UnknownFunction
from quantize import SampledCompactum

logger = logging.getLogger(APPLICATION)

DEFAULT_SEGMENT_COUNT = 200


@dataclass(frozen=True)
class GeneratorSpec:
    kind: GeneratorKind
    count: int = DEFAULT_SEGMENT_COUNT
    seed: int = 0
    params: Tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", GeneratorKind(self.kind))
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        if self.count < 1:
            raise InvalidArgument(f"count must be at least 1, got {self.count}")

    def generate(self) -> SampledCompactum:
        """params: none for a curve, the (x, y) offset of the horizontal segment
        for the cross-free kind and the arm length of the L-shape"""
        if self.kind == GeneratorKind.MONOTONE_CURVE:
            if self.params:
                raise InvalidArgument("A monotone curve takes no parameters")
            return gen_monotone_curve(self.count, self.seed)
        if self.kind == GeneratorKind.DISJOINT_CROSS_FREE:
            return gen_disjoint_cross_free(self.seed, self.count, *self.params)
        return gen_with_array(self.seed, self.count, *self.params)


def _unit_steps(rng, count):
    # strictly positive increments, rescaled onto [0, 1]
    steps = np.concatenate(([0.0], np.cumsum(rng.uniform(0.1, 1.0, count - 1))))
    return steps / steps[-1]


def gen_monotone_curve(count, seed=0) -> SampledCompactum:
    """count points on a strictly increasing curve from (0, 0) to (1, 1)"""
    if count < 2:
        raise InvalidArgument(f"A monotone curve needs at least 2 points, got {count}")
    rng = np.random.default_rng(seed)
    x = _unit_steps(rng, count)
    y = _unit_steps(rng, count)
    return SampledCompactum(np.column_stack((x, y)))


def _segment_parameters(rng, count):
    """count distinct parameters in [0, 1] including both ends"""
    inner = np.unique(rng.uniform(0.0, 1.0, max(count - 2, 0)))
    inner = inner[(inner > 0.0) & (inner < 1.0)]
    return np.concatenate(([0.0], inner, [1.0]))


def gen_disjoint_cross_free(
    seed=0, count=DEFAULT_SEGMENT_COUNT, x_offset=2.0, y_offset=2.0
) -> SampledCompactum:
    """Sample of {0} x [0, 1] together with [x_offset, x_offset + 1] x {y_offset}"""
    if count < 4:
        raise InvalidArgument(f"Two segments need at least 4 points, got {count}")
    if -1.0 <= x_offset <= 0.0 or 0.0 <= y_offset <= 1.0:
        raise InvalidArgument(
            f"Offset ({x_offset}, {y_offset}) makes the segments share a projection"
        )
    rng = np.random.default_rng(seed)
    vertical = _segment_parameters(rng, count // 2)
    horizontal = _segment_parameters(rng, count - count // 2)
    coords = np.concatenate(
        (
            np.column_stack((np.zeros_like(vertical), vertical)),
            np.column_stack((x_offset + horizontal, np.full_like(horizontal, y_offset))),
        )
    )
    return SampledCompactum(coords)


def gen_with_array(seed=0, count=DEFAULT_SEGMENT_COUNT, arm=1.0) -> SampledCompactum:
    """L-shaped sample {0} x [0, arm] with [0, arm] x {arm}, corner included once"""
    if count < 3:
        raise InvalidArgument(f"An L-shape needs at least 3 points, got {count}")
    if not arm > 0:
        raise InvalidArgument(f"arm must be positive, got {arm}")
    rng = np.random.default_rng(seed)
    vertical = _segment_parameters(rng, max(2, (count + 1) // 2))
    horizontal = _segment_parameters(rng, max(2, count - len(vertical) + 1))[1:]
    coords = np.concatenate(
        (
            np.column_stack((np.zeros_like(vertical), arm * vertical)),
            np.column_stack((arm * horizontal, np.full_like(horizontal, arm))),
        )
    )
    return SampledCompactum(coords)


def _zero(x, y):
    return np.zeros_like(x)


def _constant(x, y, value=1.0):
    return np.full_like(x, value)


def _coordinate_sum(x, y):
    return x + y


def _sin_poly(x, y, a=3.0, b=2.0):
    return np.sin(a * x) + y**b


FUNCTIONS = {
    "zero": _zero,
    "constant": _constant,
    "coordinate_sum": _coordinate_sum,
    "sin_poly": _sin_poly,
}

# names usable in expressions such as "expr:x*y + cos(x)"
EXPRESSION_NAMESPACE = {
    name: getattr(np, name)
    for name in ("sin", "cos", "tan", "exp", "log", "sqrt", "abs", "pi", "e", "minimum", "maximum")
}
EXPRESSION_PREFIX = "expr:"


def _expression(text):
    try:
        code = compile(text, "<expression>", "eval")
    except SyntaxError as e:
        raise UnknownFunction(f"Cannot parse expression {text!r}: {e.msg}")
    unknown = set(code.co_names) - set(EXPRESSION_NAMESPACE) - {"x", "y"}
    if unknown:
        raise UnknownFunction(
            f"Expression {text!r} uses unknown names: {', '.join(sorted(unknown))}"
        )

    def evaluate(x, y):
        namespace = dict(EXPRESSION_NAMESPACE, x=x, y=y)
        return np.broadcast_to(eval(code, {"__builtins__": {}}, namespace), x.shape)

    return evaluate


def resolve_function(name):
    if callable(name):
        return name
    if name in FUNCTIONS:
        return FUNCTIONS[name]
    if isinstance(name, str) and name.startswith(EXPRESSION_PREFIX):
        return _expression(name[len(EXPRESSION_PREFIX) :])
    raise UnknownFunction(
        f"Unknown function {name!r}, expected one of {', '.join(FUNCTIONS)} "
        f"or {EXPRESSION_PREFIX}<expression>"
    )


def attach_function(sample: SampledCompactum, name, params=()) -> SampledCompactum:
    function = resolve_function(name)
    x, y = sample.coords[:, 0], sample.coords[:, 1]
    values = np.asarray(function(x, y, *params), dtype=float)
    return sample.with_values(values)
