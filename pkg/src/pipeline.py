"""One decomposition pass and the refinement loop built on it.

A pass turns f into g(x) + h(y) up to 20 epsilon on the sample. refine runs
passes on the residual with epsilon = |residual| / 40, so every pass at
least halves the residual, and sums the pieces.
"""

import logging
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np
from scipy.spatial.distance import pdist

from certify import Report, build_report
from const import *
from errors import DegenerateSample, InvalidArgument, NoConvergence
from extend import PWLinear, extend_pwl, pwl_sum
from gamma import build_G, build_H, compute_gamma, level_count
from geometry import check_level, check_positive
from quantize import SampledCompactum, build_representatives, select_level

logger = logging.getLogger(APPLICATION)


@dataclass(frozen=True)
class RefineStep:
    iteration: int
    norm: float
    epsilon: float
    delta: float
    n: int
    F: int
    residual: float

    def to_dict(self):
        return {
            "iteration": self.iteration,
            "norm": self.norm,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "n": self.n,
            "F": self.F,
            "residual": self.residual,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            int(data["iteration"]),
            float(data["norm"]),
            float(data["epsilon"]),
            float(data["delta"]),
            int(data["n"]),
            int(data["F"]),
            float(data["residual"]),
        )


@dataclass(frozen=True)
class DecompositionMeta:
    """Parameters of the last pass; all None when no pass was needed"""

    n: Optional[int]
    epsilon: Optional[float]
    delta: Optional[float]
    F: Optional[int]
    iterations: int
    sup_residual: float
    history: Tuple[RefineStep, ...] = ()

    def to_dict(self):
        return {
            "n": self.n,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "F": self.F,
            "iterations": self.iterations,
            "sup_residual": self.sup_residual,
            "history": [step.to_dict() for step in self.history],
        }


@dataclass(frozen=True, eq=False)
class Decomposition:
    g: PWLinear
    h: PWLinear
    meta: DecompositionMeta

    def __call__(self, x, y):
        return self.g(x) + self.h(y)

    def residuals(self, sample: SampledCompactum):
        return sample.values - self.g(sample.coords[:, 0]) - self.h(sample.coords[:, 1])

    def sup_residual(self, sample: SampledCompactum):
        return float(np.abs(self.residuals(sample)).max())

    def __eq__(self, other):
        if not isinstance(other, Decomposition):
            return NotImplemented
        return self.g == other.g and self.h == other.h and self.meta == other.meta

    __hash__ = None


def estimate_delta(sample: SampledCompactum, epsilon):
    """Largest radius below which every pair of sample points differs by less than epsilon.

    That is the shortest distance of a pair with |delta f| >= epsilon, or the
    largest pair distance when no pair is that far apart in value.
    """
    check_positive("epsilon", epsilon)
    if len(sample) < 2:
        raise DegenerateSample("Estimating delta needs at least two points")
    distances = pdist(sample.coords, "chebyshev")
    differences = pdist(sample.values.reshape(-1, 1), "chebyshev")
    if not (distances > 0).any():
        raise DegenerateSample("All sample points coincide")
    bad = differences >= epsilon
    delta = float(distances[bad].min()) if bad.any() else float(distances.max())
    logger.debug(f"Estimated delta {delta} for epsilon {epsilon}")
    return delta


def delta_from_lipschitz(L, epsilon):
    check_positive("L", L)
    check_positive("epsilon", epsilon)
    return epsilon / L


def approximate_decompose(
    sample: SampledCompactum, epsilon, delta=None, n=None, n_max=DEFAULT_N_MAX
) -> Decomposition:
    check_positive("epsilon", epsilon)
    if delta is None:
        # a single point has no pairs, every radius is admissible
        delta = estimate_delta(sample, epsilon) if len(sample) > 1 else 1.0
    delta = check_positive("delta", delta)
    F = level_count(sample.norm, epsilon)
    n = select_level(sample, delta, F, n_max) if n is None else check_level(n)

    V = build_representatives(sample, n)
    potential = compute_gamma(V, epsilon, delta, F)
    G = build_G(V, potential.values)
    H = build_H(V, G)
    g = extend_pwl(G, n, sample.column_cells(n))
    h = extend_pwl(H, n, sample.row_cells(n))

    decomposition = Decomposition(g, h, DecompositionMeta(n, epsilon, delta, F, 1, 0.0))
    sup_residual = decomposition.sup_residual(sample)
    logger.debug(
        f"Pass at level {n}: |V|={len(V)}, F={F}, delta={delta}, residual {sup_residual}"
    )
    return replace(decomposition, meta=replace(decomposition.meta, sup_residual=sup_residual))


def refine(
    sample: SampledCompactum,
    tol,
    max_iter=DEFAULT_REFINE_MAX_ITER,
    n_max=DEFAULT_N_MAX,
    epsilon_divisor=DEFAULT_EPSILON_DIVISOR,
) -> Decomposition:
    """Runs passes on the residual until it is at most tol on the sample"""
    check_positive("tol", tol)
    if max_iter < 0:
        raise InvalidArgument(f"max_iter must be nonnegative, got {max_iter}")
    if epsilon_divisor < 2 * PASS_BOUND_FACTOR:
        raise InvalidArgument(
            f"epsilon_divisor must be at least {2 * PASS_BOUND_FACTOR}, got {epsilon_divisor}"
        )
    g_parts, h_parts, history = [], [], []
    current, last = sample, None
    residual = sample.norm
    while residual > tol:
        if len(history) == max_iter:
            partial = _accumulate(sample, g_parts, h_parts, history, last)
            raise NoConvergence(
                f"Residual {residual} still above {tol} after {max_iter} iterations",
                residual,
                partial,
            )
        epsilon = residual / epsilon_divisor
        last = approximate_decompose(current, epsilon, n_max=n_max)
        g_parts.append(last.g)
        h_parts.append(last.h)
        g, h = pwl_sum(g_parts), pwl_sum(h_parts)
        values = sample.values - g(sample.coords[:, 0]) - h(sample.coords[:, 1])
        current = sample.with_values(values)
        step = RefineStep(
            len(history) + 1,
            residual,
            epsilon,
            last.meta.delta,
            last.meta.n,
            last.meta.F,
            current.norm,
        )
        history.append(step)
        logger.debug(
            f"Refine pass {step.iteration}: |f|={step.norm}, epsilon={step.epsilon}, "
            f"delta={step.delta}, n={step.n}, F={step.F}, residual {step.residual}"
        )
        residual = current.norm
    return _accumulate(sample, g_parts, h_parts, history, last)


def _accumulate(sample, g_parts, h_parts, history, last):
    g, h = pwl_sum(g_parts), pwl_sum(h_parts)
    if last is None:
        meta = DecompositionMeta(None, None, None, None, 0, 0.0)
    else:
        meta = DecompositionMeta(
            last.meta.n, last.meta.epsilon, last.meta.delta, last.meta.F, len(history), 0.0
        )
    decomposition = Decomposition(g, h, replace(meta, history=tuple(history)))
    return replace(
        decomposition,
        meta=replace(decomposition.meta, sup_residual=decomposition.sup_residual(sample)),
    )


def residual_report(
    sample: SampledCompactum, d: Decomposition, bins=DEFAULT_HISTOGRAM_BINS
) -> Report:
    """Re-derives every recorded bound of d from the sample"""
    residuals = d.residuals(sample)
    return build_report(sample, d, residuals, bins)
