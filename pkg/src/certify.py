"""Re-checks of the bounds a decomposition pass guarantees.

Every check is recomputed from the sample and the recorded parameters, never
read back from the pass itself. Comparisons allow ROUNDING_SLACK scaled by
|f| except where a check is marked exact.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from const import *
from extend import PWLinear
from gamma import GammaField, TableFunction, build_G, build_H, compute_gamma
from geometry import cell_side
from quantize import SCAN_BLOCK, RepresentativeSet, SampledCompactum, build_representatives

logger = logging.getLogger(APPLICATION)


@dataclass(frozen=True)
class BoundCheck:
    name: str
    bound: float
    worst: float
    violations: int
    exact: bool = False

    @property
    def holds(self):
        return self.violations == 0

    def to_dict(self):
        return {
            "name": self.name,
            "bound": self.bound,
            "worst": self.worst,
            "violations": self.violations,
            "exact": self.exact,
            "holds": self.holds,
        }


def _check(name, bound, excess, slack=0.0, exact=False):
    """excess holds the quantities that must stay at or below bound"""
    excess = np.asarray(excess, dtype=float).reshape(-1)
    worst = float(excess.max()) if len(excess) else 0.0
    limit = bound if exact else bound + slack
    return BoundCheck(name, float(bound), worst, int((excess > limit).sum()), exact)


def _pair_check(name, bound, coords, values, relation, slack):
    """Worst |values[i] - values[j]| over the pairs selected by relation(dx, dy)"""
    worst, violations = 0.0, 0
    for start in range(0, len(coords), SCAN_BLOCK):
        rows = slice(start, min(start + SCAN_BLOCK, len(coords)))
        dx = np.abs(coords[rows, 0, None] - coords[None, :, 0])
        dy = np.abs(coords[rows, 1, None] - coords[None, :, 1])
        upper = np.arange(rows.start, rows.stop)[:, None] < np.arange(len(coords))[None, :]
        selected = relation(dx, dy) & upper
        spread = np.abs(values[rows, None] - values[None, :])[selected]
        if len(spread):
            worst = max(worst, float(spread.max()))
            violations += int((spread > bound + slack).sum())
    return BoundCheck(name, float(bound), worst, violations)


def gamma_checks(V: RepresentativeSet, potential: GammaField, delta, slack) -> List[BoundCheck]:
    epsilon = potential.epsilon
    values, f = potential.values, V.values
    plus = f >= 0
    below = np.where(plus, np.maximum(values - f, -values), np.maximum(f - values, values))
    steps = values / epsilon
    return [
        _pair_check(
            "gamma short segments",
            epsilon,
            V.coords,
            values,
            lambda dx, dy: np.maximum(dx, dy) < delta,
            slack,
        ),
        _check(
            "gamma long horizontal ends",
            epsilon,
            np.abs(f - values)[potential.long_horizontal],
            slack,
        ),
        _check(
            "gamma long vertical ends",
            0.0,
            np.abs(values)[potential.long_vertical],
            exact=True,
        ),
        _check("gamma sandwich", 0.0, below, slack),
        _check(
            "gamma multiples of epsilon",
            0.0,
            np.abs(steps - np.round(steps)) * epsilon,
            slack,
        ),
        _check("gamma norm", float(np.abs(f).max()), np.abs(values), slack),
    ]


def g_checks(V: RepresentativeSet, potential: GammaField, G: TableFunction, delta, slack):
    epsilon = potential.epsilon
    at_points = G.lookup(V.coords[:, 0])
    return [
        _pair_check(
            "G short segments",
            3 * epsilon,
            V.coords,
            at_points,
            lambda dx, dy: np.maximum(dx, dy) < delta,
            slack,
        ),
        _check(
            "G long horizontal ends",
            2 * epsilon,
            np.abs(at_points - V.values)[potential.long_horizontal],
            slack,
        ),
        _check(
            "G long vertical ends",
            epsilon,
            np.abs(at_points)[potential.long_vertical],
            slack,
        ),
        _check("G norm", V.source.norm, np.abs(G.values), slack),
    ]


def gh_checks(V: RepresentativeSet, G: TableFunction, H: TableFunction, epsilon, slack):
    near = 2.0 * cell_side(V.level)
    g_points = G.lookup(V.coords[:, 0])
    h_points = H.lookup(V.coords[:, 1])
    return [
        _check(
            "G+H on representatives",
            4 * epsilon,
            np.abs(V.values - g_points - h_points),
            slack,
        ),
        _pair_check(
            "G almost vertical segments",
            3 * epsilon,
            V.coords,
            g_points,
            lambda dx, dy: dx < near,
            slack,
        ),
        _pair_check(
            "H almost horizontal segments",
            12 * epsilon,
            V.coords,
            h_points,
            lambda dx, dy: dy < near,
            slack,
        ),
        _check("H norm", 2 * V.source.norm, np.abs(H.values), slack),
    ]


def extension_checks(G: TableFunction, g: PWLinear, H: TableFunction, h: PWLinear):
    return [
        _check("g extends G", 0.0, np.abs(g(G.domain) - G.values), exact=True),
        _check("h extends H", 0.0, np.abs(h(H.domain) - H.values), exact=True),
        _check("g bounded by G", G.norm, [g.norm], exact=True),
        _check("h bounded by H", H.norm, [h.norm], exact=True),
    ]


def sample_checks(sample: SampledCompactum, d, residuals, slack):
    norm = sample.norm
    if d.meta.iterations == 1 and d.meta.epsilon is not None:
        return [
            # the per-pass guarantee is compared without slack
            _check(
                "sample residual",
                PASS_BOUND_FACTOR * d.meta.epsilon,
                np.abs(residuals),
                exact=True,
            ),
            _check("g norm", norm, [d.g.norm], slack),
            _check("h norm", 2 * norm, [d.h.norm], slack),
        ]
    checks = [
        _check("g norm", 2 * norm, [d.g.norm], slack),
        _check("h norm", 4 * norm, [d.h.norm], slack),
    ]
    if d.meta.history:
        checks.append(
            _check(
                "residual halving",
                0.0,
                [step.residual - step.norm / 2 for step in d.meta.history],
                slack,
            )
        )
    return checks


def pass_checks(sample: SampledCompactum, d, slack):
    """Intermediate bounds of a single pass, re-derived at the recorded n, epsilon and delta"""
    n, epsilon, delta = d.meta.n, d.meta.epsilon, d.meta.delta
    V = build_representatives(sample, n)
    potential = compute_gamma(V, epsilon, delta)
    G = build_G(V, potential.values)
    H = build_H(V, G)
    return (
        gamma_checks(V, potential, delta, slack)
        + g_checks(V, potential, G, delta, slack)
        + gh_checks(V, G, H, epsilon, slack)
        + extension_checks(G, d.g, H, d.h)
    )


@dataclass(frozen=True)
class Report:
    sup_residual: float
    norm_f: float
    norm_g: float
    norm_h: float
    iterations: int
    checks: List[BoundCheck] = field(default_factory=list)
    histogram: List[int] = field(default_factory=list)
    histogram_edges: List[float] = field(default_factory=list)
    # carried from the sample, never verified
    declared_spacing: Optional[float] = None

    @property
    def holds(self):
        return all(check.holds for check in self.checks)

    @property
    def violations(self):
        return sum(check.violations for check in self.checks)

    def check(self, name):
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def to_dict(self):
        return {
            "sup_residual": self.sup_residual,
            "norm_f": self.norm_f,
            "norm_g": self.norm_g,
            "norm_h": self.norm_h,
            "iterations": self.iterations,
            "checks": [check.to_dict() for check in self.checks],
            "histogram": {"counts": self.histogram, "edges": self.histogram_edges},
            "declared_spacing": self.declared_spacing,
        }

    def lines(self):
        yield f"sup residual: {self.sup_residual!r}"
        yield f"|f| = {self.norm_f!r}  |g| = {self.norm_g!r}  |h| = {self.norm_h!r}"
        for check in self.checks:
            status = "ok" if check.holds else f"{check.violations} violations"
            yield f"{check.name}: worst {check.worst!r} <= {check.bound!r} {status}"
        for count, low, high in zip(
            self.histogram, self.histogram_edges, self.histogram_edges[1:]
        ):
            yield f"residual in [{low!r}, {high!r}]: {count}"


def build_report(sample: SampledCompactum, d, residuals, bins=DEFAULT_HISTOGRAM_BINS) -> Report:
    norm = sample.norm
    slack = ROUNDING_SLACK * max(1.0, norm)
    magnitudes = np.abs(residuals)
    sup_residual = float(magnitudes.max())
    checks = []
    if d.meta.iterations == 1 and d.meta.n is not None:
        checks += pass_checks(sample, d, slack)
    checks += sample_checks(sample, d, residuals, slack)
    counts, edges = np.histogram(
        magnitudes, bins=bins, range=(0.0, sup_residual if sup_residual > 0 else 1.0)
    )
    report = Report(
        sup_residual,
        norm,
        d.g.norm,
        d.h.norm,
        d.meta.iterations,
        checks,
        counts.tolist(),
        edges.tolist(),
        sample.declared_spacing,
    )
    if sample.declared_spacing is not None:
        logger.warning(
            f"Declared sample spacing {sample.declared_spacing} is reported but not verified"
        )
    for check in checks:
        if not check.holds:
            logger.warning(
                f"Bound '{check.name}' violated {check.violations} times "
                f"(worst {check.worst}, bound {check.bound})"
            )
    return report
