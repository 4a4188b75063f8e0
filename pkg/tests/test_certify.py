import logging

import numpy as np
import pytest

from certify import build_report, extension_checks, sample_checks
from const import APPLICATION
from extend import PWLinear
from gamma import TableFunction
from pipeline import Decomposition, DecompositionMeta, approximate_decompose
from quantize import SampledCompactum


@pytest.fixture
def zero_split(mixed_sample):
    # claims a single pass at epsilon 0.01 but never moved anything into g or h
    meta = DecompositionMeta(3, 0.01, 0.29, 130, 1, mixed_sample.norm)
    return Decomposition(PWLinear.constant(0.0), PWLinear.constant(0.0), meta)


def test_sample_residual_is_compared_exactly(mixed_sample, zero_split):
    checks = {
        check.name: check
        for check in sample_checks(mixed_sample, zero_split, zero_split.residuals(mixed_sample), 0.0)
    }
    residual = checks["sample residual"]
    assert residual.exact
    assert residual.bound == pytest.approx(0.2)
    assert residual.worst == 1.3
    # |f| > 0.2 at six of the eight points
    assert residual.violations == 6
    assert checks["g norm"].holds and checks["h norm"].holds


def test_refined_bounds(mixed_sample):
    meta = DecompositionMeta(None, None, None, None, 0, 0.0)
    d = Decomposition(PWLinear.constant(3.0), PWLinear.constant(0.0), meta)
    checks = {check.name: check for check in sample_checks(mixed_sample, d, d.residuals(mixed_sample), 0.0)}
    assert "sample residual" not in checks
    assert checks["g norm"].bound == 2.6
    assert checks["g norm"].violations == 1
    assert checks["h norm"].holds


def test_extension_mismatch():
    G = TableFunction([0.0, 1.0], [0.0, 1.0])
    checks = {
        check.name: check
        for check in extension_checks(G, PWLinear([0.0, 1.0], [0.0, 2.0]), G, PWLinear([0.0, 1.0], [0.0, 1.0]))
    }
    assert checks["g extends G"].violations == 1
    assert checks["g extends G"].worst == 1.0
    assert not checks["g bounded by G"].holds
    assert checks["h extends H"].holds and checks["h bounded by H"].holds


def test_report_of_a_pass(mixed_sample):
    d = approximate_decompose(mixed_sample, 0.25)
    report = build_report(mixed_sample, d, d.residuals(mixed_sample), bins=4)
    assert report.holds and report.violations == 0
    assert report.iterations == 1
    assert report.norm_f == 1.3
    assert report.check("gamma long vertical ends").worst == 0.0
    assert sum(report.histogram) == len(mixed_sample)
    assert len(report.histogram_edges) == 5
    assert report.histogram_edges[-1] == report.sup_residual
    with pytest.raises(KeyError):
        report.check("no such bound")


def test_report_serialises(mixed_sample):
    d = approximate_decompose(mixed_sample, 0.25)
    data = build_report(mixed_sample, d, d.residuals(mixed_sample)).to_dict()
    assert set(data) == {
        "sup_residual",
        "norm_f",
        "norm_g",
        "norm_h",
        "iterations",
        "checks",
        "histogram",
        "declared_spacing",
    }
    assert all(check["holds"] for check in data["checks"])
    assert sum(data["histogram"]["counts"]) == 8


def test_report_lines(mixed_sample):
    d = approximate_decompose(mixed_sample, 0.25)
    lines = list(build_report(mixed_sample, d, d.residuals(mixed_sample), bins=2).lines())
    assert lines[0].startswith("sup residual: ")
    assert any(line.startswith("G+H on representatives: worst ") and line.endswith(" ok") for line in lines)
    assert sum(line.startswith("residual in [") for line in lines) == 2


def test_violations_are_logged(mixed_sample, caplog):
    meta = DecompositionMeta(None, None, None, None, 2, 0.0)
    d = Decomposition(PWLinear.constant(10.0), PWLinear.constant(0.0), meta)
    with caplog.at_level(logging.WARNING, logger=APPLICATION):
        report = build_report(mixed_sample, d, d.residuals(mixed_sample))
    assert not report.holds
    assert "Bound 'g norm' violated 1 times" in caplog.text


def test_zero_residual_histogram(zero_sample):
    meta = DecompositionMeta(None, None, None, None, 0, 0.0)
    d = Decomposition(PWLinear.constant(0.0), PWLinear.constant(0.0), meta)
    report = build_report(zero_sample, d, np.zeros(len(zero_sample)), bins=3)
    assert report.histogram == [len(zero_sample), 0, 0]
    assert report.histogram_edges[-1] == 1.0


def test_declared_spacing_is_carried_not_checked(mixed_sample, caplog):
    sample = SampledCompactum(mixed_sample.coords, mixed_sample.values, declared_spacing=0.01)
    d = approximate_decompose(sample, 0.25)
    with caplog.at_level(logging.WARNING, logger=APPLICATION):
        report = build_report(sample, d, d.residuals(sample))
    assert report.declared_spacing == 0.01
    assert report.to_dict()["declared_spacing"] == 0.01
    assert "not verified" in caplog.text
