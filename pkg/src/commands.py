"""The operations behind each command line subcommand.

Every cmd_* function returns an ExitCode and writes its human-readable
output to stream; domain failures are raised and mapped to exit codes by
main.
"""

import json
import logging
import sys

from arrays import find_array
from const import *
from errors import InvalidArgument, NoConvergence
from fileio import (
    format_plot_data,
    read_decomposition,
    read_sample,
    write_decomposition,
    write_plot_data,
    write_sample,
)
from generators import GeneratorSpec, attach_function
from pipeline import (
    approximate_decompose,
    delta_from_lipschitz,
    estimate_delta,
    refine,
    residual_report,
)
from suite import run_suite
from utils import format_number

logger = logging.getLogger(APPLICATION)


def _print(stream, *lines):
    stream = stream if stream is not None else sys.stdout
    for line in lines:
        print(line, file=stream)


def cmd_check_arrays(input, max_len=2, tol=0.0, stream=None):
    sample = read_sample(input)
    certificate = find_array(sample.points, max_len, tol)
    if certificate is None:
        _print(stream, "none")
        logger.success(f"{input} contains no array of length {max_len}")
        return ExitCode.SUCCESS
    _print(stream, json.dumps(certificate.to_dict()))
    logger.warning(f"{input} contains an array of length {max_len}")
    return ExitCode.NEGATIVE


def resolve_delta(sample, epsilon, delta=None, lipschitz=None, auto_delta=False):
    """The single delta source chosen on the command line"""
    chosen = [delta is not None, lipschitz is not None, bool(auto_delta)]
    if sum(chosen) != 1:
        raise InvalidArgument("Give exactly one of --delta, --lipschitz and --auto-delta")
    if delta is not None:
        return float(delta)
    if lipschitz is not None:
        return delta_from_lipschitz(lipschitz, epsilon)
    return estimate_delta(sample, epsilon)


def cmd_decompose(
    input,
    epsilon,
    out,
    delta=None,
    lipschitz=None,
    auto_delta=False,
    level=None,
    n_max=DEFAULT_N_MAX,
    bins=DEFAULT_HISTOGRAM_BINS,
    declared_spacing=None,
    stream=None,
):
    sample = read_sample(input, declared_spacing)
    delta = resolve_delta(sample, epsilon, delta, lipschitz, auto_delta)
    decomposition = approximate_decompose(sample, epsilon, delta, level, n_max)
    report = residual_report(sample, decomposition, bins)
    write_decomposition(out, decomposition, report)
    _print(stream, *report.lines())
    logger.success(f"Wrote decomposition to {out}")
    return ExitCode.SUCCESS


def cmd_refine(
    input,
    out,
    tol=0.001,
    max_iter=DEFAULT_REFINE_MAX_ITER,
    n_max=DEFAULT_N_MAX,
    epsilon_divisor=DEFAULT_EPSILON_DIVISOR,
    bins=DEFAULT_HISTOGRAM_BINS,
    declared_spacing=None,
    stream=None,
):
    sample = read_sample(input, declared_spacing)
    try:
        decomposition = refine(sample, tol, max_iter, n_max, epsilon_divisor)
    except NoConvergence as e:
        if e.decomposition is not None:
            write_decomposition(out, e.decomposition, residual_report(sample, e.decomposition))
            logger.warning(f"Wrote the partial decomposition to {out}")
        raise
    report = residual_report(sample, decomposition, bins)
    write_decomposition(out, decomposition, report)
    _print(
        stream,
        *(
            f"iteration {step.iteration}: |f| = {step.norm!r} -> {step.residual!r} "
            f"(epsilon {step.epsilon!r}, delta {step.delta!r}, n {step.n}, F {step.F})"
            for step in decomposition.meta.history
        ),
        *report.lines(),
    )
    logger.success(
        f"Refined in {decomposition.meta.iterations} iterations, wrote {out}"
    )
    return ExitCode.SUCCESS


def cmd_eval(decomp_file, x, y, stream=None):
    decomposition = read_decomposition(decomp_file)
    g, h = decomposition.g(float(x)), decomposition.h(float(y))
    _print(stream, "\t".join(map(format_number, (g, h, g + h))))
    return ExitCode.SUCCESS


def cmd_plotdata(decomp_file, input, out=None, stream=None):
    decomposition = read_decomposition(decomp_file)
    sample = read_sample(input)
    if out is None:
        (stream if stream is not None else sys.stdout).write(
            format_plot_data(decomposition, sample)
        )
    else:
        write_plot_data(out, decomposition, sample)
        logger.success(f"Wrote plot data to {out}")
    return ExitCode.SUCCESS


def cmd_generate(kind, out, count=200, seed=0, function="zero", params=()):
    sample = GeneratorSpec(kind, count, seed).generate()
    sample = attach_function(sample, function, params)
    write_sample(out, sample)
    logger.success(f"Wrote {len(sample)} points to {out}")
    return ExitCode.SUCCESS


def cmd_suite(count=50, seed=0, epsilon_ratio=0.05, threads=4, stream=None):
    result = run_suite(count, seed, epsilon_ratio, threads)
    for name in sorted(result.reports):
        report = result.reports[name]
        _print(stream, f"{name}: {'ok' if report.holds else f'{report.violations} violations'}")
    for name in sorted(result.errors):
        _print(stream, f"{name}: error")
    if result.passed:
        logger.success(f"{result.instances}/{result.instances} instances hold every bound")
        return ExitCode.SUCCESS
    logger.error(
        f"{len(result.failures)}/{result.instances} instances failed, "
        f"{result.violations} violations"
    )
    return ExitCode.NEGATIVE
