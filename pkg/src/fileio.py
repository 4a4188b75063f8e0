"""Sample files, decomposition files and plot data.

Numbers are written in their shortest round-trip form so that reading a
file back gives bit-identical floats.
"""

import csv
import io
import json
import logging

import numpy as np

from const import *
from errors import DecompositionFileError, SampleError
from extend import PWLinear
from pipeline import Decomposition, DecompositionMeta, RefineStep
from quantize import SampledCompactum, duplicate_rows
from utils import ensure_parent_dir, format_number

logger = logging.getLogger(APPLICATION)


def _is_header(row):
    return [cell.strip().lower() for cell in row] == list(SAMPLE_HEADER)


def parse_sample(text, declared_spacing=None) -> SampledCompactum:
    """Parses x,y,f rows; row numbers in errors count from 1 and include the header"""
    rows, bad = [], []
    line_numbers = []
    for number, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        if number == 1 and _is_header(row):
            continue
        if len(row) != 3:
            bad.append(number)
            continue
        try:
            rows.append([float(cell) for cell in row])
        except ValueError:
            bad.append(number)
            continue
        line_numbers.append(number)
    if bad:
        raise SampleError(
            f"Rows {', '.join(map(str, bad))} are not x,y,f triples of numbers", rows=bad
        )
    if not rows:
        raise SampleError("Sample file contains no points")
    data = np.asarray(rows, dtype=float)
    non_finite = np.flatnonzero(~np.isfinite(data).all(axis=1))
    if len(non_finite):
        numbers = [line_numbers[k] for k in non_finite]
        raise SampleError(
            f"Rows {', '.join(map(str, numbers))} contain non-finite numbers", rows=numbers
        )
    duplicates = duplicate_rows(data[:, :2])
    if duplicates:
        numbers = [line_numbers[k] for k in duplicates]
        logger.warning(f"Rejected duplicate points on rows {numbers}")
        raise SampleError(
            f"Rows {', '.join(map(str, numbers))} repeat an earlier point", rows=numbers
        )
    return SampledCompactum(data[:, :2], data[:, 2], declared_spacing)


def read_sample(path, declared_spacing=None) -> SampledCompactum:
    try:
        with open(path, encoding="utf-8", newline="") as f:
            text = f.read()
    except OSError as e:
        raise SampleError(f"Cannot read sample file {path}: {e.strerror}")
    return parse_sample(text, declared_spacing)


def format_sample(sample: SampledCompactum):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(SAMPLE_HEADER)
    for (x, y), value in zip(sample.coords, sample.values):
        writer.writerow([format_number(x), format_number(y), format_number(value)])
    return out.getvalue()


def write_sample(path, sample: SampledCompactum):
    with open(ensure_parent_dir(path), "w", encoding="utf-8", newline="") as f:
        f.write(format_sample(sample))
    return path


def decomposition_to_dict(d: Decomposition, report=None):
    data = {"meta": d.meta.to_dict(), "g": d.g.to_dict(), "h": d.h.to_dict()}
    if report is not None:
        data["report"] = report.to_dict()
    return data


def format_decomposition(d: Decomposition, report=None):
    # json writes floats with repr, which round-trips exactly
    return json.dumps(decomposition_to_dict(d, report), indent=2, allow_nan=False) + "\n"


def decomposition_from_dict(data) -> Decomposition:
    try:
        meta = data["meta"]
        decomposition_meta = DecompositionMeta(
            _optional(meta["n"], int),
            _optional(meta["epsilon"], float),
            _optional(meta["delta"], float),
            _optional(meta["F"], int),
            int(meta["iterations"]),
            float(meta["sup_residual"]),
            tuple(RefineStep.from_dict(step) for step in meta.get("history", ())),
        )
        return Decomposition(
            PWLinear.from_dict(data["g"]), PWLinear.from_dict(data["h"]), decomposition_meta
        )
    except (KeyError, TypeError, ValueError) as e:
        raise DecompositionFileError(f"Malformed decomposition: {e!r}")


def _optional(value, kind):
    return None if value is None else kind(value)


def read_decomposition(path) -> Decomposition:
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise DecompositionFileError(f"Cannot read decomposition file {path}: {e.strerror}")
    except json.JSONDecodeError as e:
        raise DecompositionFileError(f"{path} is not valid JSON: {e.msg} (line {e.lineno})")
    if not isinstance(data, dict):
        raise DecompositionFileError(f"{path} does not contain a decomposition object")
    return decomposition_from_dict(data)


def write_decomposition(path, d: Decomposition, report=None):
    with open(ensure_parent_dir(path), "w", encoding="utf-8", newline="\n") as f:
        f.write(format_decomposition(d, report))
    return path


def format_plot_data(d: Decomposition, sample: SampledCompactum):
    """Tab-separated blocks: g on its breakpoints, h on its breakpoints, residual per point"""
    lines = ["# g", "x\tg"]
    lines += [
        f"{format_number(x)}\t{format_number(v)}" for x, v in zip(d.g.breakpoints, d.g.values)
    ]
    lines += ["", "# h", "y\th"]
    lines += [
        f"{format_number(y)}\t{format_number(v)}" for y, v in zip(d.h.breakpoints, d.h.values)
    ]
    lines += ["", "# residual", "x\ty\tf\tresidual"]
    residuals = d.residuals(sample)
    lines += [
        "\t".join(map(format_number, (x, y, value, residual)))
        for (x, y), value, residual in zip(sample.coords, sample.values, residuals)
    ]
    return "\n".join(lines) + "\n"


def write_plot_data(path, d: Decomposition, sample: SampledCompactum):
    with open(ensure_parent_dir(path), "w", encoding="utf-8", newline="\n") as f:
        f.write(format_plot_data(d, sample))
    return path
