"""Flat-file formats: coefficient JSON/CSV, sample CSV, report rendering.

Every float is written with 17 significant digits, which round-trips binary64
exactly; JSON and CSV renderings of the same number are the same string.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .coefficients import CoefficientSet
from .errors import SampleError
from .grid import UniformGrid
from .quadrature import SampledFunction

UNIFORM_RTOL = 1e-12
GENERATORS = ("closed-form", "oracle")


def format_float(x) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialise non-finite value {x!r}")
    text = format(x, ".17g")
    if not any(ch in text for ch in ".e"):
        text += ".0"  # keep -0.0 and integral values as floats on reload
    return text


def dumps(obj, indent: int = 2) -> str:
    """JSON text for dicts/lists/str/int/float/bool/None, floats at 17 digits."""
    return "".join(_encode(obj, indent, 0))


def _encode(obj, indent, depth):
    pad = "\n" + " " * (indent * (depth + 1))
    end = "\n" + " " * (indent * depth)
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        yield json.dumps(obj)
    elif isinstance(obj, (int, np.integer)):
        yield str(int(obj))
    elif isinstance(obj, (float, np.floating)):
        yield format_float(obj)
    elif isinstance(obj, dict):
        if not obj:
            yield "{}"
            return
        yield "{"
        for i, (key, value) in enumerate(obj.items()):
            yield ("," if i else "") + pad + json.dumps(str(key)) + ": "
            yield from _encode(value, indent, depth + 1)
        yield end + "}"
    elif isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            yield "[]"
            return
        yield "["
        for i, value in enumerate(obj):
            yield ("," if i else "") + pad
            yield from _encode(value, indent, depth + 1)
        yield end + "]"
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")


def coefficients_to_dict(coeffs: CoefficientSet) -> dict:
    return {
        "omega": coeffs.omega,
        "a": coeffs.grid.a,
        "b": coeffs.grid.b,
        "n_intervals": coeffs.grid.n_intervals,
        "coefficients": [{"re": c.real, "im": c.imag} for c in coeffs.values],
        "generator": coeffs.generator,
    }


def coefficients_from_dict(data: dict) -> CoefficientSet:
    try:
        grid = UniformGrid(float(data["a"]), float(data["b"]), int(data["n_intervals"]))
        values = [complex(float(c["re"]), float(c["im"])) for c in data["coefficients"]]
        generator = data.get("generator", "closed-form")
        omega = float(data["omega"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed coefficient document: {exc}") from exc
    if generator not in GENERATORS:
        raise ValueError(f"unknown generator {generator!r}")
    return CoefficientSet(np.array(values), omega, grid, generator)


def coefficients_to_json(coeffs: CoefficientSet) -> str:
    return dumps(coefficients_to_dict(coeffs))


def coefficients_from_json(text: str) -> CoefficientSet:
    return coefficients_from_dict(json.loads(text))


def coefficients_to_csv(coeffs: CoefficientSet) -> str:
    x = coeffs.grid.nodes()
    rows = [
        {"beta": beta, "x": x[beta], "re": c.real, "im": c.imag}
        for beta, c in enumerate(coeffs.values)
    ]
    return table_to_csv(rows, ["beta", "x", "re", "im"])


def table_to_csv(rows, columns) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(col)) for col in columns])
    return buf.getvalue()


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    return str(value)


def samples_to_csv(x, values) -> str:
    rows = [{"x": xi, "re": complex(v).real, "im": complex(v).imag} for xi, v in zip(x, values)]
    return table_to_csv(rows, ["x", "re", "im"])


def parse_samples_csv(text: str) -> SampledFunction:
    """Parse ``x,re,im`` rows on a uniform grid into a :class:`SampledFunction`.

    Raises
    ------
    SampleError
        Wrong header, fewer than two rows, unparsable or non-finite numbers,
        or abscissae that are not strictly increasing and uniform to ``1e-12``
        relative to the interval length.
    """
    reader = csv.reader(io.StringIO(text))
    header = [h.strip() for h in next(reader, [])]
    if header != ["x", "re", "im"]:
        raise SampleError(f"expected header 'x,re,im', got {','.join(header)!r}")
    try:
        rows = [[float(cell) for cell in row] for row in reader if row]
    except ValueError as exc:
        raise SampleError(f"unparsable sample value: {exc}") from exc
    if any(len(row) != 3 for row in rows):
        raise SampleError("every sample row needs exactly three fields")
    if len(rows) < 2:
        raise SampleError("need at least two samples")
    data = np.array(rows)
    if not np.all(np.isfinite(data)):
        raise SampleError("samples must be finite")
    x = data[:, 0]
    if np.any(np.diff(x) <= 0):
        raise SampleError("abscissae must be strictly increasing")
    grid = UniformGrid(x[0], x[-1], len(x) - 1)
    deviation = np.max(np.abs(x - grid.nodes()))
    if deviation > UNIFORM_RTOL * grid.length:
        raise SampleError(f"abscissae are not uniform (max deviation {deviation:.3e})")
    return SampledFunction(data[:, 1] + 1j * data[:, 2], grid)


def load_samples(path) -> SampledFunction:
    return parse_samples_csv(Path(path).read_text())
