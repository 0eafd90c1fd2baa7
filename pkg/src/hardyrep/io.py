"""File formats: complex literals, dense matrices, diagonals, reports."""

from __future__ import annotations

import csv
import io as _io
import json
import re
from pathlib import Path
from typing import Any, Mapping, Union

import numpy as np

from .errors import ValidationError
from .gamma import GammaSet, gamma_from_dict
from .kernel import DenseCoeffs, DiagonalCoeffs, diagonal_from_map, gamma_diagonal
from .measure import MeasureSpec, measure_from_dict

__all__ = [
    "parse_complex",
    "format_complex",
    "parse_complex_list",
    "read_dense_csv",
    "write_dense_csv",
    "dense_from_json",
    "dense_to_json",
    "diagonal_from_json",
    "load_json",
    "load_measure",
    "load_gamma",
    "to_jsonable",
    "dumps_report",
    "report_csv",
    "report_table",
]

_COMPLEX_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)?([eE][+-]?\d+)?([+-](\d+\.?\d*|\.\d+)?([eE][+-]?\d+)?)?[ij]?$")


def parse_complex(text: str) -> complex:
    """Parse ``"a+bi"`` style literals (``i`` or ``j``; either part optional).

    >>> parse_complex("0.5-2e-1i")
    (0.5-0.2j)
    """
    s = str(text).strip().replace(" ", "")
    if not s or not _COMPLEX_RE.match(s):
        raise ValidationError(f"not a complex literal: {text!r}")
    try:
        return complex(s.replace("i", "j"))
    except ValueError as exc:
        raise ValidationError(f"not a complex literal: {text!r}") from exc


def format_complex(z: complex) -> str:
    z = complex(z)
    return f"{z.real:.17g}{z.imag:+.17g}i"


def parse_complex_list(text: str) -> list[complex]:
    return [parse_complex(p) for p in str(text).split(",") if p.strip()]


def read_dense_csv(path: Union[str, Path], tail_sup: float = 0.0) -> DenseCoeffs:
    with open(path, newline="") as fh:
        rows = [[parse_complex(c) for c in row] for row in csv.reader(fh) if row]
    return DenseCoeffs(np.array(rows, dtype=complex), tail_sup)


def write_dense_csv(C: DenseCoeffs, path: Union[str, Path]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in C.entries:
            writer.writerow([format_complex(v) for v in row])


def dense_from_json(data: Any) -> DenseCoeffs:
    """``[[...], ...]`` or ``{"entries": [[...]], "tailSup": s}``; entries are
    numbers, ``[re, im]`` pairs or complex literals."""
    tail = 0.0
    if isinstance(data, Mapping):
        tail = float(data.get("tailSup", 0.0))
        data = data["entries"]

    def cell(v):
        if isinstance(v, str):
            return parse_complex(v)
        if isinstance(v, (list, tuple)):
            return complex(v[0], v[1])
        return complex(v)

    return DenseCoeffs(np.array([[cell(v) for v in row] for row in data], dtype=complex), tail)


def dense_to_json(C: DenseCoeffs) -> dict:
    return {
        "entries": [[format_complex(v) for v in row] for row in C.entries],
        "tailSup": C.tail_sup,
    }


def diagonal_from_json(data: Any) -> DiagonalCoeffs:
    """A ``{"n": c_nn}`` map, or a gamma description (0/1 indicator)."""
    if isinstance(data, Mapping) and ("elements" in data or "base" in data):
        return gamma_diagonal(gamma_from_dict(data))
    if not isinstance(data, Mapping):
        raise ValidationError("diagonal JSON must be an object")
    try:
        return diagonal_from_map({int(k): float(v) for k, v in data.items()})
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"malformed diagonal map: {exc}") from exc


def load_json(source: Union[str, Path]) -> Any:
    """Parse inline JSON (starting with ``{`` or ``[``) or read a JSON file."""
    text = str(source).strip()
    try:
        if text.startswith(("{", "[")):
            return json.loads(text)
        with open(text) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {source}: {exc}") from exc


def load_measure(source: str) -> MeasureSpec:
    from .measure import MU3, MU4, Lebesgue

    named = {"lebesgue": Lebesgue(), "mu4": MU4, "mu3": MU3}
    if source.lower() in named:
        return named[source.lower()]
    return measure_from_dict(load_json(source))


def load_gamma(source: str) -> GammaSet:
    return gamma_from_dict(load_json(source))


def to_jsonable(obj: Any) -> Any:
    """Convert numpy scalars/arrays and complex numbers for ``json``."""
    if isinstance(obj, Mapping):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def dumps_report(report: Mapping) -> str:
    return json.dumps(to_jsonable(report), indent=2, sort_keys=True)


def _flat(report: Mapping, prefix: str = ""):
    for k in sorted(report):
        v = report[k]
        key = f"{prefix}{k}"
        if isinstance(v, Mapping):
            yield from _flat(v, key + ".")
        else:
            yield key, v


def report_csv(report: Mapping) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "value"])
    for k, v in _flat(to_jsonable(report)):
        writer.writerow([k, json.dumps(v) if isinstance(v, (list, dict)) else v])
    return buf.getvalue()


def report_table(report: Mapping) -> str:
    rows = [(k, json.dumps(v) if isinstance(v, (list, dict)) else str(v)) for k, v in _flat(to_jsonable(report))]
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows) + "\n"
