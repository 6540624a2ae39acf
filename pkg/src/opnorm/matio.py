"""Matrix file I/O: a JSON schema and a CSV dialect with complex tokens.

JSON files carry {"rows": n, "cols": m, "entries": [[re, im], ...]} with the
entries flattened row-major; floats survive a write/read round trip exactly
because both sides use repr.  CSV rows hold one token per entry: a plain
real like ``-1.5``, or ``a+bi`` / ``a-bi`` with a lowercase ``i``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import as_matrix

__all__ = [
    "MatrixFile",
    "MatrixParseError",
    "format_complex_token",
    "parse_complex_token",
    "read_matrix",
    "write_matrix",
]


class MatrixParseError(ValueError):
    """A matrix file failed to parse or validate."""


@dataclass(frozen=True)
class MatrixFile:
    format: str  # "json" or "csv"
    matrix: np.ndarray


def parse_complex_token(tok: str) -> complex:
    s = tok.strip().replace(" ", "")
    if not s:
        raise MatrixParseError("empty matrix entry")
    try:
        if s.endswith("i") or s.endswith("I"):
            return complex(s[:-1] + "j")
        return complex(float(s))
    except ValueError as exc:
        raise MatrixParseError(f"bad matrix entry {tok!r}") from exc


def format_complex_token(z: complex) -> str:
    re, im = float(z.real), float(z.imag)
    if im == 0.0:
        return repr(re)
    sign = "+" if im >= 0.0 else "-"
    return f"{re!r}{sign}{abs(im)!r}i"


def _validated(M: np.ndarray, fmt: str) -> MatrixFile:
    try:
        return MatrixFile(fmt, as_matrix(M))
    except ValueError as exc:
        raise MatrixParseError(str(exc)) from exc


def _read_json(text: str) -> MatrixFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MatrixParseError("JSON matrix must be an object")
    try:
        rows, cols = int(doc["rows"]), int(doc["cols"])
        entries = doc["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixParseError("JSON matrix needs integer rows/cols and entries") from exc
    if rows < 1 or cols < 1:
        raise MatrixParseError("rows and cols must be positive")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise MatrixParseError(
            f"expected {rows * cols} entries, got {len(entries) if isinstance(entries, list) else 'non-list'}")
    flat = np.empty(rows * cols, dtype=np.complex128)
    for k, e in enumerate(entries):
        if (not isinstance(e, list) or len(e) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in e)):
            raise MatrixParseError(f"entry {k} must be a [re, im] number pair")
        flat[k] = complex(e[0], e[1])
    return _validated(flat.reshape(rows, cols), "json")


def _read_csv(text: str) -> MatrixFile:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            rows.append([parse_complex_token(t) for t in line.split(",")])
        except MatrixParseError as exc:
            raise MatrixParseError(f"line {lineno}: {exc}") from exc
    if not rows:
        raise MatrixParseError("no matrix rows found")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise MatrixParseError("rows have inconsistent lengths")
    return _validated(np.array(rows, dtype=np.complex128), "csv")


def read_matrix(path) -> MatrixFile:
    """Read a matrix file; format from the suffix, else sniffed from content."""
    p = Path(path)
    text = p.read_text()
    suffix = p.suffix.lower()
    if suffix == ".json":
        return _read_json(text)
    if suffix == ".csv":
        return _read_csv(text)
    if text.lstrip().startswith("{"):
        return _read_json(text)
    return _read_csv(text)


def write_matrix(path, A, fmt: str | None = None) -> None:
    """Write a matrix as JSON or CSV (format from the suffix when omitted)."""
    M = as_matrix(A)
    p = Path(path)
    if fmt is None:
        fmt = "json" if p.suffix.lower() == ".json" else "csv"
    if fmt == "json":
        n, m = M.shape
        entries = [[float(z.real), float(z.imag)] for z in M.ravel()]
        p.write_text(json.dumps({"rows": n, "cols": m, "entries": entries}) + "\n")
    elif fmt == "csv":
        lines = [",".join(format_complex_token(z) for z in row) for row in M]
        p.write_text("\n".join(lines) + "\n")
    else:
        raise ValueError(f"unknown matrix format {fmt!r}")
