"""Matrix file format: JSON with rows, cols and a 2-D array of scalar strings."""
from __future__ import annotations

import json

from .errors import ParseError, ShapeError
from .exactla import ExactMatrix
from .scalars import SYMBOLIC, Backend, format_scalar


def matrix_to_document(m: ExactMatrix) -> dict:
    return {
        "rows": m.n_rows,
        "cols": m.n_cols,
        "entries": [[format_scalar(x) for x in row] for row in m.rows],
    }


def dumps_document(obj, level: int = 0) -> str:
    """JSON with flat lists (matrix rows) kept on one line."""
    pad = "  " * (level + 1)
    if isinstance(obj, dict) and obj:
        items = [f"{pad}{json.dumps(k)}: {dumps_document(v, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * level + "}"
    if isinstance(obj, list) and any(isinstance(v, (list, dict)) for v in obj):
        items = [pad + dumps_document(v, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * level + "]"
    return json.dumps(obj)


def dumps_matrix(m: ExactMatrix) -> str:
    return dumps_document(matrix_to_document(m))


def _entry_text(x) -> str:
    if isinstance(x, int) and not isinstance(x, bool):
        return str(x)
    if not isinstance(x, str):
        raise ParseError(f"entry {x!r} is not a scalar string (floats are not exact)")
    return x


def matrix_from_document(doc, backend: Backend = SYMBOLIC) -> ExactMatrix:
    if not isinstance(doc, dict) or not {"rows", "cols", "entries"} <= set(doc):
        raise ParseError("matrix document needs the fields rows, cols and entries")
    n_rows, n_cols, entries = doc["rows"], doc["cols"], doc["entries"]
    if not isinstance(n_rows, int) or not isinstance(n_cols, int) or n_rows < 0 or n_cols < 0:
        raise ParseError("rows and cols must be nonnegative integers")
    if not isinstance(entries, list) or len(entries) != n_rows:
        raise ShapeError(f"expected {n_rows} rows of entries")
    rows = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != n_cols:
            raise ShapeError(f"row {i} should have {n_cols} entries")
        rows.append([backend.parse(_entry_text(x)) for x in row])
    return ExactMatrix(rows, n_cols)


def loads_matrix(text: str, backend: Backend = SYMBOLIC) -> ExactMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not a JSON document: {exc}") from exc
    return matrix_from_document(doc, backend)


def loads_triple(text: str) -> tuple[ExactMatrix, ExactMatrix, ExactMatrix]:
    """Three matrices under the keys X, Y, Z.

    Entries are read symbolically; if none of them involves q the matrices are
    returned over the rationals instead.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not a JSON document: {exc}") from exc
    if not isinstance(doc, dict) or not {"X", "Y", "Z"} <= set(doc):
        raise ParseError("triple document needs the fields X, Y and Z")
    mats = [matrix_from_document(doc[k]) for k in ("X", "Y", "Z")]
    consts = [[[x.constant_value() for x in row] for row in m.rows] for m in mats]
    if all(c is not None for m in consts for row in m for c in row):
        return tuple(ExactMatrix(c, m.n_cols) for c, m in zip(consts, mats))
    return tuple(mats)


def dumps_triple(x: ExactMatrix, y: ExactMatrix, z: ExactMatrix) -> str:
    return dumps_document(triple_to_document(x, y, z))


def triple_to_document(x: ExactMatrix, y: ExactMatrix, z: ExactMatrix) -> dict:
    return {k: matrix_to_document(m) for k, m in zip("XYZ", (x, y, z))}


def format_table(m: ExactMatrix) -> str:
    """Aligned human-readable layout (not meant to be parsed back)."""
    cells = [[format_scalar(x) for x in row] for row in m.rows]
    if not cells or not m.n_cols:
        return f"[{m.n_rows}x{m.n_cols} empty]"
    widths = [max(len(cells[i][j]) for i in range(m.n_rows)) for j in range(m.n_cols)]
    return "\n".join("[ " + "  ".join(c.rjust(w) for c, w in zip(row, widths)) + " ]" for row in cells)

