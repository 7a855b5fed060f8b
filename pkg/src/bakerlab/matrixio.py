"""Reading and writing matrices in the cmatrix-json interchange format.

A cmatrix-json file holds a single JSON object::

    {"dim_rows": R, "dim_cols": C, "entries": [[re, im], ...]}

where ``entries`` lists the R*C complex entries in row-major order as
``[real, imaginary]`` pairs of IEEE-754 doubles.  Serialization uses Python's
shortest round-trip float repr, so save -> load reproduces every entry bit
for bit.
"""

from __future__ import annotations

import json

import numpy as np

from .linalg import as_matrix

__all__ = ["cmatrix_from_dict", "cmatrix_to_dict", "load_cmatrix", "save_cmatrix"]


def cmatrix_to_dict(m) -> dict:
    """JSON-ready dict for a matrix."""
    m = as_matrix(m)
    flat = m.ravel()
    entries = np.column_stack([flat.real, flat.imag]).tolist()
    return {"dim_rows": int(m.shape[0]), "dim_cols": int(m.shape[1]), "entries": entries}


def cmatrix_from_dict(obj) -> np.ndarray:
    """Rebuild a complex matrix from its dict form, validating the layout."""
    if not isinstance(obj, dict):
        raise ValueError("cmatrix payload must be a JSON object")
    missing = {"dim_rows", "dim_cols", "entries"} - obj.keys()
    if missing:
        raise ValueError(f"cmatrix payload is missing fields: {sorted(missing)}")
    rows, cols = obj["dim_rows"], obj["dim_cols"]
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 1 or cols < 1:
        raise ValueError(f"matrix dimensions must be positive integers, got {rows!r} x {cols!r}")
    entries = obj["entries"]
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {len(entries) if isinstance(entries, list) else type(entries).__name__}")
    try:
        arr = np.asarray(entries, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ValueError("matrix entries must be [real, imag] number pairs") from exc
    if arr.shape != (rows * cols, 2):
        raise ValueError("matrix entries must be [real, imag] number pairs")
    if not np.isfinite(arr).all():
        raise ValueError("matrix entries must be finite")
    return (arr[:, 0] + 1j * arr[:, 1]).reshape(rows, cols)


def save_cmatrix(path, m):
    """Write a matrix to ``path`` in cmatrix-json form."""
    with open(path, "w") as f:
        json.dump(cmatrix_to_dict(m), f)
        f.write("\n")


def load_cmatrix(path) -> np.ndarray:
    """Load a cmatrix-json file; raises ``ValueError`` on malformed content."""
    with open(path) as f:
        try:
            obj = json.load(f)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path} is not valid JSON: {exc}") from exc
    return cmatrix_from_dict(obj)
