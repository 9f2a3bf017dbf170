"""UTF-8 JSON wire formats for matrices, operator families, and sets.

Schemas:

- matrix:   {"rows": r, "cols": c, "entries": [row-major floats]}
- family:   {"bands": [{"offset": d, "weights": W}, ...],
             "diagonal": W?, "finite_rank": matrix?}
  where W is a leaf weight sequence, e.g. {"kind": "constant", "c": 1.0}
- set:      a JSON list of matrices or of families (homogeneous)

Only leaf weight sequences serialize; derived symbolic sequences are an
in-process representation and have no wire format.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .errors import InputFormatError
from .families import OperatorFamily
from .matrices import FiniteMatrix
from .sequences import seq_from_json, seq_to_json
from .sets import OperatorSet


def matrix_to_json(m: FiniteMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": [float(v) for v in m.a.ravel()]}


def matrix_from_json(obj: Any) -> FiniteMatrix:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        entries = list(obj["entries"])
    except (KeyError, TypeError) as exc:
        raise InputFormatError(f"matrix object needs rows/cols/entries: {exc}") from exc
    if len(entries) != rows * cols:
        raise InputFormatError(
            f"matrix declares {rows}x{cols} but carries {len(entries)} entries")
    data = [entries[r * cols:(r + 1) * cols] for r in range(rows)]
    try:
        return FiniteMatrix(data)
    except ValueError as exc:
        raise InputFormatError(str(exc)) from exc


def family_to_json(f: OperatorFamily) -> dict:
    out: dict = {"bands": []}
    for d, w in f.bands.items():
        if d == 0:
            out["diagonal"] = seq_to_json(w)
        else:
            out["bands"].append({"offset": d, "weights": seq_to_json(w)})
    if f.corner is not None:
        out["finite_rank"] = matrix_to_json(FiniteMatrix(f.corner))
    return out


def family_from_json(obj: Any) -> OperatorFamily:
    if not isinstance(obj, dict):
        raise InputFormatError("family object must be a JSON object")
    try:
        bands = {}
        for band in obj.get("bands", []):
            d = int(band["offset"])
            bands[d] = seq_from_json(band["weights"])
        diagonal = seq_from_json(obj["diagonal"]) if "diagonal" in obj else None
        rank = matrix_from_json(obj["finite_rank"]) if "finite_rank" in obj else None
        return OperatorFamily(bands, diagonal=diagonal, finite_rank=rank)
    except InputFormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"malformed family object: {exc}") from exc


def _is_matrix_obj(obj: Any) -> bool:
    return isinstance(obj, dict) and "entries" in obj


def element_to_json(e) -> dict:
    return matrix_to_json(e) if isinstance(e, FiniteMatrix) else family_to_json(e)


def element_from_json(obj: Any):
    return matrix_from_json(obj) if _is_matrix_obj(obj) else family_from_json(obj)


def set_to_json(s: OperatorSet) -> list:
    return [element_to_json(e) for e in s]


def set_from_json(obj: Any) -> OperatorSet:
    if not isinstance(obj, list) or not obj:
        raise InputFormatError("operator set must be a nonempty JSON list")
    return OperatorSet([element_from_json(e) for e in obj])


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def digest(obj: Any) -> str:
    return hashlib.sha256(canonical_dumps(obj).encode("utf-8")).hexdigest()[:16]
