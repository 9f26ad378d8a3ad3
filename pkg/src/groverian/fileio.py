"""State and density-matrix files, and canonical JSON output.

State file: ``{"dims": [d1, ..., dn], "amps": [[re, im], ...]}`` with N
amplitude pairs in big-endian index order.  Density file: ``{"dims": [...],
"rho": [[re, im], ...]}`` with N^2 row-major entry pairs.  Writers emit
every float with 17 significant digits so files round-trip bit exactly.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import GroverianError
from .statevector import DensityMatrix, StateVector, SystemShape, make_state


class FileFormatError(GroverianError):
    """Input file could not be parsed or violates the schema."""


def format_float(x: float) -> str:
    """17 significant digits, enough to reproduce any double exactly."""
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return "null"  # JSON has no non-finite literals
    return format(x, ".16e")


def canonical_json(obj, indent: int = 0) -> str:
    """Deterministic JSON: insertion-ordered keys, floats at 17 digits.

    Identical inputs serialize to identical bytes, which is what makes
    run reports diffable across invocations.
    """
    pad = " " * indent
    inner = " " * (indent + 2)
    if isinstance(obj, bool) or isinstance(obj, np.bool_):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if obj is None:
        return "null"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f"{inner}{json.dumps(str(k))}: {canonical_json(v, indent + 2)}"
            for k, v in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        flat = all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq)
        if flat:
            return "[" + ", ".join(canonical_json(v) for v in seq) + "]"
        items = ",\n".join(f"{inner}{canonical_json(v, indent + 2)}" for v in seq)
        return "[\n" + items + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _load_json(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FileFormatError(
            f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    except OSError as exc:
        raise FileFormatError(f"{path}: {exc.strerror or exc}") from exc
    if not isinstance(doc, dict):
        raise FileFormatError(f"{path}: top level must be a JSON object")
    return doc


def _parse_pairs(raw, count: int, path, key: str) -> np.ndarray:
    if not isinstance(raw, list) or len(raw) != count:
        raise FileFormatError(f"{path}: '{key}' must hold {count} [re, im] pairs")
    out = np.empty(count, dtype=np.complex128)
    for i, pair in enumerate(raw):
        if not isinstance(pair, list) or len(pair) != 2:
            raise FileFormatError(f"{path}: '{key}' entry {i} is not an [re, im] pair")
        out[i] = complex(float(pair[0]), float(pair[1]))
    return out


def _parse_dims(doc, path) -> SystemShape:
    dims = doc.get("dims")
    if not isinstance(dims, list) or not all(isinstance(d, int) for d in dims):
        raise FileFormatError(f"{path}: 'dims' must be an array of integers")
    return SystemShape(dims)


def load_state(path) -> StateVector:
    doc = _load_json(path)
    shape = _parse_dims(doc, path)
    amps = _parse_pairs(doc.get("amps"), shape.total, path, "amps")
    return make_state(shape, amps)


def save_state(state: StateVector, path) -> None:
    pairs = [[format_float(a.real), format_float(a.imag)] for a in state.amps]
    body = ",\n    ".join("[" + ", ".join(p) + "]" for p in pairs)
    text = (
        "{\n"
        f'  "dims": {list(state.shape.dims)},\n'
        '  "amps": [\n    ' + body + "\n  ]\n}\n"
    )
    Path(path).write_text(text, encoding="utf-8")


def load_density(path) -> DensityMatrix:
    doc = _load_json(path)
    shape = _parse_dims(doc, path)
    total = shape.total
    entries = _parse_pairs(doc.get("rho"), total * total, path, "rho")
    return DensityMatrix(shape, entries.reshape(total, total))


def save_density(rho: DensityMatrix, path) -> None:
    flat = rho.entries.reshape(-1)
    pairs = [[format_float(z.real), format_float(z.imag)] for z in flat]
    body = ",\n    ".join("[" + ", ".join(p) + "]" for p in pairs)
    text = (
        "{\n"
        f'  "dims": {list(rho.shape.dims)},\n'
        '  "rho": [\n    ' + body + "\n  ]\n}\n"
    )
    Path(path).write_text(text, encoding="utf-8")
