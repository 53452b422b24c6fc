"""JSON file formats.

Complex numbers are always ``[re, im]`` pairs.

Vector file::

    {"dim": n,
     "vectors": [[[re, im], ... n entries], ... m vectors],
     "weights": [w_1, ..., w_m]}          # optional, non-negative

Gram file::

    {"size": m, "entries": [[[re, im], ... m], ... m]}   # Hermitian within 1e-9

Samples file::

    {"samples": [[re, im], ... m]}

Unknown keys are ignored, so reports that embed a vector file can be read
back as one.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Optional

import numpy as np

from . import linalg
from .errors import InputError
from .frames import FrameSet

GRAM_HERMITIAN_TOL = 1e-9


def _load(source) -> dict:
    if isinstance(source, dict):
        return source
    try:
        doc = json.loads(Path(source).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{source} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("top-level JSON value must be an object")
    return doc


def _complex_array(value, shape: tuple[int, ...], what: str) -> np.ndarray:
    try:
        arr = np.array(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{what}: entries must be [re, im] number pairs") from exc
    if arr.shape != shape + (2,):
        raise InputError(f"{what}: expected shape {list(shape)} of [re, im] pairs, got {list(arr.shape)}")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{what}: non-finite value")
    return arr[..., 0] + 1j * arr[..., 1]


def _positive_int(doc: dict, key: str) -> int:
    value = doc.get(key)
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise InputError(f"'{key}' must be a positive integer")
    return value


def encode_complex(a) -> list:
    """Nested ``[re, im]`` lists for a complex array."""
    a = np.asarray(a, dtype=complex)
    return np.stack([a.real, a.imag], axis=-1).tolist()


def read_vector_file(source) -> tuple[FrameSet, Optional[np.ndarray]]:
    doc = _load(source)
    dim = _positive_int(doc, "dim")
    vectors = doc.get("vectors")
    if not isinstance(vectors, list) or not vectors:
        raise InputError("'vectors' must be a non-empty list")
    X = _complex_array(vectors, (len(vectors), dim), "vectors")
    weights = doc.get("weights")
    if weights is not None:
        try:
            weights = np.array(weights, dtype=float)
        except (TypeError, ValueError) as exc:
            raise InputError("'weights' must be a list of numbers") from exc
        if weights.shape != (len(vectors),):
            raise InputError(f"'weights' must have length {len(vectors)}")
        if not np.all(np.isfinite(weights)) or np.any(weights < 0):
            raise InputError("'weights' must be finite and non-negative")
    return FrameSet(X), weights


def vector_file_dict(X: FrameSet, weights=None) -> dict:
    doc = {"dim": X.d, "vectors": encode_complex(X.vectors)}
    if weights is not None:
        doc["weights"] = [float(w) for w in weights]
    return doc


def read_gram_file(source) -> np.ndarray:
    doc = _load(source)
    size = _positive_int(doc, "size")
    G = _complex_array(doc.get("entries"), (size, size), "entries")
    try:
        return linalg.as_hermitian(G, tol=GRAM_HERMITIAN_TOL)
    except InputError as exc:
        raise InputError(f"Gram matrix: {exc}") from exc


def gram_file_dict(G) -> dict:
    G = np.asarray(G)
    return {"size": G.shape[0], "entries": encode_complex(G)}


def read_samples_file(source) -> np.ndarray:
    doc = _load(source)
    samples = doc.get("samples")
    if not isinstance(samples, list):
        raise InputError("'samples' must be a list of [re, im] pairs")
    return _complex_array(samples, (len(samples),), "samples")


def samples_file_dict(s) -> dict:
    return {"samples": encode_complex(np.asarray(s).reshape(-1))}


def jsonable(obj):
    """Recursively convert numpy scalars/arrays; non-finite floats become None."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return value if math.isfinite(value) else None
    if isinstance(obj, (complex, np.complexfloating)):
        return [jsonable(obj.real), jsonable(obj.imag)]
    return obj


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), allow_nan=False, indent=2)
