"""JSON matrix file format.

A file holds either one matrix, ``{"dim": d, "data": [[re, im], ...]}`` with
d*d row-major entries, or a tuple, ``{"matrices": [obj, ...]}``.  Parsers
point at the index of the first discrepancy instead of failing vaguely.
"""

from __future__ import annotations

import json
import math

import numpy as np

__all__ = ["MatrixFileError", "parse_matrix", "parse_matrices", "load_matrices", "matrix_to_obj"]


class MatrixFileError(ValueError):
    """Malformed matrix document."""


def parse_matrix(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise MatrixFileError(f"matrix object must be a JSON object, got {type(obj).__name__}")
    if "dim" not in obj or "data" not in obj:
        raise MatrixFileError('matrix object needs "dim" and "data" keys')
    dim = obj["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim <= 0:
        raise MatrixFileError(f'"dim" must be a positive integer, got {dim!r}')
    data = obj["data"]
    if not isinstance(data, list):
        raise MatrixFileError('"data" must be a list of [re, im] pairs')
    expected = dim * dim
    if len(data) != expected:
        raise MatrixFileError(
            f'"data" has {len(data)} entries but dim={dim} needs {expected}; '
            f"first discrepancy at index {min(len(data), expected)}"
        )
    out = np.empty((dim, dim), dtype=np.complex128)
    flat = out.reshape(-1)
    for i, pair in enumerate(data):
        if (
            not isinstance(pair, (list, tuple))
            or len(pair) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
        ):
            raise MatrixFileError(f"entry at index {i} is not a [re, im] number pair: {pair!r}")
        re, im = float(pair[0]), float(pair[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise MatrixFileError(f"entry at index {i} is not finite: {pair!r}")
        flat[i] = complex(re, im)
    return out


def parse_matrices(doc) -> list[np.ndarray]:
    """One or several matrices from a parsed JSON document."""
    if isinstance(doc, dict) and "matrices" in doc:
        seq = doc["matrices"]
        if not isinstance(seq, list) or not seq:
            raise MatrixFileError('"matrices" must be a nonempty list of matrix objects')
        mats = [parse_matrix(m) for m in seq]
        dims = {m.shape[0] for m in mats}
        if len(dims) > 1:
            raise MatrixFileError(f"matrices in a tuple must share a dimension, got {sorted(dims)}")
        return mats
    return [parse_matrix(doc)]


def load_matrices(path) -> list[np.ndarray]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise MatrixFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"invalid JSON in {path}: {exc}") from exc
    return parse_matrices(doc)


def matrix_to_obj(T: np.ndarray) -> dict:
    T = np.asarray(T, dtype=np.complex128)
    flat = T.reshape(-1)
    return {"dim": int(T.shape[0]), "data": [[float(z.real), float(z.imag)] for z in flat]}
