"""Dense nonnegative matrix arithmetic in the classical and max-times semirings.

All functions accept anything convertible to a numpy array and validate
nonnegativity, finiteness and shape.  Matrices are plain float64 ndarrays;
nothing here mutates its inputs.
"""

from __future__ import annotations

import csv
import json
import os

import numpy as np

__all__ = [
    "as_matrix",
    "as_vector",
    "max_identity",
    "max_mul",
    "max_vec_mul",
    "max_power",
    "oplus",
    "hadamard",
    "hadamard_power",
    "classical_mul",
    "classical_power",
    "norm_max",
    "transpose",
    "load_matrix",
    "save_matrix",
]


def as_matrix(a) -> np.ndarray:
    """Validate and return a square nonnegative float64 matrix."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] == 0:
        raise ValueError("matrix must have positive dimension")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    if np.any(m < 0):
        raise ValueError("matrix entries must be nonnegative")
    return m


def as_vector(x, n: int | None = None) -> np.ndarray:
    """Validate and return a nonnegative float64 vector, optionally of length n."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"expected a vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    if np.any(v < 0):
        raise ValueError("vector entries must be nonnegative")
    if n is not None and v.shape[0] != n:
        raise ValueError(f"vector length {v.shape[0]} does not match dimension {n}")
    return v


def _same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")


def max_identity(n: int) -> np.ndarray:
    """Identity of the max-times semiring: ones on the diagonal, zeros off."""
    return np.eye(n)


def max_mul(a, b) -> np.ndarray:
    """Max-times matrix product: result[i,j] = max_k a[i,k]*b[k,j]."""
    a = as_matrix(a)
    b = as_matrix(b)
    _same_dim(a, b)
    return np.max(a[:, :, None] * b[None, :, :], axis=1)


def max_vec_mul(a, x) -> np.ndarray:
    """Max-times matrix-vector product: result[i] = max_j a[i,j]*x[j]."""
    a = as_matrix(a)
    x = as_vector(x, a.shape[0])
    return np.max(a * x[None, :], axis=1)


def max_power(a, k: int) -> np.ndarray:
    """k-th max-times power; k = 0 gives the max-algebra identity."""
    a = as_matrix(a)
    if k < 0:
        raise ValueError("power must be nonnegative")
    if k == 0:
        return max_identity(a.shape[0])
    out = a
    for _ in range(k - 1):
        out = np.max(out[:, :, None] * a[None, :, :], axis=1)
    return out


def oplus(a, b) -> np.ndarray:
    """Entrywise maximum of two matrices."""
    a = as_matrix(a)
    b = as_matrix(b)
    _same_dim(a, b)
    return np.maximum(a, b)


def hadamard(a, b) -> np.ndarray:
    """Entrywise product of two matrices."""
    a = as_matrix(a)
    b = as_matrix(b)
    _same_dim(a, b)
    return a * b


def hadamard_power(a, t: float) -> np.ndarray:
    """Entrywise t-th power for t > 0, with 0**t = 0."""
    a = as_matrix(a)
    if not t > 0:
        raise ValueError("exponent t must be positive")
    out = np.zeros_like(a)
    pos = a > 0
    with np.errstate(over="ignore"):
        out[pos] = a[pos] ** t
    if not np.all(np.isfinite(out)):
        raise OverflowError("entrywise power overflowed float64")
    return out


def classical_mul(a, b) -> np.ndarray:
    """Ordinary matrix product."""
    a = as_matrix(a)
    b = as_matrix(b)
    _same_dim(a, b)
    return a @ b


def classical_power(a, k: int) -> np.ndarray:
    """Ordinary k-th matrix power; k = 0 gives the identity."""
    a = as_matrix(a)
    if k < 0:
        raise ValueError("power must be nonnegative")
    return np.linalg.matrix_power(a, k)


def norm_max(a) -> float:
    """Maximum entry of a matrix or vector."""
    m = np.asarray(a, dtype=float)
    return float(np.max(m)) if m.size else 0.0


def transpose(a) -> np.ndarray:
    a = as_matrix(a)
    return a.T.copy()


def load_matrix(path: str) -> np.ndarray:
    """Load a matrix from a CSV or JSON file.

    CSV: n rows of n comma-separated decimal literals.
    JSON: object {"n": int, "rows": [[...], ...]}.
    Negative or non-finite entries are a load-time error.
    """
    ext = os.path.splitext(path)[1].lower()
    if ext == ".json":
        with open(path) as fh:
            obj = json.load(fh)
        rows = obj["rows"]
        m = as_matrix(rows)
        if "n" in obj and int(obj["n"]) != m.shape[0]:
            raise ValueError("declared dimension does not match row data")
        return m
    with open(path, newline="") as fh:
        rows = [[float(cell) for cell in row] for row in csv.reader(fh) if row]
    return as_matrix(rows)


def save_matrix(path: str, a, fmt: str | None = None) -> None:
    """Write a matrix as CSV or JSON (inferred from the extension by default)."""
    a = as_matrix(a)
    ext = fmt or os.path.splitext(path)[1].lstrip(".").lower()
    if ext == "json":
        with open(path, "w") as fh:
            json.dump({"n": a.shape[0], "rows": a.tolist()}, fh)
    elif ext == "csv":
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            for row in a:
                writer.writerow([repr(float(v)) for v in row])
    else:
        raise ValueError(f"unknown matrix format {ext!r}")
