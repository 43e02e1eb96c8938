"""Dense square matrices, Schur/Kronecker algebra and the explicit constructions.

Indices are 0-based throughout the API.  In formulas written with 1-based
indices (e.g. the entries ``1/(i-j)`` of ``A_n``) the shift cancels, since only
differences of indices appear.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

K_G_LOW = 1.676
K_G_HIGH = 1.782
PI = math.pi

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Matrix:
    """Immutable dense real ``n x n`` matrix."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=float, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"matrix must be square, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise ValueError("matrix must have at least one row")
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.entries, self.entries.T))

    def symmetric_within(self, tol: float = SYMMETRY_TOL) -> bool:
        """Symmetry test for computed (rounded) matrices."""
        return bool(np.all(np.abs(self.entries - self.entries.T) <= tol))

    @property
    def is_zero_diagonal(self) -> bool:
        return bool(np.all(np.diag(self.entries) == 0.0))

    @property
    def T(self) -> "Matrix":
        return Matrix(self.entries.T)

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.entries
        return self.entries.astype(dtype)

    def __len__(self):
        return self.n

    def __add__(self, other):
        return Matrix(self.entries + as_array(other))

    def __sub__(self, other):
        return Matrix(self.entries - as_array(other))

    def __neg__(self):
        return Matrix(-self.entries)

    def __mul__(self, c):
        if isinstance(c, (Matrix, np.ndarray)):
            raise TypeError("use schur() for entrywise products")
        return Matrix(float(c) * self.entries)

    __rmul__ = __mul__

    def equals(self, other) -> bool:
        return bool(np.array_equal(self.entries, as_array(other)))

    def to_rows(self) -> list[list[float]]:
        return self.entries.tolist()

    def __repr__(self):
        return f"Matrix(n={self.n}, entries={self.entries.tolist()!r})"


MatrixLike = Union[Matrix, np.ndarray, list]


def as_array(A: MatrixLike) -> np.ndarray:
    """Float ndarray view of a Matrix or array-like (square check included)."""
    if isinstance(A, Matrix):
        return A.entries
    arr = np.asarray(A, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"matrix must be square, got shape {arr.shape}")
    return arr


def as_matrix(A: MatrixLike) -> Matrix:
    return A if isinstance(A, Matrix) else Matrix(A)


# -- constructions ---------------------------------------------------------

def identity(n: int) -> Matrix:
    return Matrix(np.eye(n))


def ones(n: int) -> Matrix:
    """All-ones matrix J_n."""
    return Matrix(np.ones((n, n)))


def zeros(n: int) -> Matrix:
    return Matrix(np.zeros((n, n)))


def triangular_mask(n: int) -> Matrix:
    """0/1 mask keeping entries with row index >= column index."""
    return Matrix(np.tril(np.ones((n, n))))


def make_An(n: int) -> Matrix:
    """Skew-symmetric matrix with zero diagonal and entries 1/(i - j) off it."""
    if n < 1:
        raise ValueError("n must be >= 1")
    idx = np.arange(n)
    diff = (idx[:, None] - idx[None, :]).astype(float)
    out = np.zeros((n, n))
    off = diff != 0
    out[off] = 1.0 / diff[off]
    return Matrix(out)


def make_An_tensor(n: int) -> Matrix:
    """The symmetric matrix A_n (x) A_n of side n^2."""
    A = make_An(n)
    return kronecker(A, A)


# -- algebra ---------------------------------------------------------------

def kronecker(A: MatrixLike, B: MatrixLike) -> Matrix:
    """Kronecker product, first factor outermost.

    Entry ``(i*nB + k, j*nB + l)`` equals ``A[i, j] * B[k, l]``.
    """
    return Matrix(np.kron(as_array(A), as_array(B)))


def schur(A: MatrixLike, B: MatrixLike) -> Matrix:
    a, b = as_array(A), as_array(B)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return Matrix(a * b)


def triangular_cut(A: MatrixLike) -> Matrix:
    """Keep entries with i >= j, zero the strictly upper part."""
    return Matrix(np.tril(as_array(A)))


# -- harmonic numbers ------------------------------------------------------

class HarmonicCache:
    """Growable table with ``values[k] = H_k`` and ``values[0] = 0``."""

    def __init__(self):
        self.values = np.zeros(1)

    def table(self, k: int) -> np.ndarray:
        if k < 0:
            raise ValueError("k must be nonnegative")
        if k >= len(self.values):
            # cumsum runs in increasing i, so entries never change on regrowth
            recip = 1.0 / np.arange(1, k + 1, dtype=float)
            self.values = np.concatenate(([0.0], np.cumsum(recip)))
        return self.values[: k + 1]

    def __getitem__(self, k: int) -> float:
        return float(self.table(k)[k])


_HARMONIC = HarmonicCache()


def harmonic(k: int) -> float:
    """H_k = 1 + 1/2 + ... + 1/k, with H_0 = 0."""
    return _HARMONIC[int(k)]


def harmonic_numbers(k: int) -> np.ndarray:
    """Array ``[H_0, H_1, ..., H_k]``."""
    return _HARMONIC.table(int(k)).copy()


def closed_form_tri_cut_norm(n: int) -> float:
    """Cut norm of triangular_cut(make_An(n)): (n (H_{n-1} - 1) + 1) / n^2."""
    if n < 2:
        raise ValueError("closed form needs n >= 2")
    return (n * (harmonic(n - 1) - 1.0) + 1.0) / n**2


# -- file formats ----------------------------------------------------------

def matrix_to_json(A: MatrixLike) -> str:
    arr = as_array(A)
    return json.dumps({"n": arr.shape[0], "rows": arr.tolist()})


def matrix_from_json(text: str) -> Matrix:
    obj = json.loads(text)
    if not isinstance(obj, dict) or "rows" not in obj:
        raise ValueError('matrix JSON needs a "rows" field')
    M = Matrix(obj["rows"])
    if "n" in obj and int(obj["n"]) != M.n:
        raise ValueError(f'"n" is {obj["n"]} but rows describe a {M.n}x{M.n} matrix')
    return M


def matrix_from_csv(text: str) -> Matrix:
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    try:
        data = [[float(c) for c in r] for r in rows]
    except ValueError as exc:
        raise ValueError(f"malformed CSV matrix: {exc}") from None
    return Matrix(data)


def load_matrix(path) -> Matrix:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return matrix_from_json(text)
    return matrix_from_csv(text)


def save_matrix(path, A: MatrixLike, fmt: str = "json") -> None:
    arr = as_array(A)
    if fmt == "json":
        Path(path).write_text(matrix_to_json(arr) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in arr:
            writer.writerow([repr(float(x)) for x in row])
        Path(path).write_text(buf.getvalue())
    else:
        raise ValueError(f"unknown matrix format {fmt!r}")
