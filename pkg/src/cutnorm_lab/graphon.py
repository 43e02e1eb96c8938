"""Step graphons on the uniform m x m grid of [0,1]^2.

Cell ``(i, j)`` (0-based) is the constant value on ``I_i x I_j`` with
``I_i = (i/m, (i+1)/m]``.  All operators here map step graphons to step
graphons exactly, which is why the triangular and banded cuts demand zero
values on the cells that the cutting lines pass through.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .exact import DEFAULT_CAP, cut_norm_exact
from .matrix import Matrix, MatrixLike, as_array, make_An_tensor


@dataclass(frozen=True, eq=False)
class StepGraphon:
    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=float, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise ValueError(f"step graphon needs a nonempty square value grid, got {arr.shape}")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def m(self) -> int:
        return self.values.shape[0]

    @property
    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.values, self.values.T))

    @property
    def l1_norm(self) -> float:
        return float(np.abs(self.values).sum()) / self.m**2

    def reflect(self) -> "StepGraphon":
        """``(x, y) -> w(y, x)``."""
        return StepGraphon(self.values.T)

    def __add__(self, other: "StepGraphon") -> "StepGraphon":
        if other.m != self.m:
            raise ValueError(f"resolution mismatch: {self.m} vs {other.m}")
        return StepGraphon(self.values + other.values)

    def __sub__(self, other: "StepGraphon") -> "StepGraphon":
        if other.m != self.m:
            raise ValueError(f"resolution mismatch: {self.m} vs {other.m}")
        return StepGraphon(self.values - other.values)

    def __mul__(self, c):
        return StepGraphon(float(c) * self.values)

    __rmul__ = __mul__

    def equals(self, other: "StepGraphon") -> bool:
        return self.m == other.m and bool(np.array_equal(self.values, other.values))

    def __repr__(self):
        return f"StepGraphon(m={self.m}, values={self.values.tolist()!r})"


def constant(c: float, m: int = 1) -> StepGraphon:
    return StepGraphon(np.full((m, m), float(c)))


def step_graphon_from_matrix(M: MatrixLike, double_diagonal: bool = False) -> StepGraphon:
    vals = np.array(as_array(M), dtype=float)
    if double_diagonal:
        vals[np.diag_indices_from(vals)] *= 2.0
    return StepGraphon(vals)


def associated_graphon(adjacency: MatrixLike) -> StepGraphon:
    """Step graphon of a graph's adjacency matrix on the n-grid."""
    return step_graphon_from_matrix(adjacency)


def tensor_graphon(n: int) -> StepGraphon:
    """``w_n``: cells carry the entries of A_n (x) A_n, diagonal cells are zero."""
    vals = np.array(make_An_tensor(n).entries)
    vals[np.diag_indices_from(vals)] = 0.0
    return StepGraphon(vals)


def graphon_cut_norm(w: StepGraphon, cap: int = DEFAULT_CAP, threads=None):
    """Exact cut norm of a step graphon.

    For fixed column side the objective is linear in the occupied fraction of
    each row cell, so the supremum over measurable sets is attained at unions
    of whole cells and equals the matrix cut norm of the value grid.
    """
    return cut_norm_exact(w.values, cap=cap, threads=threads)


def witness_intervals(cells, m: int):
    """Merge a sorted tuple of cell indices into disjoint intervals ``(a, b]`` of [0,1]."""
    out = []
    for i in cells:
        lo, hi = Fraction(i, m), Fraction(i + 1, m)
        if out and out[-1][1] == lo:
            out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return out


def triangular_cut_graphon(w: StepGraphon) -> StepGraphon:
    """Multiply by the indicator of ``x <= y``: keep cells with i < j."""
    diag = np.diag(w.values)
    bad = np.flatnonzero(diag != 0)
    if len(bad):
        i = int(bad[0])
        raise ValueError(
            f"triangular cut needs zero diagonal cells; cell ({i}, {i}) is {float(diag[i])!r}")
    return StepGraphon(np.triu(w.values, k=1))


def as_fraction(lam) -> Fraction:
    """Parse ``1/2``, ``0.25``, a Fraction or a float into an exact fraction in (0, 1)."""
    if isinstance(lam, Fraction):
        f = lam
    elif isinstance(lam, str):
        f = Fraction(lam.strip())
    else:
        f = Fraction(lam)
    if not 0 < f < 1:
        raise ValueError(f"lambda must lie in (0, 1), got {f}")
    return f


def _scaled_resolution(m: int, factor: Fraction, what: str) -> int:
    r = m * factor
    if r.denominator != 1:
        raise ValueError(f"{what}: resolution m={m} times {factor} is not an integer; "
                         "refine the graphon first")
    return int(r)


def corner_embed(w: StepGraphon, lam) -> StepGraphon:
    """``w_lambda``: a copy of ``w`` on the corner [0, lambda] x [1 - lambda, 1].

    The output has resolution ``m / lambda``; every other cell is zero.
    """
    lam = as_fraction(lam)
    big = _scaled_resolution(w.m, 1 / lam, "corner_embed alignment")
    vals = np.zeros((big, big))
    vals[: w.m, big - w.m:] = w.values
    return StepGraphon(vals)


def corner_embed_symmetric(w: StepGraphon, lam) -> StepGraphon:
    """``w_lambda + reflect(w_lambda)``."""
    e = corner_embed(w, lam)
    return e + e.reflect()


def banded_cut(w: StepGraphon, lam) -> StepGraphon:
    """Multiply by the indicator of ``|x - y| <= 1 - lambda``.

    With ``b = m (1 - lambda)`` cells with ``|i - j| < b`` are kept and cells
    with ``|i - j| > b`` are zeroed.  Cells on ``|i - j| = b`` are split by the
    band edge and must already be zero.
    """
    lam = as_fraction(lam)
    keep_width = _scaled_resolution(w.m, 1 - lam, "banded_cut alignment")
    i, j = np.indices(w.values.shape)
    dist = np.abs(i - j)
    edge = (dist == keep_width) & (w.values != 0)
    if edge.any():
        a, b = (int(v) for v in np.argwhere(edge)[0])
        raise ValueError(
            f"banded cut needs zero cells on the band edge |i-j|={keep_width}; "
            f"cell ({a}, {b}) is {float(w.values[a, b])!r}")
    return StepGraphon(np.where(dist < keep_width, w.values, 0.0))


def refine(w: StepGraphon, k: int) -> StepGraphon:
    """Split every cell into k x k equal cells (same function, resolution k m)."""
    if k < 1:
        raise ValueError("refinement factor must be >= 1")
    return StepGraphon(np.kron(w.values, np.ones((k, k))))


def l1_normalize(w: StepGraphon) -> StepGraphon:
    norm = w.l1_norm
    if norm == 0:
        raise ValueError("cannot L1-normalize the zero graphon")
    return StepGraphon(w.values / norm)


# -- file formats ----------------------------------------------------------

def graphon_to_json(w: StepGraphon) -> str:
    return json.dumps({"m": w.m, "values": w.values.tolist()})


def graphon_from_json(text: str) -> StepGraphon:
    obj = json.loads(text)
    if not isinstance(obj, dict) or "values" not in obj:
        raise ValueError('graphon JSON needs a "values" field')
    w = StepGraphon(obj["values"])
    if "m" in obj and int(obj["m"]) != w.m:
        raise ValueError(f'"m" is {obj["m"]} but values describe a {w.m}x{w.m} grid')
    return w


def load_graphon(path) -> StepGraphon:
    return graphon_from_json(Path(path).read_text())


def save_graphon(path, w: StepGraphon) -> None:
    Path(path).write_text(graphon_to_json(w) + "\n")


def adjacency_from_edges(text: str, n: int | None = None) -> Matrix:
    """Adjacency matrix of a simple undirected graph from ``u v`` lines (1-based).

    Blank lines and ``#`` comments are skipped; ``n`` defaults to the largest
    vertex label.
    """
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"edge list line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"edge list line {lineno}: vertex labels must be integers") from None
        if u < 1 or v < 1:
            raise ValueError(f"edge list line {lineno}: vertex labels are 1-based")
        if u == v:
            raise ValueError(f"edge list line {lineno}: self-loop at vertex {u}")
        edges.append((u, v))
    size = n if n is not None else max((max(e) for e in edges), default=0)
    if size < 1:
        raise ValueError("edge list describes an empty graph")
    adj = np.zeros((size, size))
    for lineno, (u, v) in enumerate(edges, 1):
        if u > size or v > size:
            raise ValueError(f"vertex {max(u, v)} exceeds n={size}")
        if adj[u - 1, v - 1]:
            raise ValueError(f"duplicate edge {u} {v}")
        adj[u - 1, v - 1] = adj[v - 1, u - 1] = 1.0
    return Matrix(adj)


def load_edge_list(path, n: int | None = None) -> StepGraphon:
    return associated_graphon(adjacency_from_edges(Path(path).read_text(), n))
