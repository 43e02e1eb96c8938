"""Exact cut norm, (inf,1)-norm and operator norm.

Both combinatorial norms are maximized by scanning every row subset ``S`` and
reading off the best column side from the column sums ``c(S)``:

* cut norm:      max(sum_j max(c_j, 0), -sum_j min(c_j, 0))
* (inf,1)-norm:  sum_j |(A^T x)_j|  with ``x = 2 * 1_S - 1``

Subsets are split into low bits (a precomputed table of all ``2^L`` partial
sums) and high bits (walked in Gray-code order, one row added or removed per
step).  The high walk is cut into fixed-size chunks, each restarting its
running sum from scratch, so the floating-point path and therefore the result
is independent of how chunks are spread over threads.

Ties are broken toward the smallest subset bitmask (bit ``i`` is row ``i``).
For the cut norm a positive-signed optimum is preferred over a negative one.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import reduce
from typing import Optional, Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from ._threads import resolve_threads
from .matrix import MatrixLike, as_array

DEFAULT_CAP = 25
LOW_BITS = 13
CHUNK = 64


class EnumerationCapExceeded(ValueError):
    """Matrix too large for exhaustive enumeration."""


class OperatorNormNotConverged(RuntimeError):
    def __init__(self, message, lower, upper):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


@dataclass(frozen=True)
class CutWitness:
    """Row set ``S`` and column set ``T`` (0-based) achieving ``|sum_{S x T} a_ij|``.

    ``value`` is un-normalized; ``sign`` is the sign of the underlying sum.
    """

    S: tuple
    T: tuple
    value: float
    sign: int = 1

    def evaluate(self, A: MatrixLike) -> float:
        """Signed sum of the entries over ``S x T``."""
        arr = as_array(A)
        if not self.S or not self.T:
            return 0.0
        return float(arr[np.ix_(self.S, self.T)].sum())

    @property
    def masks(self) -> tuple:
        return sum(1 << i for i in self.S), sum(1 << j for j in self.T)


@dataclass(frozen=True)
class SignWitness:
    x: tuple
    y: tuple
    value: float

    def evaluate(self, A: MatrixLike) -> float:
        return float(np.asarray(self.x, float) @ as_array(A) @ np.asarray(self.y, float))


@dataclass(frozen=True)
class NormBracket:
    """Certified interval ``[lower, upper]`` for one norm."""

    lower: float
    upper: float
    method: str
    witness: Optional[Union[CutWitness, SignWitness]] = None
    lower_method: str = "enumeration-exact"

    METHODS = ("enumeration-exact", "spectral-bound", "l1-bound", "bracket-from-inf-one")

    def __post_init__(self):
        if self.method not in self.METHODS:
            raise ValueError(f"unknown bracket method {self.method!r}")
        if self.lower > self.upper + 1e-9:
            raise ValueError(f"bracket lower {self.lower} exceeds upper {self.upper}")

    @property
    def exact(self) -> bool:
        return self.method == "enumeration-exact"


# -- enumeration engine ----------------------------------------------------

def _subset_sums(R: np.ndarray) -> np.ndarray:
    """Row ``l`` of the result is the sum of the rows of ``R`` selected by the bits of ``l``."""
    L, m = R.shape
    table = np.zeros((1 << L, m))
    for b in range(L):
        table[1 << b: 2 << b] = table[: 1 << b] + R[b]
    return table


def _scan(R, base, reduce_block, combine, threads=None):
    """Reduce ``reduce_block(base + sum of a subset of rows of R, mask_offset)`` over all subsets."""
    k = R.shape[0]
    low = min(k, LOW_BITS)
    table = _subset_sums(R[:low])
    high = R[low:]
    n_high = 1 << (k - low)

    def work(t0):
        t1 = min(t0 + CHUNK, n_high)
        g = t0 ^ (t0 >> 1)
        hv = base.copy()
        for b in range(high.shape[0]):
            if g >> b & 1:
                hv += high[b]
        best = reduce_block(hv + table, g << low)
        for t in range(t0 + 1, t1):
            b = (t & -t).bit_length() - 1
            g ^= 1 << b
            if g >> b & 1:
                hv += high[b]
            else:
                hv -= high[b]
            best = combine(best, reduce_block(hv + table, g << low))
        return best

    starts = range(0, n_high, CHUNK)
    nthreads = resolve_threads(threads)
    if nthreads == 1 or len(starts) == 1:
        parts = [work(s) for s in starts]
    else:
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            parts = list(pool.map(work, starts))
    return reduce(combine, parts)


def _better(a, b):
    """Pick the larger ``(value, mask)``; equal values go to the smaller mask."""
    if a[0] > b[0]:
        return a
    if b[0] > a[0]:
        return b
    return a if a[1] <= b[1] else b


def _cut_block(block, offset):
    pos = np.maximum(block, 0.0).sum(axis=1)
    neg = -np.minimum(block, 0.0).sum(axis=1)
    ip = int(np.argmax(pos))
    ineg = int(np.argmax(neg))
    return (float(pos[ip]), offset | ip), (float(neg[ineg]), offset | ineg)


def _cut_combine(p, q):
    return _better(p[0], q[0]), _better(p[1], q[1])


def _sign_block(block, offset):
    vals = np.abs(block).sum(axis=1)
    i = int(np.argmax(vals))
    return float(vals[i]), offset | i


def _mask_to_rows(mask: int, k: int) -> np.ndarray:
    return np.array([b for b in range(k) if mask >> b & 1], dtype=int)


def _cut_scan(M, threads=None):
    """Best positive and negative row sets of ``M``: ``((P, S_pos), (N, S_neg))``."""
    k, m = M.shape
    (P, mp), (N, mn) = _scan(M, np.zeros(m), _cut_block, _cut_combine, threads)
    return (P, _mask_to_rows(mp, k)), (N, _mask_to_rows(mn, k))


def _sign_scan(M, threads=None):
    """Best ``x`` in {-1,+1}^k with ``x_0 = +1`` maximizing ``sum_j |(M^T x)_j|``."""
    k, m = M.shape
    base = M[0] - M[1:].sum(axis=0)
    value, mask = _scan(2.0 * M[1:], base, _sign_block, _better, threads)
    x = np.ones(k)
    for b in range(k - 1):
        if not mask >> b & 1:
            x[b + 1] = -1.0
    return value, x


def _sign(v: np.ndarray) -> np.ndarray:
    return np.where(v >= 0, 1.0, -1.0)


# -- exact reduction for large, structured matrices --------------------------

def _merge_identical(M, groups):
    uniq, inv = np.unique(M, axis=0, return_inverse=True)
    if len(uniq) == M.shape[0]:
        return M, groups, False
    inv = inv.reshape(-1)
    merged = np.zeros((len(uniq), M.shape[1]))
    np.add.at(merged, inv, M)
    new_groups = [[] for _ in range(len(uniq))]
    for src, dst in enumerate(inv):
        new_groups[dst].extend(groups[src])
    return merged, [sorted(g) for g in new_groups], True


def reduce_matrix(A: MatrixLike):
    """Split ``A`` into independent blocks for exact cut / (inf,1) evaluation.

    Zero rows and columns are dropped, identical rows (then columns) are
    summed into one, and the nonzero pattern is split into connected
    components.  An optimal subset can always take all or none of a group of
    identical rows, and different components never share an entry, so both
    norms decompose additively over the blocks.

    Returns a list of ``(M, row_groups, col_groups)``.
    """
    arr = as_array(A)
    rows = np.flatnonzero(np.any(arr != 0, axis=1))
    cols = np.flatnonzero(np.any(arr != 0, axis=0))
    if len(rows) == 0:
        return []
    M = arr[np.ix_(rows, cols)]
    rg = [[int(i)] for i in rows]
    cg = [[int(j)] for j in cols]
    changed = True
    while changed:
        M, rg, c1 = _merge_identical(M, rg)
        Mt, cg, c2 = _merge_identical(M.T, cg)
        M = Mt.T
        changed = c1 or c2
    r, c = M.shape
    adj = np.zeros((r + c, r + c), dtype=bool)
    adj[:r, r:] = M != 0
    ncomp, labels = connected_components(csr_matrix(adj), directed=False)
    blocks = []
    for k in range(ncomp):
        ri = np.flatnonzero(labels[:r] == k)
        ci = np.flatnonzero(labels[r:] == k)
        blocks.append((M[np.ix_(ri, ci)], [rg[i] for i in ri], [cg[j] for j in ci]))
    blocks.sort(key=lambda b: (b[1][0][0], b[2][0][0]))
    return blocks


def _too_large(n, cap, what):
    return EnumerationCapExceeded(
        f"{what} on n={n} exceeds the enumeration cap {cap}; "
        "use cut_norm_bracket or the cutnorm_lab.approx heuristics instead"
    )


def _cut_rows_by_reduction(arr, cap, threads):
    blocks = reduce_matrix(arr)
    for M, _, _ in blocks:
        if min(M.shape) > cap:
            raise _too_large(arr.shape[0], cap, "exact cut norm")
    P = N = 0.0
    S_pos, S_neg = [], []
    for M, rg, cg in blocks:
        if M.shape[0] <= M.shape[1]:
            (p, sp), (q, sn) = _cut_scan(M, threads)
        else:
            # scan the short side; recover rows from the optimal column sets
            (p, tp), (q, tn) = _cut_scan(M.T, threads)
            sp = np.flatnonzero(M[:, tp].sum(axis=1) > 0)
            sn = np.flatnonzero(M[:, tn].sum(axis=1) < 0)
        P += p
        N += q
        S_pos.extend(i for a in sp for i in rg[a])
        S_neg.extend(i for a in sn for i in rg[a])
    if P >= N:
        return sorted(S_pos), 1
    return sorted(S_neg), -1


def _cut_witness(arr, S, sign) -> CutWitness:
    S = [int(i) for i in S]
    if not S:
        return CutWitness((), (), 0.0, 1)
    c = arr[S].sum(axis=0)
    T = np.flatnonzero(c > 0) if sign > 0 else np.flatnonzero(c < 0)
    if len(T) == 0:
        return CutWitness(tuple(S), (), 0.0, sign)
    value = float(arr[np.ix_(S, T)].sum())
    return CutWitness(tuple(S), tuple(int(j) for j in T), abs(value), 1 if value >= 0 else -1)


def cut_norm_exact(A: MatrixLike, cap: int = DEFAULT_CAP, threads=None):
    """Exact cut norm ``max_{S,T} |sum_{S x T} a_ij| / n^2`` and its witness.

    Matrices with ``n > cap`` are attempted through ``reduce_matrix``; when a
    reduced block is still too large, EnumerationCapExceeded is raised.
    """
    arr = as_array(A)
    n = arr.shape[0]
    if n <= cap:
        (P, sp), (N, sn) = _cut_scan(arr, threads)
        S, sign = (sp, 1) if P >= N else (sn, -1)
    else:
        S, sign = _cut_rows_by_reduction(arr, cap, threads)
    w = _cut_witness(arr, S, sign)
    return w.value / n**2, w


def _sign_witness(arr, x) -> SignWitness:
    y = _sign(arr.T @ x)
    value = float(x @ arr @ y)
    return SignWitness(tuple(int(v) for v in x), tuple(int(v) for v in y), value)


def inf_one_norm_exact(A: MatrixLike, cap: int = DEFAULT_CAP, threads=None):
    """Exact ``||A||_{inf->1} = max_{x,y in {-1,1}^n} x^T A y`` and its witness."""
    arr = as_array(A)
    n = arr.shape[0]
    if n <= cap:
        _, x = _sign_scan(arr, threads)
        w = _sign_witness(arr, x)
        return w.value, w
    blocks = reduce_matrix(arr)
    for M, _, _ in blocks:
        if min(M.shape) > cap:
            raise _too_large(n, cap, "exact (inf,1)-norm")
    x = np.ones(n)
    for M, rg, cg in blocks:
        if M.shape[0] <= M.shape[1]:
            _, xb = _sign_scan(M, threads)
        else:
            _, yb = _sign_scan(M.T, threads)
            xb = _sign(M @ yb)
        for a, v in enumerate(xb):
            x[rg[a]] = v
    w = _sign_witness(arr, x)
    return w.value, w


# -- operator norm ---------------------------------------------------------

def operator_norm(A: MatrixLike, tol: float = 1e-10, max_iter: int = 10000) -> float:
    """Largest singular value by power iteration on ``A^T A``.

    Starts from the normalized all-ones vector (then an index ramp, then the
    heaviest column's basis vector if the start lies in the null space).  The
    returned value is ``||A v||_2`` at the final unit iterate, hence a lower
    bound that converges to the true value.
    """
    arr = as_array(A)
    n = arr.shape[0]
    if not np.any(arr):
        return 0.0
    if tol <= 0:
        raise ValueError("tol must be positive")
    scale = float(np.abs(arr).max())
    starts = [np.ones(n), np.arange(1, n + 1, dtype=float)]
    e = np.zeros(n)
    e[int(np.argmax(np.linalg.norm(arr, axis=0)))] = 1.0
    starts.append(e)
    for v in starts:
        v = v / np.linalg.norm(v)
        if np.linalg.norm(arr @ v) > 1e-12 * scale:
            break
    prev = None
    est = 0.0
    for _ in range(max_iter):
        w = arr @ v
        est = float(np.linalg.norm(w))
        lam = est * est
        z = arr.T @ w
        nz = np.linalg.norm(z)
        if nz == 0.0:
            return est
        v = z / nz
        if prev is not None and abs(lam - prev) < tol * lam:
            return float(np.linalg.norm(arr @ v))
        prev = lam
    upper = min(float(np.linalg.norm(arr)),
                math.sqrt(float(np.abs(arr).sum(axis=0).max() * np.abs(arr).sum(axis=1).max())))
    raise OperatorNormNotConverged(
        f"power iteration did not converge in {max_iter} iterations", est, upper)


def _safe_operator_norm(arr, tol=1e-10):
    """(lower, upper) spectral bracket, tolerating non-convergence."""
    try:
        s = operator_norm(arr, tol=tol)
        return s, s
    except OperatorNormNotConverged as exc:
        return exc.lower, exc.upper


# -- brackets --------------------------------------------------------------

def cut_norm_bracket(A: MatrixLike, cap: int = DEFAULT_CAP, cfg=None, threads=None,
                     inf_one_upper: Optional[float] = None) -> NormBracket:
    """Exact bracket when enumeration is feasible, otherwise heuristic lower and
    the smallest of the spectral, l1 and (if supplied) (inf,1) upper bounds."""
    arr = as_array(A)
    n = arr.shape[0]
    try:
        v, w = cut_norm_exact(arr, cap=cap, threads=threads)
        return NormBracket(v, v, "enumeration-exact", w)
    except EnumerationCapExceeded:
        pass
    from .approx import RelaxationConfig, cut_norm_lower_heuristic, inf_one_lower_heuristic

    cfg = cfg or RelaxationConfig()
    h, hw = cut_norm_lower_heuristic(arr, cfg)
    s, sw = inf_one_lower_heuristic(arr, cfg)
    lower, witness = (h, hw) if h >= s / (4 * n**2) else (s / (4 * n**2), sw)
    _, opr_hi = _safe_operator_norm(arr)
    uppers = [("spectral-bound", opr_hi / n), ("l1-bound", float(np.abs(arr).sum()) / n**2)]
    if inf_one_upper is not None:
        uppers.append(("bracket-from-inf-one", inf_one_upper / n**2))
    method, upper = min(uppers, key=lambda mu: mu[1])
    return NormBracket(lower, upper, method, witness, lower_method="heuristic")


def inf_one_bracket(A: MatrixLike, cap: int = DEFAULT_CAP, cfg=None, threads=None) -> NormBracket:
    arr = as_array(A)
    n = arr.shape[0]
    try:
        v, w = inf_one_norm_exact(arr, cap=cap, threads=threads)
        return NormBracket(v, v, "enumeration-exact", w)
    except EnumerationCapExceeded:
        pass
    from .approx import RelaxationConfig, inf_one_lower_heuristic

    s, sw = inf_one_lower_heuristic(arr, cfg or RelaxationConfig())
    _, opr_hi = _safe_operator_norm(arr)
    # ||Ax||_1 <= sqrt(n) ||Ax||_2 <= n * sigma_max for ||x||_inf <= 1
    uppers = [("spectral-bound", n * opr_hi), ("l1-bound", float(np.abs(arr).sum()))]
    method, upper = min(uppers, key=lambda mu: mu[1])
    return NormBracket(s, upper, method, sw, lower_method="heuristic")
