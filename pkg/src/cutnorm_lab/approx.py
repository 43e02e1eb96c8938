"""Lower bounds for the (inf,1)-norm and cut norm beyond the enumeration cap.

The bilinear problem ``max x^T A y`` over sign vectors is relaxed to unit
vectors ``u_i, v_j`` in R^r (a low-rank, Burer-Monteiro style factorization of
the Grothendieck semidefinite program) and solved by block-coordinate ascent.
Sign candidates come from random hyperplane rounding followed by greedy
coordinate flips.  Every reported value is re-evaluated exactly from its
witness; the relaxation objective itself is never reported as a bound.

Randomness uses numpy's PCG64 bit generator.  The starting vectors come from
``PCG64(seed)`` and rounding round ``k`` draws from ``PCG64(seed + k)``, so a
seed fixes every output on every platform.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .exact import CutWitness, SignWitness
from .matrix import MatrixLike, as_array

GENERATOR_TAG = "numpy.random.PCG64"
_SEED_MOD = 1 << 64
_TINY = 1e-14


@dataclass(frozen=True)
class RelaxationConfig:
    rank: Optional[int] = None
    sweeps: int = 200
    rounding_rounds: int = 1000
    seed: int = 0
    convergence_tol: float = 1e-9

    def __post_init__(self):
        if self.rank is not None and self.rank < 1:
            raise ValueError("rank must be >= 1")
        if self.rounding_rounds < 1:
            raise ValueError("rounding_rounds must be >= 1")
        if self.sweeps < 0:
            raise ValueError("sweeps must be >= 0")
        if not 0 <= self.seed < _SEED_MOD:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def rank_for(self, n: int) -> int:
        return self.rank if self.rank is not None else math.ceil(math.sqrt(2 * n))


@dataclass
class RelaxationState:
    U: np.ndarray
    V: np.ndarray
    objective: float
    history: list = field(default_factory=list)


def _generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed % _SEED_MOD))


def _normalize_rows(X, previous):
    norms = np.linalg.norm(X, axis=1)
    keep = norms < _TINY
    out = X / np.where(keep, 1.0, norms)[:, None]
    out[keep] = previous[keep]
    return out


def _objective(arr, U, V) -> float:
    return float(np.sum(U * (arr @ V)))


def relax_inf_one(A: MatrixLike, cfg: RelaxationConfig = RelaxationConfig()) -> RelaxationState:
    """Block-coordinate ascent on ``sum_ij a_ij <u_i, v_j>`` over unit vectors.

    Each half-sweep is the exact maximizer over one side with the other side
    fixed, so ``history`` is nondecreasing.
    """
    arr = as_array(A)
    n = arr.shape[0]
    r = cfg.rank_for(n)
    rng = _generator(cfg.seed)
    U = _normalize_rows(rng.standard_normal((n, r)), np.zeros((n, r)))
    V = _normalize_rows(rng.standard_normal((n, r)), np.zeros((n, r)))
    # a zero draw is astronomically unlikely; fall back to e_1 for safety
    U[np.linalg.norm(U, axis=1) == 0, 0] = 1.0
    V[np.linalg.norm(V, axis=1) == 0, 0] = 1.0
    obj = _objective(arr, U, V)
    history = [obj]
    for _ in range(cfg.sweeps):
        U = _normalize_rows(arr @ V, U)
        V = _normalize_rows(arr.T @ U, V)
        new = _objective(arr, U, V)
        history.append(new)
        done = abs(new - obj) <= cfg.convergence_tol * max(abs(obj), _TINY)
        obj = new
        if done:
            break
    return RelaxationState(U, V, obj, history)


def _signs(v):
    return np.where(v >= 0, 1.0, -1.0)


def _greedy_signs(arr, X, Y, max_passes=None):
    """Alternate improving flips on rows of X (left) and Y (right) until stable.

    Flipping ``x_i`` changes ``x^T A y`` by ``-2 x_i (A y)_i`` independently of
    the other left coordinates, so one ascending pass over ``i`` is the same as
    flipping every improving coordinate at once.
    """
    n = arr.shape[0]
    max_passes = max_passes or 4 * n + 8
    for _ in range(max_passes):
        AY = Y @ arr.T
        fx = X * AY < 0
        X = np.where(fx, -X, X)
        AX = X @ arr
        fy = Y * AX < 0
        Y = np.where(fy, -Y, Y)
        if not fx.any() and not fy.any():
            break
    return X, Y


def _rounding_vectors(cfg: RelaxationConfig, r: int) -> np.ndarray:
    return np.stack([_generator(cfg.seed + k).standard_normal(r)
                     for k in range(cfg.rounding_rounds)])


def _rounded_candidates(arr, state, cfg):
    G = _rounding_vectors(cfg, state.U.shape[1])
    X = _signs(G @ state.U.T)
    Y = _signs(G @ state.V.T)
    X, Y = _greedy_signs(arr, X, Y)
    return X, Y


def round_to_signs(A: MatrixLike, state: RelaxationState,
                   cfg: RelaxationConfig = RelaxationConfig()):
    """Best ``x^T A y`` over hyperplane-rounded, flip-improved sign pairs."""
    arr = as_array(A)
    X, Y = _rounded_candidates(arr, state, cfg)
    vals = np.einsum("ri,ij,rj->r", X, arr, Y)
    k = int(np.argmax(vals))
    x, y = X[k], Y[k]
    value = float(x @ arr @ y)
    return value, SignWitness(tuple(int(v) for v in x), tuple(int(v) for v in y), value)


def inf_one_lower_heuristic(A: MatrixLike, cfg: RelaxationConfig = RelaxationConfig()):
    return round_to_signs(A, relax_inf_one(A, cfg), cfg)


def _greedy_indicators(arr, S, T, sigma, max_passes=None):
    """Improve ``sigma * sum_{S x T} a_ij`` by single-coordinate toggles in {0,1}."""
    n = arr.shape[0]
    max_passes = max_passes or 4 * n + 8
    for _ in range(max_passes):
        g = sigma[:, None] * (T @ arr.T)
        newS = np.where(g > 0, 1.0, np.where(g < 0, 0.0, S))
        h = sigma[:, None] * (newS @ arr)
        newT = np.where(h > 0, 1.0, np.where(h < 0, 0.0, T))
        stable = np.array_equal(newS, S) and np.array_equal(newT, T)
        S, T = newS, newT
        if stable:
            break
    return S, T


def cut_norm_lower_heuristic(A: MatrixLike, cfg: RelaxationConfig = RelaxationConfig()):
    """Cut-norm lower bound ``|sum_{S x T} a_ij| / n^2`` with its witness.

    Every rounded, flip-improved sign pair ``(x, y)`` yields four indicator
    pairs (supports of ``+-x`` times supports of ``+-y``).  Each is improved by
    indicator toggles toward both signs of the sum, and the best exact value is
    returned.  The candidates of the best sign pair come first, so ties resolve
    to them.
    """
    arr = as_array(A)
    n = arr.shape[0]
    X, Y = _rounded_candidates(arr, relax_inf_one(arr, cfg), cfg)
    vals = np.einsum("ri,ij,rj->r", X, arr, Y)
    order = np.argsort(-vals, kind="stable")
    X, Y = X[order], Y[order]
    S0, T0, sig = [], [], []
    for sx in (X > 0, X < 0):
        for ty in (Y > 0, Y < 0):
            for sigma in (1.0, -1.0):
                S0.append(sx)
                T0.append(ty)
                sig.append(np.full(len(X), sigma))
    # candidate index = rank-major so that the best sign pair's candidates come first
    S0 = np.stack(S0, axis=1).reshape(-1, n).astype(float)
    T0 = np.stack(T0, axis=1).reshape(-1, n).astype(float)
    sig = np.stack(sig, axis=1).reshape(-1)
    S, T = _greedy_indicators(arr, S0, T0, sig)
    cand = np.abs(np.einsum("ci,ij,cj->c", S, arr, T))
    k = int(np.argmax(cand))
    Si = np.flatnonzero(S[k])
    Ti = np.flatnonzero(T[k])
    total = float(arr[np.ix_(Si, Ti)].sum()) if len(Si) and len(Ti) else 0.0
    w = CutWitness(tuple(int(i) for i in Si), tuple(int(j) for j in Ti), abs(total),
                   1 if total >= 0 else -1)
    return w.value / n**2, w
