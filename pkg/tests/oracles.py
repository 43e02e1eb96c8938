"""Brute-force references, written without any of the package's enumeration tricks."""
import itertools

import numpy as np


def cut_norm_brute(A):
    """max over all (S, T) pairs of |sum_{S x T} a_ij|, divided by n^2."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    best = 0.0
    subsets = [np.array(bits, dtype=bool) for bits in itertools.product((0, 1), repeat=n)]
    for s in subsets:
        for t in subsets:
            best = max(best, abs(A[np.ix_(s, t)].sum()))
    return best / n**2


def inf_one_brute(A):
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    signs = [np.array(v, dtype=float) for v in itertools.product((-1, 1), repeat=n)]
    return max(x @ A @ y for x in signs for y in signs)


def an_entries(n):
    return [[0.0 if i == j else 1.0 / (i - j) for j in range(n)] for i in range(n)]


def harmonic_fraction(k):
    from fractions import Fraction
    return sum((Fraction(1, i) for i in range(1, k + 1)), Fraction(0))
