"""Multiplicative and additive compound matrices.

Rows/columns of a p-th compound are labeled by the p-element subsets of
{1..n} in lexicographic order; the label list is exposed so callers can
address entries as (alpha|beta).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import DimensionMismatch, OrderOutOfRange
from .totalpos import _det


def index_subsets(n, p):
    """Lexicographically ordered p-subsets of {1..n} (1-based tuples)."""
    return [tuple(i + 1 for i in c) for c in combinations(range(n), p)]


@dataclass
class CompoundMatrix:
    base_dim: int
    order: int
    entries: np.ndarray
    index_map: list

    def entry(self, alpha, beta):
        i = self.index_map.index(tuple(alpha))
        j = self.index_map.index(tuple(beta))
        return self.entries[i, j]


def _check_square(A):
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch("compound requires a square matrix")
    return A


def mult_compound(A, p):
    """Matrix of all p x p minors of A, lexicographically ordered."""
    A = _check_square(A)
    n = A.shape[0]
    if not 1 <= p <= n:
        raise OrderOutOfRange(f"order {p} outside 1..{n}")
    labels = index_subsets(n, p)
    m = len(labels)
    out = np.empty((m, m))
    for i, alpha in enumerate(labels):
        ra = [a - 1 for a in alpha]
        for j, beta in enumerate(labels):
            out[i, j] = _det(A[np.ix_(ra, [b - 1 for b in beta])])
    return CompoundMatrix(n, p, out, labels)


def add_compound(A, p):
    """Derivative of the p-th multiplicative compound at the identity.

    Entry (alpha|beta) is the trace over alpha when alpha == beta, the
    signed entry (-1)^(l+m) a_{i_l j_m} when the tuples differ in exactly
    one index, and zero otherwise.
    """
    A = _check_square(A)
    n = A.shape[0]
    if not 1 <= p <= n:
        raise OrderOutOfRange(f"order {p} outside 1..{n}")
    labels = index_subsets(n, p)
    m = len(labels)
    out = np.zeros((m, m))
    for i, alpha in enumerate(labels):
        for j, beta in enumerate(labels):
            if alpha == beta:
                out[i, j] = sum(A[a - 1, a - 1] for a in alpha)
                continue
            only_a = [k for k, a in enumerate(alpha) if a not in beta]
            only_b = [k for k, b in enumerate(beta) if b not in alpha]
            if len(only_a) == 1 and len(only_b) == 1:
                l, mm = only_a[0], only_b[0]
                out[i, j] = (-1) ** (l + mm) * A[alpha[l] - 1, beta[mm] - 1]
    return CompoundMatrix(n, p, out, labels)


def is_metzler(A, tol=0.0):
    A = np.asarray(A, dtype=float)
    off = A.copy()
    np.fill_diagonal(off, np.inf)
    return bool(np.all(off >= -tol))


def metzler_compound_profile(A):
    """Metzler status of every additive compound of A.

    Also enforces the propagation rule: Metzler at orders 1 and 2 forces
    Metzler at every order.
    """
    A = _check_square(A)
    n = A.shape[0]
    profile = [(p, is_metzler(add_compound(A, p).entries)) for p in range(1, n + 1)]
    status = dict(profile)
    if status.get(1) and status.get(2, True):
        assert all(ok for _, ok in profile), "Metzler propagation rule violated"
    return profile
