"""Seeded random generators for test matrices and systems.

TP/TN matrices are built as products of elementary bidiagonal factors with
positive (or nonnegative) parameters in full elimination order, which is the
structured way to hit the whole class without rejection sampling.
"""

from __future__ import annotations

import numpy as np

from .systems import Segment, TimeVaryingSystem


def _eb_lower(n, i, m):
    L = np.eye(n)
    L[i, i - 1] = m
    return L


def _eb_upper(n, i, m):
    U = np.eye(n)
    U[i - 1, i] = m
    return U


def _eb_product(n, lower_params, diag, upper_params):
    """Full-elimination-order product: lower factors, diagonal, upper factors.

    Parameter lists follow the column-by-column, bottom-up elimination order
    produced by the bidiagonal factorization, reversed for reconstruction.
    """
    A = np.eye(n)
    k = 0
    for j in range(n - 1):
        for i in range(n - 1, j, -1):
            A = A @ _eb_lower(n, i, lower_params[k])
            k += 1
    A = A @ np.diag(diag)
    k = 0
    for j in range(n - 1):
        for i in range(n - 1, j, -1):
            A = A @ _eb_upper(n, i, upper_params[k])
            k += 1
    return A


def random_tp(n, rng=None, low=0.3, high=2.0):
    """Random totally positive matrix (all EB parameters strictly positive)."""
    rng = np.random.default_rng(rng)
    m = n * (n - 1) // 2
    return _eb_product(
        n,
        rng.uniform(low, high, m),
        rng.uniform(low, high, n),
        rng.uniform(low, high, m),
    )


def random_tn(n, rng=None, high=2.0, zero_frac=0.4):
    """Random totally nonnegative matrix (some EB parameters zeroed out)."""
    rng = np.random.default_rng(rng)
    m = n * (n - 1) // 2

    def params(size):
        p = rng.uniform(0.0, high, size)
        p[rng.random(size) < zero_frac] = 0.0
        return p

    return _eb_product(n, params(m), rng.uniform(0.2, high, n), params(m))


def random_nonsingular(n, rng=None, scale=1.0, cond_cap=1e6):
    """Random dense nonsingular matrix with a modest condition number."""
    rng = np.random.default_rng(rng)
    while True:
        A = rng.standard_normal((n, n)) * scale
        if np.linalg.cond(A) < cond_cap:
            return A


def random_tridiagonal_cooperative(n, rng=None, delta=0.5):
    """Random constant matrix in M+ (off-diagonals at least delta)."""
    rng = np.random.default_rng(rng)
    A = np.diag(rng.uniform(-1.0, 1.0, n))
    for i in range(n - 1):
        A[i + 1, i] = rng.uniform(delta, delta + 1.0)
        A[i, i + 1] = rng.uniform(delta, delta + 1.0)
    return A


def random_tpds_system(n, rng=None, interval=(0.0, 2 * np.pi), delta=0.5):
    """Random periodic time-varying system with A(t) in M+ throughout.

    Each entry on the three central diagonals is c0 + c1 sin t + c2 cos t,
    with the off-diagonal constants large enough that the entry stays at or
    above delta for all t.
    """
    from . import exprlang

    rng = np.random.default_rng(rng)
    entries = [[0.0] * n for _ in range(n)]

    def smooth_entry(lo):
        c1 = rng.uniform(-0.5, 0.5)
        c2 = rng.uniform(-0.5, 0.5)
        amp = abs(c1) + abs(c2)
        c0 = rng.uniform(lo + amp, lo + amp + 1.0)
        return exprlang.parse(f"{c0} + {c1} * sin(t) + {c2} * cos(t)")

    for i in range(n):
        entries[i][i] = smooth_entry(-2.0)
        if i + 1 < n:
            entries[i][i + 1] = smooth_entry(delta)
            entries[i + 1][i] = smooth_entry(delta)
    a, b = interval
    return TimeVaryingSystem(
        n=n,
        interval=(float(a), float(b)),
        segments=[Segment(float(a), float(b), entries)],
        period=2 * np.pi if (b - a) >= 2 * np.pi - 1e-12 else None,
    )
