"""Minor enumeration and classification of TN / TP / SSR / oscillatory matrices.

Index tuples addressing minors are 1-based and strictly increasing, matching
the usual mathematical convention A(alpha|beta).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import (
    DimensionMismatch,
    NotTN,
    NotTridiagonal,
    PivotBreakdown,
    RankDeficient,
    SizeLimitExceeded,
    SpectralViolation,
    ZeroVector,
)
from .signvar import s_minus, s_plus

EXHAUSTIVE_LIMIT = 10
MINOR_REL_TOL = 1e-10


def minor(A, alpha, beta):
    """Determinant of the submatrix selected by 1-based index tuples."""
    A = np.asarray(A, dtype=float)
    alpha = tuple(alpha)
    beta = tuple(beta)
    if len(alpha) != len(beta) or not alpha:
        raise DimensionMismatch("index tuples must be nonempty and equally long")
    for idx, bound in ((alpha, A.shape[0]), (beta, A.shape[1])):
        if list(idx) != sorted(set(idx)) or idx[0] < 1 or idx[-1] > bound:
            raise DimensionMismatch(f"bad index tuple {idx}")
    sub = A[np.ix_([i - 1 for i in alpha], [j - 1 for j in beta])]
    return _det(sub)


def _det(sub):
    n = sub.shape[0]
    if n == 1:
        return float(sub[0, 0])
    if n == 2:
        return float(sub[0, 0] * sub[1, 1] - sub[0, 1] * sub[1, 0])
    if n == 3:
        return float(
            sub[0, 0] * (sub[1, 1] * sub[2, 2] - sub[1, 2] * sub[2, 1])
            - sub[0, 1] * (sub[1, 0] * sub[2, 2] - sub[1, 2] * sub[2, 0])
            + sub[0, 2] * (sub[1, 0] * sub[2, 1] - sub[1, 1] * sub[2, 0])
        )
    return float(np.linalg.det(sub))


def _minor_zero_threshold(sub):
    # scale-aware cutoff: relative to the product of row max-norms
    scale = 1.0
    for row in np.abs(sub):
        scale *= row.max()
    return MINOR_REL_TOL * scale


@dataclass
class Classification:
    is_TN: bool
    is_TP: bool
    is_SSR: bool
    is_oscillatory: bool
    witness: tuple | None = None  # (alpha, beta, value) of first TN violation


def _irreducible(A, tol=0.0):
    """Strong connectivity of the directed graph of the nonzero pattern."""
    n = A.shape[0]
    adj = np.abs(A) > tol
    np.fill_diagonal(adj, True)
    reach = adj.copy()
    for _ in range(n):
        reach = reach | (reach @ adj)
    return bool(reach.all())


def classify(A, cross_check=True):
    """Exhaustive TN/TP/SSR/oscillatory classification.

    All sum_k C(n,k)^2 minors are enumerated; refuses n > 10. When the
    matrix comes out oscillatory, A^(n-1) is re-classified and must be TP.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch("classify expects a square matrix")
    n = A.shape[0]
    if n > EXHAUSTIVE_LIMIT:
        raise SizeLimitExceeded(f"exhaustive enumeration capped at n={EXHAUSTIVE_LIMIT}")

    is_tn = True
    is_tp = True
    is_ssr = True
    witness = None
    full_det_nonzero = False
    idx = list(range(n))
    for k in range(1, n + 1):
        order_sign = 0
        for rows in combinations(idx, k):
            for cols in combinations(idx, k):
                sub = A[np.ix_(rows, cols)]
                d = _det(sub)
                thr = _minor_zero_threshold(sub)
                if d < -thr and witness is None:
                    witness = (
                        tuple(i + 1 for i in rows),
                        tuple(j + 1 for j in cols),
                        d,
                    )
                if d < -thr:
                    is_tn = False
                if d <= thr:
                    is_tp = False
                if abs(d) <= thr:
                    is_ssr = False
                elif order_sign == 0:
                    order_sign = 1 if d > 0 else -1
                elif (d > 0) != (order_sign > 0):
                    is_ssr = False
                if k == n and abs(d) > thr:
                    full_det_nonzero = True

    is_osc = is_tn and full_det_nonzero and _irreducible(A)
    result = Classification(is_tn, is_tp, is_ssr, is_osc, witness)
    if cross_check and is_osc and n >= 2:
        # the (n-1) power of an oscillatory matrix is TP; thresholds do not
        # scale consistently from A to its power, so assert the robust
        # direction only: no significantly negative minor in the power
        power = np.linalg.matrix_power(A, n - 1)
        if not classify(power, cross_check=False).is_TN:
            raise SpectralViolation(
                "oscillatory matrix whose (n-1) power has a negative minor"
            )
    return result


def _tridiagonal_parts(A):
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if A.shape[0] != A.shape[1]:
        raise NotTridiagonal("matrix is not square")
    mask = np.ones_like(A, dtype=bool)
    for i in range(n):
        for j in range(max(0, i - 1), min(n, i + 2)):
            mask[i, j] = False
    if np.any(A[mask] != 0):
        raise NotTridiagonal("nonzero entry outside the three central diagonals")
    a = np.diag(A)
    b = np.diag(A, 1)
    c = np.diag(A, -1)
    return a, b, c


def is_dominant_tridiagonal_TN(A):
    """Diagonal-dominance test a_i >= b_i + c_{i-1} for tridiagonal matrices.

    A true verdict is cross-validated against the exhaustive classifier.
    """
    a, b, c = _tridiagonal_parts(A)
    n = len(a)
    if np.any(b < 0) or np.any(c < 0):
        return False
    for i in range(n):
        bi = b[i] if i < n - 1 else 0.0
        ci = c[i - 1] if i > 0 else 0.0
        if a[i] < bi + ci:
            return False
    if n <= 7:
        assert classify(A).is_TN, "dominance held but exhaustive TN check failed"
    return True


@dataclass
class GEBFactorization:
    factors: list = field(default_factory=list)
    residual_error: float = 0.0

    def product(self):
        if not self.factors:
            raise ValueError("empty factorization")
        P = self.factors[0]
        for F in self.factors[1:]:
            P = P @ F
        return P


def is_geb(F, tol=1e-12):
    """Structural check: diagonal plus at most one first-off-diagonal entry,
    all of them nonnegative."""
    F = np.asarray(F, dtype=float)
    n = F.shape[0]
    off = F.copy()
    np.fill_diagonal(off, 0.0)
    sub = np.diag(off, -1)
    sup = np.diag(off, 1)
    outside = np.abs(off).sum() - np.abs(sub).sum() - np.abs(sup).sum()
    if outside > tol:
        return False
    if np.count_nonzero(np.abs(sub) > tol) + np.count_nonzero(np.abs(sup) > tol) > 1:
        return False
    return bool(np.all(np.diag(F) >= -tol) and np.all(sub >= -tol) and np.all(sup >= -tol))


def geb_factorize(A, pivot_tol=1e-12):
    """Neville-elimination factorization of a TN matrix into TN GEB factors.

    Returns lower bidiagonal factors, then a diagonal factor, then upper
    bidiagonal factors, whose ordered product reconstructs the input. No
    pivoting is performed; a zero pivot above a nonzero entry is a breakdown.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if not classify(A).is_TN:
        raise NotTN("geb_factorize requires a TN input")

    def neville_lower(M):
        # Returns factors [L_i(m), ...] and the reduced matrix R with
        # M = factors[0] @ factors[1] @ ... @ R, eliminating below-diagonal
        # entries column by column, bottom-up.
        M = M.copy()
        factors = []
        for j in range(n - 1):
            for i in range(n - 1, j, -1):
                if abs(M[i, j]) <= pivot_tol:
                    M[i, j] = 0.0
                    continue
                if abs(M[i - 1, j]) <= pivot_tol:
                    raise PivotBreakdown(
                        f"zero pivot above nonzero entry at row {i + 1}, column {j + 1}"
                    )
                m = M[i, j] / M[i - 1, j]
                if m < -pivot_tol:
                    raise PivotBreakdown(f"negative multiplier {m} (input not TN?)")
                M[i, :] -= m * M[i - 1, :]
                M[i, j] = 0.0
                L = np.eye(n)
                L[i, i - 1] = max(m, 0.0)
                factors.append(L)
        return factors, M

    lower, U = neville_lower(A)
    upper_t, Rt = neville_lower(U.T)
    diag = np.diag(np.diag(Rt.copy()))
    upper = [F.T for F in reversed(upper_t)]
    factors = lower + [diag] + upper

    P = np.eye(n)
    for F in factors:
        P = P @ F
    denom = max(np.linalg.norm(A), 1e-300)
    residual = float(np.linalg.norm(P - A) / denom)
    fact = GEBFactorization(factors, residual)
    for F in factors:
        if not is_geb(F):
            raise PivotBreakdown("produced a non-GEB factor")
    return fact


def oscillatory_spectrum(A, imag_tol=1e-8, zero_tol=1e-8):
    """Eigen-decomposition of an oscillatory matrix with structure checks.

    Eigenvalues must come out real, positive and distinct; eigenvector k
    (unit norm, first nonzero entry positive) must show exactly k-1 sign
    changes under both counts.
    """
    A = np.asarray(A, dtype=float)
    if not classify(A).is_oscillatory:
        raise SpectralViolation("input did not classify as oscillatory")
    vals, vecs = np.linalg.eig(A)
    out = []
    scale = np.abs(vals).max()
    if np.any(np.abs(vals.imag) > imag_tol * scale):
        raise SpectralViolation("complex eigenvalue beyond tolerance")
    vals = vals.real
    order = np.argsort(-vals)
    vals = vals[order]
    vecs = vecs[:, order].real
    n = len(vals)
    if np.any(vals <= 0):
        raise SpectralViolation("nonpositive eigenvalue")
    if np.any(np.diff(vals) >= -imag_tol * scale):
        raise SpectralViolation("eigenvalues not strictly decreasing")
    for k in range(n):
        v = vecs[:, k]
        v = v / np.linalg.norm(v)
        lead = v[np.abs(v) > zero_tol]
        if lead.size and lead[0] < 0:
            v = -v
        sm = s_minus(v, zero_tol)
        sp = s_plus(v, zero_tol)
        if sm != k or sp != k:
            raise SpectralViolation(
                f"eigenvector {k + 1} has sign counts ({sm}, {sp}), expected {k}"
            )
        out.append((float(vals[k]), v, k))
    return out


def svdp_check(A, x, zero_tol=None):
    """Evaluate the variation-diminishing inequality s+(Ax) <= s-(x)."""
    A = np.asarray(A, dtype=float)
    x = np.asarray(x, dtype=float)
    if not np.any(x != 0):
        raise ZeroVector("svdp_check requires a nonzero vector")
    if A.shape[1] != x.shape[0]:
        raise DimensionMismatch("incompatible shapes")
    sin = s_minus(x, zero_tol)
    sout = s_plus(A @ x, zero_tol)
    return sin, sout, sout <= sin


def column_set_equivalence(U, trials=200, rng=None, zero_tol=None):
    """Compare the common-sign-minors condition with the sampled s+ bound.

    For U in R^{n x m} (m < n, full column rank) checks (a) whether all
    order-m minors are nonzero with one sign and (b) whether s+(Uc) <= m-1
    for `trials` random nonzero coefficient vectors.
    """
    U = np.asarray(U, dtype=float)
    n, m = U.shape
    if m >= n:
        raise DimensionMismatch("need strictly fewer columns than rows")
    if np.linalg.matrix_rank(U) < m:
        raise RankDeficient("columns are linearly dependent")
    rng = np.random.default_rng(rng)

    same_sign = True
    ref = 0
    for rows in combinations(range(n), m):
        sub = U[list(rows), :]
        d = _det(sub)
        thr = _minor_zero_threshold(sub)
        if abs(d) <= thr:
            same_sign = False
            break
        s = 1 if d > 0 else -1
        if ref == 0:
            ref = s
        elif s != ref:
            same_sign = False
            break

    bound_holds = True
    for _ in range(trials):
        c = rng.standard_normal(m)
        while not np.any(c):
            c = rng.standard_normal(m)
        if s_plus(U @ c, zero_tol) > m - 1:
            bound_holds = False
            break
    return same_sign, bound_holds


def strong_svdp_holds(A, rng=None, vectors_per_pattern=20, zero_tol=None):
    """Randomized verification of s+(Ax) <= s-(x) over all sign patterns.

    Enumerates every nonzero sign pattern in {-1,0,+1}^n and draws random
    magnitudes for the nonzero slots. Returns False as soon as a violating
    vector is found.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[1]
    rng = np.random.default_rng(rng)
    patterns = np.stack(
        np.meshgrid(*([np.array([-1, 0, 1])] * n), indexing="ij"), axis=-1
    ).reshape(-1, n)
    for pat in patterns:
        if not np.any(pat):
            continue
        for _ in range(vectors_per_pattern):
            x = pat * rng.uniform(0.1, 2.0, size=n)
            _, _, ok = svdp_check(A, x, zero_tol)
            if not ok:
                return False
    return True
