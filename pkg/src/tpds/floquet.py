"""Monodromy analysis of periodic cooperative tridiagonal systems."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BandViolation, FloquetViolation, LeadingCoefficientZero, NotPeriodic
from .integrate import simulate_linear, transition_matrix
from .signvar import s_minus, s_plus

EIG_IMAG_TOL = 1e-8
EIG_ZERO_TOL = 1e-8


@dataclass
class FloquetData:
    period: float
    monodromy: np.ndarray
    multipliers: np.ndarray  # strictly decreasing, positive
    eigvecs: np.ndarray  # columns, unit norm, first nonzero entry positive
    sign_counts: list


def floquet(sys, step=None):
    """Monodromy matrix Phi(T, 0) and its ordered spectral data.

    Multipliers must come out real, positive and strictly separated, and
    eigenvector k must carry exactly k-1 sign changes; anything else raises
    FloquetViolation (misclassified system or failed numerics).
    """
    if sys.period is None:
        raise NotPeriodic("system carries no period")
    T = sys.period
    B = transition_matrix(sys, 0.0, T, step).phi
    vals, vecs = np.linalg.eig(B)
    radius = np.abs(vals).max()
    if np.any(np.abs(vals.imag) > EIG_IMAG_TOL * radius):
        raise FloquetViolation("complex characteristic multiplier beyond tolerance")
    vals = vals.real
    order = np.argsort(-vals)
    vals = vals[order]
    vecs = vecs[:, order].real
    if np.any(vals <= 0):
        raise FloquetViolation("nonpositive characteristic multiplier")
    if np.any(np.diff(vals) >= -EIG_IMAG_TOL * radius):
        raise FloquetViolation("multipliers not strictly decreasing")
    counts = []
    for k in range(len(vals)):
        v = vecs[:, k]
        v = v / np.linalg.norm(v)
        lead = v[np.abs(v) > EIG_ZERO_TOL]
        if lead.size and lead[0] < 0:
            v = -v
        vecs[:, k] = v
        sm = s_minus(v, EIG_ZERO_TOL)
        sp = s_plus(v, EIG_ZERO_TOL)
        if sm != k or sp != k:
            raise FloquetViolation(
                f"eigenvector {k + 1} sign counts ({sm}, {sp}) != {k}"
            )
        counts.append(k)
    return FloquetData(T, B, vals, vecs, counts)


def floquet_mode_evolution(sys, fd, coeffs, horizon, samples_per_period=200, step=None):
    """Evolution of z(0) = sum_k c_k p^k with the sign-count band enforced.

    `coeffs` maps 1-based mode numbers to coefficients (dict) or is a dense
    sequence c_1..c_n. With i [j] the lowest [highest] mode carrying a
    nonzero coefficient, the sampled count must stay in [i-1, j-1] (at most
    j-i exceptional clusters) and settle at i-1 over the last 10% of the
    horizon.
    """
    n = fd.monodromy.shape[0]
    if isinstance(coeffs, dict):
        cvec = np.zeros(n)
        for k, c in coeffs.items():
            cvec[k - 1] = c
    else:
        cvec = np.zeros(n)
        cvec[: len(coeffs)] = coeffs
    nz = np.flatnonzero(cvec)
    if nz.size == 0:
        raise LeadingCoefficientZero("all coefficients are zero")
    i, j = nz[0] + 1, nz[-1] + 1
    if cvec[i - 1] == 0:
        raise LeadingCoefficientZero("leading coefficient is zero")
    z0 = fd.eigvecs @ cvec
    nsamples = max(2, int(samples_per_period * horizon / fd.period))
    grid = np.linspace(0.0, horizon, nsamples)
    traj = simulate_linear(sys, z0, grid, step=step, tpds=True)
    lo, hi = i - 1, j - 1
    band_bad = [
        float(t)
        for t, ok, sm, sp in zip(grid, traj.in_V_flags, traj.sigma_minus, traj.sigma_plus)
        if ok and not (lo <= sm <= hi)
    ]
    if band_bad:
        raise BandViolation(f"sign count left the band [{lo}, {hi}] at t={band_bad[:5]}")
    if len(traj.exceptional_times) > j - i:
        raise BandViolation(
            f"{len(traj.exceptional_times)} exceptional clusters exceed j-i={j - i}"
        )
    tail = grid >= 0.9 * horizon
    tail_counts = {sm for sm, sel, ok in zip(traj.sigma_minus, tail, traj.in_V_flags) if sel and ok}
    if tail_counts != {lo}:
        raise BandViolation(f"terminal sign count {tail_counts} != {{{lo}}}")
    return traj
