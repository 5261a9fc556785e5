"""Fixed-step RK4 transition matrices and sign-variation tracking.

Steps land exactly on segment boundaries so that discontinuous (switched)
coefficient matrices are integrated segment by segment; determinants are
cross-checked against the exponential of the integrated trace.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .compound import add_compound, mult_compound
from .errors import (
    IntegrationSuspect,
    MonotonicityViolation,
    NoApplicablePair,
    OutOfInterval,
    TrivialSolution,
)
from .signvar import in_V, s_minus, s_plus

DET_REL_TOL = 1e-6
TRAJ_ZERO_REL_TOL = 1e-8
CLUSTER_GAP = 3


def default_step(sys):
    a, b = sys.interval
    return 1e-3 * (b - a)


def _rk4_span(f, y, t0, t1, step):
    """Integrate y' = f(t, y) over [t0, t1] with steps of at most `step`."""
    length = t1 - t0
    if length <= 0:
        return y
    nsteps = max(1, math.ceil(length / step - 1e-12))
    h = length / nsteps
    t = t0
    for _ in range(nsteps):
        k1 = f(t, y)
        k2 = f(t + h / 2, y + (h / 2) * k1)
        k3 = f(t + h / 2, y + (h / 2) * k2)
        k4 = f(t + h, y + h * k3)
        y = y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        t += h
    return y


def _spans(sys, t0, t1):
    """Split [t0, t1] at interior segment boundaries, tagged by segment index."""
    cuts = [t0] + sys.boundaries_between(t0, t1) + [t1]
    spans = []
    for lo, hi in zip(cuts, cuts[1:]):
        if hi - lo <= 0:
            continue
        seg = sys.segment_index(0.5 * (lo + hi))
        spans.append((lo, hi, seg))
    return spans


def _integrate_piecewise(sys, y0, t0, t1, step, matfun):
    y = y0
    for lo, hi, seg in _spans(sys, t0, t1):
        A = lambda t: matfun(t, seg)
        y = _rk4_span(lambda t, v: A(t) @ v, y, lo, hi, step)
    return y


def _trace_integral(sys, t0, t1, step):
    """Composite-Simpson integral of trace(A(s)) over [t0, t1]."""
    total = 0.0
    for lo, hi, seg in _spans(sys, t0, t1):
        npanels = max(2, 2 * math.ceil((hi - lo) / step))
        ts = np.linspace(lo, hi, npanels + 1)
        vals = np.array([np.trace(sys.matrix_at(t, segment=seg)) for t in ts])
        h = (hi - lo) / npanels
        total += h / 3 * (
            vals[0] + vals[-1] + 4 * vals[1:-1:2].sum() + 2 * vals[2:-1:2].sum()
        )
    return total


@dataclass
class TransitionRecord:
    t0: float
    t: float
    phi: np.ndarray
    det_phi: float
    det_predicted: float
    suspect: bool = False


def transition_matrix(sys, t0, t, step=None):
    """Transition matrix Phi(t, t0) of z' = A(s) z by fixed-step RK4.

    The determinant is compared with exp of the integrated trace
    (Abel-Jacobi-Liouville); a relative mismatch beyond 1e-6 marks the
    record as suspect.
    """
    a, b = sys.interval
    if not (a <= t0 <= t <= b):
        raise OutOfInterval(f"need a <= t0 <= t <= b, got t0={t0}, t={t}")
    if step is None:
        step = default_step(sys)
    phi = _integrate_piecewise(
        sys, np.eye(sys.n), t0, t, step, lambda s, seg: sys.matrix_at(s, segment=seg)
    )
    det_phi = float(np.linalg.det(phi))
    det_pred = float(np.exp(_trace_integral(sys, t0, t, step)))
    suspect = abs(det_phi - det_pred) > DET_REL_TOL * abs(det_pred)
    return TransitionRecord(t0, t, phi, det_phi, det_pred, suspect)


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # shape (len(times), n)
    sigma_minus: list = field(default_factory=list)
    sigma_plus: list = field(default_factory=list)
    in_V_flags: list = field(default_factory=list)
    exceptional_times: list = field(default_factory=list)

    @property
    def n(self):
        return self.states.shape[1]

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(
                ["t"]
                + [f"z{i + 1}" for i in range(self.n)]
                + ["s_minus", "s_plus", "in_V"]
            )
            for k, t in enumerate(self.times):
                w.writerow(
                    [f"{t:.10g}"]
                    + [f"{v:.12g}" for v in self.states[k]]
                    + [self.sigma_minus[k], self.sigma_plus[k], int(self.in_V_flags[k])]
                )


def _annotate(times, states):
    """Per-sample sign counts with a scale-aware zero tolerance."""
    sm, sp, flags = [], [], []
    running = 0.0
    for z in states:
        running = max(running, float(np.max(np.abs(z))))
        tol = TRAJ_ZERO_REL_TOL * running
        sm.append(s_minus(z, tol))
        sp.append(s_plus(z, tol))
        flags.append(sm[-1] == sp[-1])
    return sm, sp, flags


def _exceptional_clusters(times, flags):
    """Merge runs of non-V samples (gaps < CLUSTER_GAP samples) into clusters."""
    clusters = []
    last_bad = None
    for k, ok in enumerate(flags):
        if ok:
            continue
        if last_bad is not None and k - last_bad < CLUSTER_GAP:
            last_bad = k
            continue
        clusters.append(times[k])
        last_bad = k
    return clusters


def simulate_linear(sys, z0, grid, step=None, tpds=False):
    """Integrate z' = A(t) z on the given sample grid with sign bookkeeping.

    With tpds=True the monotonicity contract is enforced: s_plus and s_minus
    must be non-increasing sample to sample and at most n-1 exceptional
    clusters of non-V samples may occur.
    """
    z0 = np.asarray(z0, dtype=float)
    if not np.any(z0):
        raise TrivialSolution("z0 = 0 yields the trivial solution")
    grid = np.asarray(grid, dtype=float)
    if step is None:
        step = default_step(sys)
    states = [z0]
    z = z0
    for t_prev, t_next in zip(grid, grid[1:]):
        z = _integrate_piecewise(
            sys, z, t_prev, t_next, step, lambda s, seg: sys.matrix_at(s, segment=seg)
        )
        states.append(z)
    states = np.array(states)
    sm, sp, flags = _annotate(grid, states)
    clusters = _exceptional_clusters(grid, flags)
    traj = Trajectory(grid, states, sm, sp, flags, clusters)
    if tpds:
        bad = [
            float(grid[k])
            for k in range(1, len(grid))
            if sp[k] > sp[k - 1] or sm[k] > sm[k - 1]
        ]
        if bad:
            raise MonotonicityViolation("sign counts increased along a TPDS run", bad)
        if len(clusters) > sys.n - 1:
            raise MonotonicityViolation(
                f"{len(clusters)} exceptional clusters exceed n-1", clusters
            )
    return traj


def compound_transition(sys, p, t0, t, step=None, check_tol=1e-5):
    """p-th compound of the transition matrix via the compound dynamics.

    Integrates the C(n,p)-dimensional system driven by the additive compound
    of A(s) and cross-asserts against the multiplicative compound of the
    directly integrated transition matrix.
    """
    if step is None:
        step = default_step(sys)
    m = len(mult_compound(np.eye(sys.n), p).index_map)
    Y = _integrate_piecewise(
        sys,
        np.eye(m),
        t0,
        t,
        step,
        lambda s, seg: add_compound(sys.matrix_at(s, segment=seg), p).entries,
    )
    direct = mult_compound(transition_matrix(sys, t0, t, step).phi, p).entries
    denom = max(np.linalg.norm(direct), 1e-300)
    rel = np.linalg.norm(Y - direct) / denom
    if rel > check_tol:
        raise IntegrationSuspect(
            f"compound-dynamics route deviates from minors route by {rel:.3g}"
        )
    return Y


def tn_weak_svdp_check(traj):
    """Strict s_plus drop after the first coordinate leaves zero.

    Scans for samples r with z1(r) ~ 0 followed by the next sample s with
    z1(s) != 0 and asserts s_plus(z(s)) <= s_plus(z(r)) - 1 for every pair.
    """
    times = traj.times
    states = traj.states
    running = 0.0
    pairs = []
    zero_at = None
    for k, z in enumerate(states):
        running = max(running, float(np.max(np.abs(z))))
        tol = TRAJ_ZERO_REL_TOL * running
        if abs(z[0]) <= tol:
            if zero_at is None:
                zero_at = k
        elif zero_at is not None:
            pairs.append((zero_at, k))
            zero_at = None
    if not pairs:
        raise NoApplicablePair("first coordinate never returned from zero")
    for r, s in pairs:
        if traj.sigma_plus[s] > traj.sigma_plus[r] - 1:
            raise MonotonicityViolation(
                "weak variation-diminishing drop failed",
                [float(times[r]), float(times[s])],
            )
    return True
