"""Nonlinear simulation, eventual monotonicity, and Poincare-map analysis."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import exprlang
from .errors import (
    AssumptionViolated,
    LeftDomain,
    NoConvergence,
    NoMonotoneTail,
    NotPeriodic,
    SpecFileError,
)
from .integrate import Trajectory, _annotate, _exceptional_clusters, _rk4_span
from .systems import in_M_plus

FD_JAC_REL_STEP = 1e-6
GAUSS_LEGENDRE_POINTS = 16


@dataclass
class NonlinearSystem:
    n: int
    rhs: list  # n exprlang ASTs over t, x1..xn, u
    input: object = None  # optional expr over t
    jacobian: list | None = None  # optional n x n ASTs; finite differences otherwise
    period: float | None = None
    domain_box: list | None = None  # [(lo, hi)] per coordinate
    name: str = ""

    def __post_init__(self):
        if len(self.rhs) != self.n:
            raise SpecFileError("rhs dimension mismatch")
        if self.jacobian is not None and (
            len(self.jacobian) != self.n or any(len(r) != self.n for r in self.jacobian)
        ):
            raise SpecFileError("jacobian dimension mismatch")
        if self.domain_box is not None and len(self.domain_box) != self.n:
            raise SpecFileError("domain box dimension mismatch")

    @property
    def uses_finite_difference_jacobian(self):
        return self.jacobian is None

    def _compiled(self):
        # compiled forms are cached; integrator hot loops go through them
        if not hasattr(self, "_rhs_fns"):
            self._rhs_fns = [exprlang.compile_fn(e) for e in self.rhs]
            self._input_fn = exprlang.compile_fn(self.input) if self.input is not None else None
            self._jac_fns = (
                [[exprlang.compile_fn(e) for e in row] for row in self.jacobian]
                if self.jacobian is not None
                else None
            )
        return self._rhs_fns, self._input_fn, self._jac_fns

    def input_at(self, t):
        _, ufn, _ = self._compiled()
        if ufn is None:
            return None
        return ufn(t=t)

    def f(self, t, x):
        fns, ufn, _ = self._compiled()
        u = ufn(t=t) if ufn is not None else None
        return np.array([fn(t, x, u) for fn in fns])

    def jac(self, t, x):
        _, ufn, jfns = self._compiled()
        u = ufn(t=t) if ufn is not None else None
        if jfns is not None:
            J = np.empty((self.n, self.n))
            for i in range(self.n):
                for j in range(self.n):
                    J[i, j] = jfns[i][j](t, x, u)
            return J
        # central differences, scale-aware step
        J = np.empty((self.n, self.n))
        for j in range(self.n):
            h = FD_JAC_REL_STEP * max(1.0, abs(x[j]))
            xp = np.array(x, dtype=float)
            xm = np.array(x, dtype=float)
            xp[j] += h
            xm[j] -= h
            J[:, j] = (self.f(t, xp) - self.f(t, xm)) / (2 * h)
        return J

    def in_box(self, x):
        if self.domain_box is None:
            return True
        return all(lo - 1e-12 <= v <= hi + 1e-12 for v, (lo, hi) in zip(x, self.domain_box))


@dataclass
class NonlinearRun:
    state: Trajectory
    derivative: Trajectory
    jacobian_in_M_plus: bool


def simulate_nonlinear(sys, x0, grid, step=None):
    """Integrate x' = f(t, x) and track sign variation of z(t) = f(t, x(t)).

    Jacobian samples are tested for M+ membership along the run; when they
    leave the class the sign-count assertions do not apply and the flag in
    the result says so.
    """
    x0 = np.asarray(x0, dtype=float)
    if not sys.in_box(x0):
        raise LeftDomain("initial condition outside the domain box", grid[0])
    grid = np.asarray(grid, dtype=float)
    if step is None:
        step = 1e-3 * (grid[-1] - grid[0])
    xs = [x0]
    zs = [sys.f(grid[0], x0)]
    jac_ok = in_M_plus(sys.jac(grid[0], x0))
    x = x0
    for t0, t1 in zip(grid, grid[1:]):
        x = _rk4_span(sys.f, x, t0, t1, step)
        if not sys.in_box(x):
            raise LeftDomain("trajectory left the domain box", float(t1))
        xs.append(x)
        zs.append(sys.f(t1, x))
        jac_ok = jac_ok and in_M_plus(sys.jac(t1, x))
    xs = np.array(xs)
    zs = np.array(zs)
    sm, sp, flags = _annotate(grid, zs)
    clusters = _exceptional_clusters(grid, flags)
    state = Trajectory(grid, xs, *_annotate(grid, xs))
    deriv = Trajectory(grid, zs, sm, sp, flags, clusters)
    return NonlinearRun(state, deriv, jac_ok)


def line_integral_jacobian(sys, t, a, b):
    """Gauss-Legendre average of J(t, .) along the segment from b to a."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    nodes, weights = np.polynomial.legendre.leggauss(GAUSS_LEGENDRE_POINTS)
    r = 0.5 * (nodes + 1.0)  # map to [0, 1]
    w = 0.5 * weights
    J = np.zeros((sys.n, sys.n))
    for ri, wi in zip(r, w):
        J += wi * sys.jac(t, ri * a + (1 - ri) * b)
    return J


def eventual_monotonicity(sys, a0, b0, horizon, samples=500, step=None, r_grid=9):
    """Last time after which x1(t, a0) - x1(t, b0) keeps one strict sign.

    Requires the line-integral Jacobian between the two solutions to stay in
    M+ on a (t, r) sample grid; otherwise the underlying theory does not
    apply and AssumptionViolated is raised.
    """
    a0 = np.asarray(a0, dtype=float)
    b0 = np.asarray(b0, dtype=float)
    if np.array_equal(a0, b0):
        raise ValueError("initial conditions must differ")
    grid = np.linspace(0.0, horizon, samples)
    run_a = simulate_nonlinear(sys, a0, grid, step)
    run_b = simulate_nonlinear(sys, b0, grid, step)

    for k in range(0, samples, max(1, samples // 25)):
        t = grid[k]
        xa, xb = run_a.state.states[k], run_b.state.states[k]
        for r in np.linspace(0.0, 1.0, r_grid):
            J = sys.jac(t, r * xa + (1 - r) * xb)
            if not in_M_plus(J):
                raise AssumptionViolated(
                    f"Jacobian leaves M+ at t={t:.4g}, r={r:.3g}"
                )
        if not in_M_plus(line_integral_jacobian(sys, t, xa, xb)):
            raise AssumptionViolated(f"line-integral Jacobian leaves M+ at t={t:.4g}")

    d1 = run_a.state.states[:, 0] - run_b.state.states[:, 0]
    signs = np.sign(d1)
    if signs[-1] == 0:
        raise NoMonotoneTail("first-coordinate difference vanishes at the horizon")
    changes = np.flatnonzero(signs[1:] != signs[:-1])
    if changes.size == 0:
        return 0.0, int(signs[-1])
    s = float(grid[changes[-1] + 1])
    if s >= grid[-1]:
        raise NoMonotoneTail("sign still changing at the sampled resolution")
    return s, int(signs[-1])


@dataclass
class PoincareResult:
    iterates: np.ndarray  # x(kT) rows
    detected_period: int | None
    residuals: list = field(default_factory=list)


def poincare_analysis(sys, x0, max_iters=100, q_max=8, tol=1e-6, step=None,
                      persistence=5):
    """Iterate the period map and detect the minimal asymptotic period.

    detected_period is the smallest q <= q_max whose iterate residuals
    ||x((k+q)T) - x(kT)|| stay below tol for `persistence` consecutive k at
    the tail of the run; q = 1 certifies entrainment at this resolution.
    """
    if sys.period is None:
        raise NotPeriodic("system carries no period")
    T = sys.period
    x = np.asarray(x0, dtype=float)
    if not sys.in_box(x):
        raise LeftDomain("initial condition outside the domain box", 0.0)
    if step is None:
        step = 1e-3 * T
    iterates = [x]
    for k in range(max_iters):
        x = _rk4_span(sys.f, x, k * T, (k + 1) * T, step)
        if not sys.in_box(x):
            raise LeftDomain("trajectory left the domain box", (k + 1) * T)
        iterates.append(x)
        q = _detect_period(iterates, q_max, tol, persistence)
        if q is not None:
            arr = np.array(iterates)
            res = [float(np.linalg.norm(arr[m + q] - arr[m])) for m in range(len(arr) - q)]
            return PoincareResult(arr, q, res)
    raise NoConvergence(f"no period <= {q_max} detected within {max_iters} iterates")


def _detect_period(iterates, q_max, tol, persistence):
    arr = np.array(iterates)
    for q in range(1, q_max + 1):
        if len(arr) < q + persistence:
            continue
        tail = range(len(arr) - persistence - q, len(arr) - q)
        if all(np.linalg.norm(arr[k + q] - arr[k]) < tol for k in tail):
            return q
    return None
