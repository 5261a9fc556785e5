"""Tests for monodromy analysis of periodic systems."""

import numpy as np
import pytest

from tpds import (
    TimeVaryingSystem,
    floquet,
    floquet_mode_evolution,
    random_tpds_system,
    shipped,
    transition_matrix,
)
from tpds.errors import FloquetViolation, LeadingCoefficientZero, NotPeriodic

TWO_PI = 2 * np.pi


@pytest.fixture(scope="module")
def sinusoidal():
    spec = shipped("sinusoidal2")
    fd = floquet(spec.system, step=5e-4 * spec.system.period)
    return spec.system, fd


def test_sinusoidal_multipliers(sinusoidal):
    _, fd = sinusoidal
    assert fd.multipliers[0] == pytest.approx(np.exp(TWO_PI), rel=1e-5)
    assert fd.multipliers[1] == pytest.approx(np.exp(-TWO_PI), rel=1e-5)
    assert fd.sign_counts == [0, 1]


def test_sinusoidal_monodromy_entries(sinusoidal):
    _, fd = sinusoidal
    exact = np.array(
        [[np.cosh(TWO_PI), np.sinh(TWO_PI)], [np.sinh(TWO_PI), np.cosh(TWO_PI)]]
    )
    assert np.allclose(fd.monodromy, exact, rtol=1e-5)


def test_sinusoidal_eigvecs(sinusoidal):
    _, fd = sinusoidal
    r = 1 / np.sqrt(2)
    assert np.allclose(fd.eigvecs[:, 0], [r, r], atol=1e-6)
    # second eigenvector spans (-1, 1); normalization makes the first
    # nonzero entry positive
    assert np.allclose(fd.eigvecs[:, 1], [r, -r], atol=1e-6)


def test_constant_system_multipliers_match_eigenvalues():
    A = np.array([[-1.0, 2.0, 0.0], [1.0, -2.0, 1.0], [0.0, 2.0, -1.0]])
    T = 1.5
    sys = TimeVaryingSystem.constant(A, (0.0, 3.0), period=T)
    fd = floquet(sys, step=1e-4)
    lams = np.sort(np.linalg.eigvals(A).real)[::-1]
    assert np.allclose(fd.multipliers, np.exp(lams * T), rtol=1e-6)


def test_scalar_system():
    sys = TimeVaryingSystem.constant(np.array([[1.0]]), (0.0, 2.0), period=1.0)
    fd = floquet(sys)
    assert fd.multipliers[0] == pytest.approx(np.e, rel=1e-8)
    assert fd.sign_counts == [0]


def test_not_periodic():
    sys = shipped("cosh2").system
    with pytest.raises(NotPeriodic):
        floquet(sys)


def test_floquet_violation_on_rotation():
    A = np.array([[0.0, -1.0], [1.0, 0.0]])
    sys = TimeVaryingSystem.constant(A, (0.0, 1.0), period=1.0)
    with pytest.raises(FloquetViolation):
        floquet(sys)


def test_monodromy_consistency(sinusoidal):
    sys, fd = sinusoidal
    T = fd.period
    for t in np.linspace(0.3 * T, 2.0 * T, 5):
        lhs = transition_matrix(sys, 0.0, float(t) + T, step=5e-4 * T).phi
        rhs = transition_matrix(sys, 0.0, float(t), step=5e-4 * T).phi @ fd.monodromy
        assert np.allclose(lhs, rhs, rtol=1e-5)


def test_mode_evolution_pure_modes(sinusoidal):
    sys, fd = sinusoidal
    traj1 = floquet_mode_evolution(sys, fd, {1: 1.0}, horizon=5 * fd.period)
    assert set(traj1.sigma_minus) == {0}
    # the pure decaying mode can only be tracked while it still dominates
    # the roundoff-injected growing mode, so keep the horizon short
    traj2 = floquet_mode_evolution(
        sys, fd, {2: 1.0}, horizon=1.5 * fd.period, step=5e-4 * fd.period
    )
    assert set(traj2.sigma_minus) == {1}


def test_mode_evolution_mixed(sinusoidal):
    sys, fd = sinusoidal
    traj = floquet_mode_evolution(sys, fd, [1.0, 10.0], horizon=10 * fd.period)
    assert traj.sigma_minus[0] == 1
    assert traj.sigma_minus[-1] == 0


def test_mode_evolution_rejects_zero_coefficients(sinusoidal):
    sys, fd = sinusoidal
    with pytest.raises(LeadingCoefficientZero):
        floquet_mode_evolution(sys, fd, {}, horizon=fd.period)
    with pytest.raises(LeadingCoefficientZero):
        floquet_mode_evolution(sys, fd, [0.0, 0.0], horizon=fd.period)


def test_random_periodic_tpds_invariants():
    rng = np.random.default_rng(21)
    for k in range(3):
        sys = random_tpds_system(3, rng)
        fd = floquet(sys)
        assert np.all(fd.multipliers > 0)
        assert np.all(np.diff(fd.multipliers) < 0)
        assert fd.sign_counts == [0, 1, 2]
