"""Tests for the sign-variation counts s_minus / s_plus / sigma."""

import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tpds import in_V, s_minus, s_plus, sigma, signs
from tpds.errors import NotInV
from tpds.signvar import s_plus_bruteforce


def test_counts_on_mixed_vector():
    y = [1, 0, 2, -3, 0, 1.1]
    assert s_minus(y) == 2
    assert s_plus(y) == 4


def test_no_zeros_counts_agree():
    y = [1.0, -2.0, 3.0, -4.0]
    assert s_minus(y) == s_plus(y) == 3
    assert sigma(y) == 3


def test_all_zero_vector():
    assert s_minus([0, 0, 0]) == 0
    assert s_plus([0, 0, 0]) == 2
    assert not in_V([0, 0, 0])


def test_signs_integer_input_is_exact():
    assert signs([1, 0, -2]).tolist() == [1, 0, -1]
    # float input uses the default tolerance
    assert signs([1.0, 1e-12, -2.0]).tolist() == [1, 0, -1]


def test_signs_rejects_empty_and_negative_tol():
    with pytest.raises(ValueError):
        signs([])
    with pytest.raises(ValueError):
        signs([1.0, 2.0], zero_tol=-1.0)
    # a single-entry vector is fine (scalar systems)
    assert s_minus([3.0]) == s_plus([3.0]) == 0


def test_sigma_off_V_raises():
    # interior zero without a strict sign change on both sides
    with pytest.raises(NotInV):
        sigma([1, 0, 2])
    with pytest.raises(NotInV):
        sigma([0, 1, 2])


def test_sigma_near_boundary_of_V():
    # z(eps) = (-1, eps, 2): in V for eps = 0 (zero sits between a strict
    # sign change), sigma = 1 on both sides of the boundary
    assert sigma([-1, 0, 2]) == 1
    assert sigma([-1.0, 1e-3, 2.0]) == 1
    assert sigma([-1.0, -1e-3, 2.0]) == 1


def test_exhaustive_V_membership_small_n():
    """in_V agrees with the defining conditions over all sign patterns."""
    for n in (2, 3, 4, 5, 6):
        for pat in itertools.product((-1, 0, 1), repeat=n):
            y = np.array(pat, dtype=float)
            expected = pat[0] != 0 and pat[-1] != 0 and all(
                not (pat[i] == 0 and pat[i - 1] * pat[i + 1] >= 0)
                for i in range(1, n - 1)
            )
            assert in_V(y) == expected, pat
            assert in_V(y) == (s_minus(y) == s_plus(y)), pat


def test_s_plus_matches_bruteforce_exhaustive():
    for n in (2, 3, 4, 5):
        for pat in itertools.product((-1, 0, 1), repeat=n):
            y = np.array(pat, dtype=float)
            assert s_plus(y) == s_plus_bruteforce(y), pat


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=8))
def test_s_plus_dp_equals_bruteforce(pattern):
    y = np.array(pattern, dtype=float)
    assert s_plus(y) == s_plus_bruteforce(y)


@given(st.lists(st.integers(-10, 10), min_size=2, max_size=8))
def test_counts_invariant_under_positive_scaling(ys):
    y = np.array(ys, dtype=float)
    assert s_minus(2.5 * y) == s_minus(y)
    assert s_plus(2.5 * y) == s_plus(y)


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=8))
def test_counts_invariant_under_negation(pattern):
    y = np.array(pattern, dtype=float)
    assert s_minus(-y) == s_minus(y)
    assert s_plus(-y) == s_plus(y)


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=8))
def test_count_ordering_and_range(pattern):
    y = np.array(pattern, dtype=float)
    n = len(pattern)
    assert 0 <= s_minus(y) <= s_plus(y) <= n - 1
