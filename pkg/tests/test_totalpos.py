"""Tests for minor enumeration, classification, factorization and SVDP."""

import numpy as np
import pytest

from tpds import (
    classify,
    column_set_equivalence,
    geb_factorize,
    is_dominant_tridiagonal_TN,
    is_geb,
    minor,
    oscillatory_spectrum,
    random_tn,
    random_tp,
    strong_svdp_holds,
    svdp_check,
)
from tpds.errors import (
    DimensionMismatch,
    NotTN,
    NotTridiagonal,
    PivotBreakdown,
    RankDeficient,
    SizeLimitExceeded,
    SpectralViolation,
    ZeroVector,
)

A_SPECTRAL = np.array([[5, 4, 1], [4, 6, 4], [1, 4, 5]], dtype=float)


def test_minor_basic():
    assert minor(A_SPECTRAL, (1, 2), (1, 2)) == pytest.approx(14.0)
    assert minor(A_SPECTRAL, (1,), (3,)) == pytest.approx(1.0)
    assert minor(A_SPECTRAL, (1, 2, 3), (1, 2, 3)) == pytest.approx(
        np.linalg.det(A_SPECTRAL)
    )


def test_minor_rejects_bad_indices():
    with pytest.raises(DimensionMismatch):
        minor(A_SPECTRAL, (1, 2), (1,))
    with pytest.raises(DimensionMismatch):
        minor(A_SPECTRAL, (2, 1), (1, 2))  # not increasing
    with pytest.raises(DimensionMismatch):
        minor(A_SPECTRAL, (1, 4), (1, 2))  # out of range
    with pytest.raises(DimensionMismatch):
        minor(A_SPECTRAL, (), ())


def test_classify_identity():
    cls = classify(np.eye(3))
    assert cls.is_TN and not cls.is_TP
    assert not cls.is_SSR and not cls.is_oscillatory
    assert cls.witness is None


def test_classify_ssr_not_tn():
    cls = classify(np.array([[1.0, 2.0], [3.0, 1.0]]))
    assert cls.is_SSR and not cls.is_TN
    alpha, beta, value = cls.witness
    assert alpha == (1, 2) and beta == (1, 2)
    assert value == pytest.approx(-5.0)


def test_classify_oscillatory_tridiagonal():
    A = np.array([[2, 1, 0], [1, 2, 1], [0, 1, 2]], dtype=float)
    cls = classify(A)
    assert cls.is_TN and not cls.is_TP
    assert cls.is_oscillatory
    # its square is the spectral fixture, which is fully TP
    sq = classify(A @ A)
    assert sq.is_TP and sq.is_oscillatory


def test_classify_similarity_breaks_TN():
    # a TN nilpotent upper-shift conjugated by a cyclic permutation
    A = np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]], dtype=float)
    P = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=float)
    assert classify(A).is_TN
    conj = P @ A @ np.linalg.inv(P)
    assert not classify(conj).is_TN


def test_classify_size_guard():
    with pytest.raises(SizeLimitExceeded):
        classify(np.eye(11))
    with pytest.raises(DimensionMismatch):
        classify(np.ones((2, 3)))


def test_dominant_tridiagonal():
    A = np.array([[2, 1, 0], [1, 3, 1], [0, 1, 2]], dtype=float)
    assert is_dominant_tridiagonal_TN(A)
    # sufficient only: this TN matrix fails the dominance inequality
    B = np.array([[1.0, 2.0], [0.0, 1.0]])
    assert classify(B).is_TN and not is_dominant_tridiagonal_TN(B)
    with pytest.raises(NotTridiagonal):
        is_dominant_tridiagonal_TN(np.ones((3, 3)))


def test_geb_factorize_2x2():
    A = np.array([[1.0, 2.0], [1.0, 3.0]])
    fact = geb_factorize(A)
    assert fact.residual_error < 1e-12
    assert np.allclose(fact.product(), A)
    for F in fact.factors:
        assert is_geb(F)


def test_geb_factorize_random_tn():
    rng = np.random.default_rng(11)
    for _ in range(20):
        A = random_tn(4, rng)
        fact = geb_factorize(A)
        assert fact.residual_error < 1e-10
        assert all(is_geb(F) for F in fact.factors)


def test_geb_requires_tn():
    with pytest.raises(NotTN):
        geb_factorize(np.array([[0.0, 1.0], [1.0, 0.0]]))


def test_geb_pivot_breakdown():
    # zero pivot above a nonzero entry in the first column
    A = np.array([[0.0, 0.0], [1.0, 1.0]])
    assert classify(A).is_TN
    with pytest.raises(PivotBreakdown):
        geb_factorize(A)


def test_oscillatory_spectrum_fixture():
    out = oscillatory_spectrum(A_SPECTRAL)
    vals = [lam for lam, _, _ in out]
    expected = [2 * (3 + 2 * np.sqrt(2)), 4.0, 2 * (3 - 2 * np.sqrt(2))]
    assert vals == pytest.approx(expected, rel=1e-8)
    assert [count for _, _, count in out] == [0, 1, 2]
    refs = [
        np.array([1.0, np.sqrt(2), 1.0]),
        np.array([1.0, 0.0, -1.0]),
        np.array([1.0, -np.sqrt(2), 1.0]),
    ]
    for (_, vec, _), ref in zip(out, refs):
        ref = ref / np.linalg.norm(ref)
        assert np.allclose(vec, ref, atol=1e-8)


def test_oscillatory_spectrum_rejects_non_oscillatory():
    with pytest.raises(SpectralViolation):
        oscillatory_spectrum(np.eye(3))  # reducible


def test_svdp_check_basic():
    A = np.array([[1.0, 2.0], [3.0, 1.0]])  # SSR
    rng = np.random.default_rng(3)
    for _ in range(100):
        x = rng.standard_normal(2)
        sin, sout, ok = svdp_check(A, x)
        assert ok and sout <= sin
    with pytest.raises(ZeroVector):
        svdp_check(A, [0.0, 0.0])
    with pytest.raises(DimensionMismatch):
        svdp_check(A, [1.0, 2.0, 3.0])


def test_strong_svdp_without_ssr():
    # singular rank-one matrix: the variation bound holds for every vector
    # even though no minor condition can (2x2 minors all vanish)
    A = np.array([[2.0, 2.0], [1.0, 1.0]])
    assert strong_svdp_holds(A, rng=0)
    assert not classify(A).is_SSR


def test_strong_svdp_on_random_tp():
    rng = np.random.default_rng(5)
    A = random_tp(3, rng)
    assert strong_svdp_holds(A, rng=1, vectors_per_pattern=5)


def test_column_set_equivalence_positive_case():
    U = np.array([[1.0, -1.0], [np.sqrt(2), 0.0], [1.0, 1.0]])
    same_sign, bound = column_set_equivalence(U, trials=300, rng=2)
    assert same_sign and bound


def test_column_set_equivalence_negative_case():
    U = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 0.0]])
    same_sign, bound = column_set_equivalence(U, trials=300, rng=2)
    assert not same_sign and not bound


def test_column_set_equivalence_preconditions():
    with pytest.raises(RankDeficient):
        column_set_equivalence(np.array([[1.0, 1.0], [1.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(DimensionMismatch):
        column_set_equivalence(np.eye(2))
