import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grdecomp import (BreakdownError, DimensionError, Identity, NotPositiveDefiniteError,
                      Signature, SymplecticJ, cholesky_qr, cholesky_qr2, gram, hr_elimination,
                      hr_via_ldl, perfect_shuffle, sr_elimination, sr_via_chol)
from grdecomp.bench import SplitMix64, gen_random_cond, gen_signature, isometry_metric

EPS = np.finfo(float).eps


def test_matrix(rows, cols, cond, seed):
    rng = SplitMix64(seed)
    return gen_random_cond(rows, cols, cond, rng), rng


test_matrix.__test__ = False


def residual(A, d):
    return np.linalg.norm(A - d.apply_R(d.G)) / np.linalg.norm(A)


# --- CholeskyQR -------------------------------------------------------------

def test_cholesky_qr_examples():
    d = cholesky_qr(np.eye(3))
    np.testing.assert_array_equal(d.Q, np.eye(3))
    np.testing.assert_array_equal(d.R, np.eye(3))
    d = cholesky_qr(np.diag([2.0, 3.0]))
    np.testing.assert_array_equal(d.Q, np.eye(2))
    np.testing.assert_array_equal(d.R, np.diag([2.0, 3.0]))
    d = cholesky_qr2(np.eye(4))
    np.testing.assert_array_equal(d.Q, np.eye(4))
    np.testing.assert_array_equal(d.R, np.eye(4))


def test_cholesky_qr2_restores_orthogonality():
    A, _ = test_matrix(200, 50, 1e6, 11)
    one, two = cholesky_qr(A), cholesky_qr2(A)
    assert np.linalg.norm(two.Q.T @ two.Q - np.eye(50)) <= 1e-14 * np.sqrt(50)
    assert np.linalg.norm(one.Q.T @ one.Q - np.eye(50)) >= 1e-9
    assert np.all(np.tril(two.R, -1) == 0.0) and np.all(np.diag(two.R) > 0)
    assert np.linalg.norm(A - two.Q @ two.R) <= 1e-14 * np.linalg.norm(A)


def test_cholesky_qr_breaks_down_at_high_cond():
    A, _ = test_matrix(200, 50, 1e9, 12)
    with pytest.raises(NotPositiveDefiniteError):
        cholesky_qr(A)


def test_cholesky_qr_wide_rejected():
    with pytest.raises(DimensionError):
        cholesky_qr(np.ones((2, 3)))


# --- HR via Bunch-Kaufman -----------------------------------------------------------

def test_hr_identity():
    d = hr_via_ldl(np.eye(3), Signature([1, 1, 1]))
    np.testing.assert_array_equal(d.H, np.eye(3))
    np.testing.assert_array_equal(d.full_R(), np.eye(3))
    assert d.sigma_out == Signature([1, 1, 1])


def test_hr_hand_example():
    d = hr_via_ldl(np.diag([2.0, 1.0]), Signature([1, -1]))
    f = d.R_factors[0]
    np.testing.assert_array_equal(gram(np.diag([2.0, 1.0]), Signature([1, -1])),
                                  np.diag([4.0, -1.0]))
    assert f.V.blocks == ((1.0,), (1.0,))
    np.testing.assert_array_equal(f.scale, [2.0, 1.0])
    assert d.sigma_out == Signature([1, -1])
    np.testing.assert_array_equal(d.full_R(), np.diag([2.0, 1.0]))
    np.testing.assert_array_equal(d.H, np.eye(2))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 100), st.sampled_from([1.0, 1e2, 1e4]), st.integers(0, 2**63))
def test_hr_characterization(n, cond, seed):
    A, rng = test_matrix(n, n, cond, seed)
    sigma = gen_signature(n, rng)
    d = hr_via_ldl(A, sigma)
    R = d.full_R()
    G = gram(A, sigma)
    assert np.linalg.norm(R.T @ d.sigma_out.apply(R) - G) <= 1e-12 * np.linalg.norm(G)


@pytest.mark.parametrize("cond", [1e2, 1e8])
def test_hr_block_triangular_structure(cond):
    A, rng = test_matrix(60, 60, cond, 13)
    d = hr_via_ldl(A, gen_signature(60, rng))
    f = d.R_factors[0]
    U = f.upper
    np.testing.assert_array_equal(f.perm.apply_right(f.matrix()), U)
    for start, size in zip(f.V.starts, f.V.sizes):
        assert np.all(U[start + size:, start:start + size] == 0.0)
    assert 2 in f.blocks or cond == 1e2  # indefinite Gram matrices produce 2x2 pivots


def test_hr_tall():
    A, rng = test_matrix(30, 12, 1e3, 14)
    sigma = gen_signature(30, rng)
    for passes in (1, 2):
        d = hr_via_ldl(A, sigma, passes=passes)
        assert d.H.shape == (30, 12) and d.sigma_out.dim == 12
        assert residual(A, d) <= 1e-13
        # one pass loses about cond**2 * eps, the second pass recovers it
        assert isometry_metric(d.H, sigma, d.sigma_out) <= (1e-9 if passes == 1 else 1e-12)


@pytest.mark.parametrize("cond", [1e2, 1e4, 1e6, 1e8])
def test_hr_inertia_stable_across_passes(cond):
    A, rng = test_matrix(80, 80, cond, 15)
    sigma = gen_signature(80, rng)
    one = hr_via_ldl(A, sigma)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        two = hr_via_ldl(A, sigma, passes=2)
    assert two.sigma_out.n_pos == one.sigma_out.n_pos
    assert two.sigma_out.n_neg == one.sigma_out.n_neg
    assert len(two.R_factors) == 2


def test_hr_two_pass_improves_isometry():
    A, rng = test_matrix(100, 100, 1e8, 16)
    sigma = gen_signature(100, rng)
    one = hr_via_ldl(A, sigma)
    two = hr_via_ldl(A, sigma, passes=2)
    e1 = isometry_metric(one.H, sigma, one.sigma_out)
    e2 = isometry_metric(two.H, sigma, two.sigma_out)
    assert e2 <= 1e-12 < e1
    full = two.full_R()
    np.testing.assert_allclose(two.apply_R(two.H), two.H @ full, rtol=0, atol=1e-8)


def test_hr_deterministic():
    A, rng = test_matrix(40, 40, 1e6, 17)
    sigma = gen_signature(40, rng)
    d1, d2 = hr_via_ldl(A, sigma, passes=2), hr_via_ldl(A.copy(), sigma, passes=2)
    assert np.array_equal(d1.H, d2.H)
    assert np.array_equal(d1.full_R(), d2.full_R())


def test_hr_input_errors():
    with pytest.raises(DimensionError):
        hr_via_ldl(np.eye(3), Signature([1, -1]))
    with pytest.raises(ValueError):
        hr_via_ldl(np.eye(2), Signature([1, -1]), passes=3)


# --- SR via the skew Cholesky-like factorization ---------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
def test_sr_identity(n):
    d = sr_via_chol(np.eye(2 * n))
    np.testing.assert_array_equal(d.S, np.eye(2 * n))
    np.testing.assert_array_equal(d.R_factors[0].Rhat, np.eye(2 * n))
    assert (d.permutation @ perfect_shuffle(n).inverse()).is_identity()
    np.testing.assert_array_equal(d.structured_R(), np.eye(2 * n))


def test_sr_hand_example():
    A = 2.0 * np.eye(4)
    np.testing.assert_array_equal(gram(A, SymplecticJ(2)), 4.0 * SymplecticJ(2).matrix())
    d = sr_via_chol(A)
    np.testing.assert_array_equal(d.R_factors[0].Rhat, 2.0 * np.eye(4))
    np.testing.assert_array_equal(d.S, np.eye(4))
    np.testing.assert_array_equal(d.full_R(), A)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 50), st.sampled_from([1.0, 1e2, 1e4]), st.booleans(),
       st.integers(0, 2**63))
def test_sr_characterization(n, cond, pivoting, seed):
    A, _ = test_matrix(2 * n, 2 * n, cond, seed)
    d = sr_via_chol(A, pivot_first=pivoting)
    R = d.full_R()
    B = gram(A, SymplecticJ(n))
    assert np.linalg.norm(R.T @ SymplecticJ(n).apply(R) - B) <= 1e-12 * np.linalg.norm(B)


def four_block_zeros(R, n):
    """Masks of the entries that must vanish in [[upper, strict upper], [strict upper, upper]]."""
    lower = np.tril(np.ones((n, n), dtype=bool), -1)
    lower_eq = np.tril(np.ones((n, n), dtype=bool))
    return np.block([[lower, lower_eq], [lower_eq, lower]])


@pytest.mark.parametrize("pivoting", [False, True])
def test_sr_four_block_structure(pivoting):
    n = 25
    A, _ = test_matrix(2 * n, 2 * n, 1e4, 18)
    d = sr_via_chol(A, pivot_first=pivoting)
    Rs = d.structured_R()
    assert np.all(Rs[four_block_zeros(Rs, n)] == 0.0)
    # A Pi^T Ps = S Rs
    Ps = perfect_shuffle(n)
    lhs = Ps.apply_right(d.permutation.apply_right_transpose(A))
    assert np.linalg.norm(lhs - d.S @ Rs) <= 1e-13 * np.linalg.norm(A)
    if not pivoting:
        np.testing.assert_array_equal(Rs, d.full_R())


def test_sr_structured_needs_single_pass():
    A, _ = test_matrix(8, 8, 10.0, 19)
    with pytest.raises(ValueError):
        sr_via_chol(A, passes=2).structured_R()


def test_sr_tall():
    A, _ = test_matrix(40, 16, 1e3, 20)
    for passes in (1, 2):
        d = sr_via_chol(A, passes=passes, pivot_first=True)
        assert d.S.shape == (40, 16) and d.half_dims == (20, 8)
        assert residual(A, d) <= 1e-13
        assert isometry_metric(d.S, SymplecticJ(20), SymplecticJ(8)) <= 1e-11


def test_sr_pivoting_tames_isometry():
    A, _ = test_matrix(200, 200, 1e8, 21)
    plain = sr_via_chol(A)
    piv = sr_via_chol(A, passes=2, pivot_first=True)
    J = SymplecticJ(100)
    assert isometry_metric(piv.S, J, J) * 1e6 <= isometry_metric(plain.S, J, J)


def test_sr_deterministic():
    A, _ = test_matrix(30, 30, 1e6, 22)
    d1 = sr_via_chol(A, passes=2, pivot_first=True)
    d2 = sr_via_chol(A.copy(), passes=2, pivot_first=True)
    assert np.array_equal(d1.S, d2.S) and np.array_equal(d1.full_R(), d2.full_R())


def test_sr_input_errors():
    with pytest.raises(DimensionError):
        sr_via_chol(np.eye(3))
    with pytest.raises(DimensionError):
        sr_via_chol(np.eye(4)[:, :2].repeat(3, axis=1))


# --- residual across methods --------------------------------------------------

CHOL_METHODS = [
    ("hr", dict(passes=1)), ("hr", dict(passes=2)),
    ("sr", dict(passes=1)), ("sr", dict(passes=2)),
    ("sr", dict(passes=1, pivot_first=True)), ("sr", dict(passes=2, pivot_first=True)),
]


@pytest.mark.parametrize("family,kw", CHOL_METHODS)
@pytest.mark.parametrize("cond", [1e2, 1e4, 1e6, 1e8])
def test_cholesky_like_residual(family, kw, cond):
    A, rng = test_matrix(100, 100, cond, 23)
    if family == "hr":
        d = hr_via_ldl(A, gen_signature(100, rng), **kw)
    else:
        d = sr_via_chol(A, **kw)
    assert residual(A, d) <= 1e-12


@pytest.mark.parametrize("cond", [1e2, 1e4, 1e6, 1e8])
def test_elimination_residual(cond):
    A, rng = test_matrix(100, 100, cond, 24)
    assert residual(A, hr_elimination(A, gen_signature(100, rng))) <= 1e-8
    assert residual(A, sr_elimination(A)) <= 1e-8


# --- elimination baselines --------------------------------------------------

def test_hr_elimination_identity():
    sigma = Signature([1, -1, -1, 1])
    d = hr_elimination(np.eye(4), sigma)
    np.testing.assert_array_equal(d.H, np.eye(4))
    np.testing.assert_array_equal(d.full_R(), np.eye(4))
    assert d.sigma_out == sigma


def test_hr_elimination_euclidean_is_householder_qr():
    A, _ = test_matrix(60, 60, 1e3, 25)
    d = hr_elimination(A, Signature(np.ones(60)))
    assert np.linalg.norm(d.H.T @ d.H - np.eye(60)) <= 1e-14 * np.sqrt(60)
    R = d.full_R()
    assert np.all(np.tril(R, -1) == 0.0)
    ref = cholesky_qr2(A).R
    np.testing.assert_allclose(np.abs(np.diag(R)), np.diag(ref), rtol=1e-10)


def test_hr_elimination_random():
    A, rng = test_matrix(50, 40, 1e4, 26)
    sigma = gen_signature(50, rng)
    d = hr_elimination(A, sigma)
    R = d.full_R()
    assert np.all(np.tril(R, -1) == 0.0)
    assert residual(A, d) <= 1e-12
    assert isometry_metric(d.H, sigma, d.sigma_out) <= 1e-8
    # sigma_out draws from the entries of sigma
    assert d.sigma_out.n_pos <= sigma.n_pos and d.sigma_out.n_neg <= sigma.n_neg


def test_hr_elimination_breakdown():
    A = np.array([[1.0, 0.0], [1.0, 1.0]])
    with pytest.raises(BreakdownError) as info:
        hr_elimination(A, Signature([1, -1]))
    assert info.value.index == 0


@pytest.mark.parametrize("scale", [1.0, 3.0])
def test_sr_elimination_scaled_identity(scale):
    A = scale * np.eye(6)
    d = sr_elimination(A)
    np.testing.assert_array_equal(d.S, np.eye(6))
    np.testing.assert_array_equal(d.full_R(), A)


def test_sr_elimination_random():
    n = 20
    A, _ = test_matrix(2 * n, 2 * n, 1e4, 27)
    d = sr_elimination(A)
    Rs = d.structured_R()
    assert np.all(Rs[four_block_zeros(Rs, n)] == 0.0)
    assert residual(A, d) <= 1e-10
    J = SymplecticJ(n)
    assert isometry_metric(d.S, J, J) <= 1e-6


def test_sr_elimination_tall():
    A, _ = test_matrix(12, 6, 10.0, 28)
    d = sr_elimination(A)
    assert d.S.shape == (12, 6)
    assert residual(A, d) <= 1e-13
    assert isometry_metric(d.S, SymplecticJ(6), SymplecticJ(3)) <= 1e-12


def test_sr_elimination_breakdown():
    # column n+1 lives in the span isotropic to column 1: the Gauss pivot vanishes
    A = np.eye(4)
    A[:, 2] = [0.0, 1.0, 0.0, 0.0]
    A[:, 1] = [0.0, 0.0, 0.0, 1.0]
    with pytest.raises(BreakdownError):
        sr_elimination(A)


def test_euclidean_metric_sanity():
    d = cholesky_qr2(np.eye(3))
    assert isometry_metric(d.Q, Identity(3), Identity(3)) == 0.0
