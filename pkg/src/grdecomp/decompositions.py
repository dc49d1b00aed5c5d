"""GR decompositions computed through Cholesky-like factorizations of Gram matrices.

* ``cholesky_qr`` / ``cholesky_qr2``: orthogonal QR from ``chol(A^T A)``.
* ``hr_via_ldl``: hyperbolic QR from a Bunch-Kaufman factorization of ``A^T Sigma A``.
* ``sr_via_chol``: symplectic QR from a skew Cholesky-like factorization of ``A^T J A``.

The two-pass variants re-decompose the computed isometry factor and keep the
triangular-like factors separately, so ``A = G @ R_k @ ... @ R_1``.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .core import (Identity, Permutation, Signature, SymplecticJ, as_matrix, gram,
                   perfect_shuffle, right_tri_solve)
from .exceptions import DimensionError, SingularMatrixError
from .skew import skew_chol_like
from .symmetric import BlockDiagonal, block_eig, bunch_kaufman, cholesky_upper

__all__ = [
    "QRDecomposition",
    "HRDecomposition",
    "SRDecomposition",
    "LDLFactor",
    "TriangularFactor",
    "SkewFactor",
    "cholesky_qr",
    "cholesky_qr2",
    "hr_via_ldl",
    "sr_via_chol",
]


@dataclass(frozen=True)
class QRDecomposition:
    Q: np.ndarray
    R: np.ndarray


@dataclass(frozen=True)
class TriangularFactor:
    """Plain upper-triangular ``R``."""

    R: np.ndarray

    @property
    def perm(self):
        return Permutation.identity(self.R.shape[0])

    @property
    def blocks(self):
        return (1,) * self.R.shape[0]

    @property
    def upper(self):
        return self.R

    def matrix(self):
        return self.R.copy()

    def apply_right(self, X):
        return np.asarray(X) @ self.R

    def solve_right(self, B):
        return right_tri_solve(B, self.R)


@dataclass(frozen=True)
class LDLFactor:
    """``R = diag(scale) @ V.T @ L.T @ P.T`` from a Bunch-Kaufman factorization.

    ``R @ P`` (``upper``) is block upper triangular with block sizes ``blocks``.
    ``V`` is symmetric, so ``V.T == V``.
    """

    perm: Permutation
    L: np.ndarray
    V: BlockDiagonal
    scale: np.ndarray

    @property
    def blocks(self):
        return self.V.sizes

    @property
    def upper(self):
        return self.scale[:, None] * self.V.matmul(self.L.T)

    def matrix(self):
        return self.perm.apply_right_transpose(self.upper)

    def apply_right(self, X):
        Y = np.asarray(X) * self.scale
        Y = self.V.rmatmul(Y) @ self.L.T
        return self.perm.apply_right_transpose(Y)

    def solve_right(self, B):
        Y = self.perm.apply_right(B)
        Y = right_tri_solve(Y, self.L.T, unit_diagonal=True)
        return self.V.rmatmul(Y) / self.scale


@dataclass(frozen=True)
class SkewFactor:
    """``R = Ps.T @ Rhat @ Pi`` with upper-triangular ``Rhat`` and perfect shuffle ``Ps``."""

    Rhat: np.ndarray
    perm: Permutation

    @property
    def shuffle(self):
        return perfect_shuffle(self.Rhat.shape[0] // 2)

    def matrix(self):
        return self.apply_right(np.eye(self.Rhat.shape[0]))

    def structured(self):
        """``Ps.T @ Rhat @ Ps``."""
        s = self.shuffle.map
        return self.Rhat[np.ix_(s, s)]

    def apply_right(self, X):
        Y = self.shuffle.apply_right_transpose(np.asarray(X)) @ self.Rhat
        return self.perm.apply_right(Y)

    def solve_right(self, B):
        Y = self.perm.apply_right_transpose(np.asarray(B))
        Y = right_tri_solve(Y, self.Rhat)
        return self.shuffle.apply_right(Y)


def _full_R(factors):
    n = factors[0].matrix().shape[0]
    return _apply_factors(np.eye(n), factors)


def _apply_factors(X, factors):
    # X @ R_k @ ... @ R_1 with factors stored in pass order (R_1 first)
    for f in reversed(factors):
        X = f.apply_right(X)
    return X


@dataclass(frozen=True)
class HRDecomposition:
    """``A = H @ full_R()`` with ``H.T @ Sigma_m @ H == Sigma_n``."""

    H: np.ndarray
    R_factors: tuple
    sigma_out: Signature

    @property
    def G(self):
        return self.H

    def full_R(self):
        return _full_R(self.R_factors)

    def apply_R(self, X):
        return _apply_factors(X, self.R_factors)


@dataclass(frozen=True)
class SRDecomposition:
    """``A = S @ full_R()`` with ``S.T @ J_m @ S == J_n``.

    A single pass also satisfies ``A @ Pi.T @ Ps == S @ structured_R()``,
    ``Pi`` being ``permutation``.
    """

    S: np.ndarray
    R_factors: tuple
    half_dims: tuple

    @property
    def G(self):
        return self.S

    @property
    def permutation(self):
        return self.R_factors[0].perm

    def full_R(self):
        return _full_R(self.R_factors)

    def apply_R(self, X):
        return _apply_factors(X, self.R_factors)

    def structured_R(self):
        if len(self.R_factors) != 1:
            raise ValueError("structured form is only defined for a single pass")
        return self.R_factors[0].structured()


def _check_passes(passes):
    if passes not in (1, 2):
        raise ValueError("passes must be 1 or 2")


def cholesky_qr(A):
    """Thin QR decomposition through ``R = chol(A^T A)`` and ``Q = A R^{-1}``.

    Raises
    ------
    NotPositiveDefiniteError
        When rounding makes the Gram matrix numerically indefinite, which is
        expected once ``cond(A)**2`` approaches ``1/eps``.
    """
    A = as_matrix(A)
    m, n = A.shape
    if m < n:
        raise DimensionError("cholesky_qr needs rows >= cols")
    R = cholesky_upper(gram(A, Identity(m)))
    return QRDecomposition(right_tri_solve(A, R), R)


def cholesky_qr2(A):
    """CholeskyQR applied twice; the second pass restores orthogonality of Q."""
    first = cholesky_qr(A)
    second = cholesky_qr(first.Q)
    return QRDecomposition(second.Q, second.R @ first.R)


def hr_via_ldl(A, sigma_m, passes=1, tol=0.0):
    """Hyperbolic QR decomposition from the Bunch-Kaufman factorization.

    Per pass::

        A^T Sigma_m A = P L D L^T P^T        (Bunch-Kaufman)
        D = V Lambda V^T,  Sigma_n = sign(Lambda)
        R = |Lambda|^{1/2} V^T L^T P^T,      H = A R^{-1}

    ``R`` is block upper triangular with permuted columns. With ``passes=2``
    the same procedure is applied to ``H`` and the output signature is the one
    of the second pass.

    Parameters
    ----------
    A : (m, n) array_like
    sigma_m : Signature
        Signature of length ``m``.
    passes : {1, 2}
    tol : float
        Singularity threshold handed to :func:`bunch_kaufman`.
    """
    _check_passes(passes)
    A = as_matrix(A)
    if not isinstance(sigma_m, Signature):
        sigma_m = Signature(sigma_m)
    m, n = A.shape
    if sigma_m.dim != m:
        raise DimensionError(f"signature has length {sigma_m.dim}, A has {m} rows")
    if n > m:
        raise DimensionError("hr_via_ldl needs rows >= cols")

    X = A
    factors = []
    signs = None
    for _ in range(passes):
        bk = bunch_kaufman(gram(X, sigma_m), tol=tol)
        V, magnitudes, new_signs = block_eig(bk.D)
        zero = np.flatnonzero(magnitudes == 0.0)
        if zero.size:
            raise SingularMatrixError(f"zero eigenvalue of D at index {zero[0]}", int(zero[0]))
        factor = LDLFactor(bk.P, bk.L, V, np.sqrt(magnitudes))
        X = factor.solve_right(X)
        if signs is not None and np.count_nonzero(new_signs > 0) != np.count_nonzero(signs > 0):
            warnings.warn("inertia changed between passes", RuntimeWarning, stacklevel=2)
        signs = new_signs
        factors.append(factor)
    return HRDecomposition(X, tuple(factors), Signature(signs))


def sr_via_chol(A, passes=1, pivot_first=False, pivot_second=False, tol=0.0):
    """Symplectic QR decomposition from the skew Cholesky-like factorization.

    Per pass, with ``B = A^T J_m A`` and the perfect shuffle ``Ps``::

        Pi' (Ps B Ps^T) Pi'^T = Rhat^T Jhat Rhat
        Pi = Pi' Ps,   R = Ps^T Rhat Pi,   S = A R^{-1}

    Without pivoting ``Pi' = I`` and ``R`` has the four-block triangular
    pattern of the symplectic QR decomposition. With pivoting
    ``A Pi^T Ps = S (Ps^T Rhat Ps)``.

    Parameters
    ----------
    A : (2m, 2n) array_like
    passes : {1, 2}
    pivot_first, pivot_second : bool
        Pivoting flag of each pass.
    tol : float
        Relative zero-pivot factor handed to :func:`skew_chol_like`.
    """
    _check_passes(passes)
    A = as_matrix(A)
    rows, cols = A.shape
    if rows % 2 or cols % 2:
        raise DimensionError("A must have even numbers of rows and columns")
    m, n = rows // 2, cols // 2
    if n > m:
        raise DimensionError("sr_via_chol needs rows >= cols")
    J = SymplecticJ(m)
    Ps = perfect_shuffle(n)
    interleave = Ps.inverse().map  # Ps B Ps^T == B[interleave][:, interleave]

    X = A
    factors = []
    for pivoting in (pivot_first, pivot_second)[:passes]:
        B = gram(X, J)
        F = skew_chol_like(B[np.ix_(interleave, interleave)], pivoting=pivoting, tol=tol)
        factor = SkewFactor(F.Rhat, F.Pi @ Ps)
        X = factor.solve_right(X)
        factors.append(factor)
    return SRDecomposition(X, tuple(factors), (m, n))
