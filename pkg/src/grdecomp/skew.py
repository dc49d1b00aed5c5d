"""Cholesky-like factorization of skew-symmetric matrices.

For skew ``B`` of order ``2n`` we compute ``Pi @ B @ Pi.T = Rhat.T @ Jhat @ Rhat``
where ``Jhat = blockdiag([[0, 1], [-1, 0]], ...)`` and ``Rhat`` is upper
triangular. Every 2x2 diagonal block of ``Rhat`` is ``diag(r, sign(b) * r)``
with ``r = sqrt(|b|)`` for the pivot entry ``b``.
"""

from dataclasses import dataclass

import numpy as np

from .core import Permutation, as_matrix
from .exceptions import DimensionError, StructuralSingularityError

__all__ = ["SkewCholFactorization", "skew_chol_like", "reconstruct", "jhat", "jhat_apply"]


def jhat(n):
    """Dense ``blockdiag([[0, 1], [-1, 0]])`` with ``n`` blocks."""
    J = np.zeros((2 * n, 2 * n))
    i = np.arange(0, 2 * n, 2)
    J[i, i + 1] = 1.0
    J[i + 1, i] = -1.0
    return J


def jhat_apply(X):
    """``Jhat @ X`` without forming ``Jhat``."""
    X = np.asarray(X, dtype=np.float64)
    Y = np.empty_like(X)
    Y[0::2] = X[1::2]
    Y[1::2] = -X[0::2]
    return Y


@dataclass(frozen=True)
class SkewCholFactorization:
    Pi: Permutation
    Rhat: np.ndarray
    half_dim: int
    pivots: tuple = ()


def skew_chol_like(B, pivoting=False, tol=0.0, on_pivot=None):
    """Factor a skew-symmetric matrix as ``Pi B Pi^T = Rhat^T Jhat Rhat``.

    Parameters
    ----------
    B : (2n, 2n) array_like
        Exactly skew-symmetric matrix.
    pivoting : bool
        Before each step, move the largest entry of the first column of the
        trailing submatrix into the pivot position by a symmetric swap.
    tol : float
        Relative threshold factor. A pivot with
        ``|b| <= tol * eps * ||B||_F`` is rejected; with the default ``0``
        only an exactly vanishing pivot is.
    on_pivot : callable, optional
        Called as ``on_pivot(step, b, column_max)`` at every step.

    Raises
    ------
    StructuralSingularityError
        When no admissible pivot exists at some step (``index`` is the step).
    """
    A = as_matrix(B, "B").copy()
    N = A.shape[0]
    if A.shape[1] != N or N % 2:
        raise DimensionError("B must be square of even order")
    if not np.array_equal(A, -A.T):
        raise ValueError("B must be exactly skew-symmetric")
    n = N // 2
    thresh = tol * np.finfo(np.float64).eps * np.linalg.norm(A)

    order = np.arange(N)
    Rhat = np.zeros_like(A)
    pivots = []
    j = np.array([[0.0, 1.0], [-1.0, 0.0]])
    for step in range(n):
        k = 2 * step
        col = np.abs(A[k + 1:, k])
        colmax = col.max()
        if pivoting:
            r = k + 1 + int(np.argmax(col))
            if r != k + 1:
                A[[k + 1, r], :] = A[[r, k + 1], :]
                A[:, [k + 1, r]] = A[:, [r, k + 1]]
                order[[k + 1, r]] = order[[r, k + 1]]
                Rhat[:k, [k + 1, r]] = Rhat[:k, [r, k + 1]]
        b = A[k, k + 1]
        if on_pivot is not None:
            on_pivot(step, b, colmax)
        if abs(b) <= thresh or b == 0.0:
            raise StructuralSingularityError(f"vanishing pivot at step {step}", step)
        pivots.append(b)

        r1 = np.sqrt(abs(b))
        r2 = np.copysign(r1, b)
        Rhat[k, k] = r1
        Rhat[k + 1, k + 1] = r2
        if k + 2 < N:
            # A[k:k+2, k+2:] = diag(r1, r2) @ j @ Rrow  =>  Rrow = -j @ diag(1/r1, 1/r2) @ A[..]
            top = A[k:k + 2, k + 2:]
            Rrow = np.empty_like(top)
            Rrow[0] = -top[1] / r2
            Rrow[1] = top[0] / r1
            Rhat[k:k + 2, k + 2:] = Rrow
            # trailing update with Rrow^T j Rrow, which is skew: only build one product
            T = np.outer(Rrow[0], Rrow[1])
            A[k + 2:, k + 2:] -= T - T.T
    return SkewCholFactorization(Permutation(order).inverse(), Rhat, n, tuple(pivots))


def reconstruct(F):
    """Return ``Pi^T Rhat^T Jhat Rhat Pi``."""
    R = F.Rhat
    G = R.T @ jhat_apply(R)
    G = 0.5 * (G - G.T)
    order = F.Pi.inverse().map
    inv = np.argsort(order)
    return G[np.ix_(inv, inv)]
