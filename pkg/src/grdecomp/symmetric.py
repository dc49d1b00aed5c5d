"""Symmetric factorizations: Cholesky, Bunch-Kaufman LDL^T, and 2x2 block eigensolves."""

import warnings
from dataclasses import dataclass

import numpy as np

from .core import Permutation, as_matrix
from .exceptions import DimensionError, NotPositiveDefiniteError, RankDeficiencyError

__all__ = [
    "BK_ALPHA",
    "BlockDiagonal",
    "BKFactorization",
    "cholesky_upper",
    "bunch_kaufman",
    "block_eig",
    "eig_sym2x2",
]

BK_ALPHA = (1.0 + np.sqrt(17.0)) / 8.0
"""Partial-pivoting threshold of the Bunch-Kaufman rule."""

GROWTH_WARNING = 1e8


class BlockDiagonal:
    """Block-diagonal matrix with 1x1 blocks ``(d,)`` and symmetric 2x2 blocks ``(a, b, c)``.

    A 2x2 block ``(a, b, c)`` stands for ``[[a, b], [b, c]]``.
    """

    def __init__(self, blocks):
        blocks = tuple(tuple(float(v) for v in blk) for blk in blocks)
        for blk in blocks:
            if len(blk) not in (1, 3):
                raise ValueError(f"malformed block {blk!r}")
        self.blocks = blocks
        self.sizes = tuple(1 if len(b) == 1 else 2 for b in blocks)
        self.dim = sum(self.sizes)
        starts = np.cumsum((0,) + self.sizes[:-1]) if blocks else np.zeros(0, dtype=int)
        self.starts = tuple(int(s) for s in starts)

        # index/value tables for vectorized products
        one = [(s, b[0]) for s, b in zip(self.starts, blocks) if len(b) == 1]
        two = [(s,) + b for s, b in zip(self.starts, blocks) if len(b) == 3]
        self._i1 = np.array([t[0] for t in one], dtype=np.intp)
        self._d1 = np.array([t[1] for t in one])
        self._i2 = np.array([t[0] for t in two], dtype=np.intp)
        self._abc = np.array([t[1:] for t in two]).reshape(-1, 3)

    def __len__(self):
        return len(self.blocks)

    def __eq__(self, other):
        return isinstance(other, BlockDiagonal) and other.blocks == self.blocks

    def __repr__(self):
        return f"BlockDiagonal({list(self.blocks)!r})"

    def matrix(self):
        D = np.zeros((self.dim, self.dim))
        D[self._i1, self._i1] = self._d1
        i, j = self._i2, self._i2 + 1
        a, b, c = self._abc.T
        D[i, i] = a
        D[i, j] = b
        D[j, i] = b
        D[j, j] = c
        return D

    def matmul(self, X):
        """``D @ X``."""
        X = np.asarray(X, dtype=np.float64)
        if X.shape[0] != self.dim:
            raise DimensionError("operand does not conform")
        Y = np.empty_like(X)
        Y[self._i1] = self._d1.reshape((-1,) + (1,) * (X.ndim - 1)) * X[self._i1]
        i, j = self._i2, self._i2 + 1
        shape = (-1,) + (1,) * (X.ndim - 1)
        a, b, c = (col.reshape(shape) for col in self._abc.T)
        xi, xj = X[i], X[j]
        Y[i] = a * xi + b * xj
        Y[j] = b * xi + c * xj
        return Y

    def rmatmul(self, X):
        """``X @ D`` (D is symmetric, so this is ``(D @ X.T).T``)."""
        return self.matmul(np.asarray(X).T).T


@dataclass(frozen=True)
class BKFactorization:
    """``P @ L @ D @ L.T @ P.T == G`` with unit lower-triangular ``L``."""

    P: Permutation
    L: np.ndarray
    D: BlockDiagonal
    inertia: tuple

    def reconstruct(self):
        LD = self.D.rmatmul(self.L)
        PG = LD @ self.L.T
        inv = self.P.inverse().map
        return PG[np.ix_(inv, inv)]


def cholesky_upper(G):
    """Upper-triangular ``R`` with positive diagonal and ``R.T @ R == G``.

    Raises
    ------
    NotPositiveDefiniteError
        When a pivot is not positive; ``index`` holds its position.
    """
    G = as_matrix(G, "G")
    n = G.shape[0]
    if G.shape[1] != n:
        raise DimensionError("G must be square")
    R = np.zeros_like(G)
    for j in range(n):
        r = R[:j, j]
        pivot = G[j, j] - r @ r
        if not pivot > 0.0:
            raise NotPositiveDefiniteError(f"non-positive pivot {pivot:.3e} at index {j}", j)
        rjj = np.sqrt(pivot)
        R[j, j] = rjj
        if j + 1 < n:
            R[j, j + 1:] = (G[j, j + 1:] - r @ R[:j, j + 1:]) / rjj
    return R


def _swap_sym(A, i, j):
    A[[i, j], :] = A[[j, i], :]
    A[:, [i, j]] = A[:, [j, i]]


def bunch_kaufman(G, tol=0.0, alpha=BK_ALPHA):
    """Bunch-Kaufman factorization with partial pivoting of a symmetric matrix.

    The pivot search follows the classical rule: keep ``G[k, k]`` as a 1x1 pivot
    when it is large relative to its column, otherwise compare with the
    row of the largest subdiagonal entry and fall back to a 2x2 pivot.
    Ties go to the lowest row index.

    Parameters
    ----------
    G : (n, n) array_like
        Exactly symmetric matrix.
    tol : float
        Absolute threshold; a step whose diagonal entry and subdiagonal
        column are all ``<= tol`` is treated as singular.
    alpha : float
        Pivot threshold, ``(1 + sqrt(17)) / 8`` by default.

    Returns
    -------
    BKFactorization

    Raises
    ------
    RankDeficiencyError
        If a pivot column vanishes (``index`` is the step).
    """
    A = as_matrix(G, "G").copy()
    n = A.shape[0]
    if A.shape[1] != n:
        raise DimensionError("G must be square")
    if not np.array_equal(A, A.T):
        raise ValueError("G must be exactly symmetric")

    L = np.eye(n)
    perm = np.arange(n)
    blocks = []
    k = 0
    while k < n:
        absakk = abs(A[k, k])
        if k + 1 < n:
            imax = k + 1 + int(np.argmax(np.abs(A[k + 1:, k])))
            colmax = abs(A[imax, k])
        else:
            imax, colmax = k, 0.0

        if max(absakk, colmax) <= tol:
            raise RankDeficiencyError(f"zero pivot column at step {k}", k)

        size, kp = 1, k
        if absakk < alpha * colmax:
            row = np.abs(A[imax, k:])
            row[imax - k] = 0.0
            rowmax = row.max()
            if absakk * rowmax >= alpha * colmax * colmax:
                pass
            elif abs(A[imax, imax]) >= alpha * rowmax:
                kp = imax
            else:
                size, kp = 2, imax

        kk = k + size - 1
        if kp != kk:
            _swap_sym(A, kk, kp)
            perm[[kk, kp]] = perm[[kp, kk]]
            L[[kk, kp], :k] = L[[kp, kk], :k]

        if size == 1:
            d = A[k, k]
            w = A[k + 1:, k].copy()
            L[k + 1:, k] = w / d
            A[k + 1:, k + 1:] -= np.outer(w, w) / d
            blocks.append((d,))
        else:
            a, b, c = A[k, k], A[k + 1, k], A[k + 1, k + 1]
            W = A[k + 2:, k:k + 2]
            if W.size:
                # W @ inv([[a, b], [b, c]]) in the scaled form that avoids forming the inverse
                d11 = c / b
                d22 = a / b
                t = 1.0 / (d11 * d22 - 1.0)
                s = t / b
                l1 = s * (d11 * W[:, 0] - W[:, 1])
                l2 = s * (d22 * W[:, 1] - W[:, 0])
                T = np.outer(W[:, 0], l1) + np.outer(W[:, 1], l2)
                A[k + 2:, k + 2:] -= 0.5 * (T + T.T)
                L[k + 2:, k] = l1
                L[k + 2:, k + 1] = l2
            blocks.append((a, b, c))
        k += size

    growth = np.max(np.abs(L))
    if growth > GROWTH_WARNING:
        warnings.warn(f"large element growth in L: max|L| = {growth:.2e}", RuntimeWarning,
                      stacklevel=2)

    D = BlockDiagonal(blocks)
    n_pos = n_neg = n_zero = 0
    for blk in D.blocks:
        if len(blk) == 3:
            n_pos += 1
            n_neg += 1
        elif blk[0] > 0:
            n_pos += 1
        elif blk[0] < 0:
            n_neg += 1
        else:
            n_zero += 1
    return BKFactorization(Permutation(perm), L, D, (n_pos, n_neg, n_zero))


def eig_sym2x2(a, b, c):
    """Jacobi rotation diagonalizing ``[[a, b], [b, c]]``.

    Returns ``(cs, sn, lam1, lam2)`` such that with ``J = [[cs, sn], [-sn, cs]]``
    ``J.T @ [[a, b], [b, c]] @ J == diag(lam1, lam2)``.
    """
    if b == 0.0:
        return 1.0, 0.0, a, c
    tau = (c - a) / (2.0 * b)
    sign = 1.0 if tau >= 0.0 else -1.0
    t = sign / (abs(tau) + np.hypot(1.0, tau))
    cs = 1.0 / np.hypot(1.0, t)
    sn = t * cs
    return cs, sn, a - t * b, c + t * b


def block_eig(D):
    """Diagonalize a block-diagonal ``D = V @ diag(lam) @ V.T`` block by block.

    Returns
    -------
    V : BlockDiagonal
        Orthogonal and symmetric: 2x2 blocks are Householder-type reflections
        ``[[cs, -sn], [-sn, -cs]]`` (a Jacobi rotation with its first column
        negated), 1x1 blocks are ``1``.
    magnitudes, signs : ndarray
        ``|lam|`` and ``sign(lam)``, so that ``lam == signs * magnitudes``.
    """
    vblocks = []
    lam = np.empty(D.dim)
    pos = 0
    for blk in D.blocks:
        if len(blk) == 1:
            vblocks.append((1.0,))
            lam[pos] = blk[0]
            pos += 1
        else:
            cs, sn, l1, l2 = eig_sym2x2(*blk)
            vblocks.append((cs, -sn, -cs))
            lam[pos], lam[pos + 1] = l1, l2
            pos += 2
    return BlockDiagonal(vblocks), np.abs(lam), np.sign(lam)
