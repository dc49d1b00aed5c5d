"""Elimination-based HR and SR decompositions, used as reference baselines.

Both routines reduce ``A`` column by column with structure-preserving
transformations ``T`` and accumulate ``Q = T^{-1}`` so that ``A = Q [R; 0]``.
"""

import numpy as np

from .core import Signature, as_matrix, perfect_shuffle
from .decompositions import HRDecomposition, SkewFactor, SRDecomposition, TriangularFactor
from .exceptions import BreakdownError, DimensionError

__all__ = ["hr_elimination", "sr_elimination"]


def _householder(x):
    """Unit ``v`` and ``beta`` with ``(I - 2 v v^T) x = beta e_1``; ``None`` if x is already there."""
    if not np.any(x[1:]):
        return None
    normx = np.linalg.norm(x)
    beta = -normx if x[0] >= 0 else normx
    v = x.copy()
    v[0] -= beta
    v /= np.linalg.norm(v)
    return v, beta


def _reflect_rows(W, rows, v, cols=slice(None)):
    block = W[rows, cols]
    W[rows, cols] = block - 2.0 * np.outer(v, v @ block)


def _reflect_cols(Q, cols, v):
    block = Q[:, cols]
    Q[:, cols] = block - 2.0 * np.outer(block @ v, v)


def hr_elimination(A, sigma_m, tol=np.finfo(np.float64).eps):
    """Hyperbolic QR by successive column elimination.

    Within each sign class of the current signature an orthogonal
    Householder reflector compresses the column onto its first row; the two
    survivors are merged by a hyperbolic rotation. The pivot row is then
    swapped into place, carrying its sign along, so ``sigma_out`` is a
    reordering of a subset of ``sigma_m``.

    Raises
    ------
    BreakdownError
        When a column has (numerically) zero Sigma-norm, i.e.
        ``|alpha**2 - beta**2| <= tol * (alpha**2 + beta**2)``.
    """
    A = as_matrix(A)
    if not isinstance(sigma_m, Signature):
        sigma_m = Signature(sigma_m)
    m, n = A.shape
    if sigma_m.dim != m:
        raise DimensionError(f"signature has length {sigma_m.dim}, A has {m} rows")
    if n > m:
        raise DimensionError("hr_elimination needs rows >= cols")

    W = A.copy()
    Q = np.eye(m)
    sig = sigma_m.signs.copy()
    for j in range(n):
        rows = np.arange(j, m)
        firsts = []
        for idx in (rows[sig[j:] > 0], rows[sig[j:] < 0]):
            if idx.size == 0:
                firsts.append(None)
                continue
            h = _householder(W[idx, j])
            if h is not None:
                v, beta = h
                _reflect_rows(W, idx, v, slice(j + 1, None))
                W[idx, j] = 0.0
                W[idx[0], j] = beta
                _reflect_cols(Q, idx, v)
            firsts.append(idx[0])

        p, q = firsts
        if p is None or q is None:
            piv = q if p is None else p
        else:
            alpha, beta = W[p, j], W[q, j]
            if beta == 0.0:
                piv = p
            elif alpha == 0.0:
                piv = q
            else:
                diff = alpha * alpha - beta * beta
                if abs(diff) <= tol * (alpha * alpha + beta * beta):
                    raise BreakdownError(f"isotropic column at step {j}", j)
                rho = np.sqrt(abs(diff))
                # T = [[x, -y], [-y, x]] / rho keeps the surviving entry at x's row
                if diff > 0:
                    x, y, piv, other = alpha, beta, p, q
                else:
                    x, y, piv, other = beta, alpha, q, p
                pair = [piv, other]
                rows2 = W[pair, j + 1:]
                W[pair, j + 1:] = np.array([[x, -y], [-y, x]]) @ rows2 / rho
                W[piv, j] = rho
                W[other, j] = 0.0
                Q[:, pair] = Q[:, pair] @ (np.array([[x, y], [y, x]]) / rho)
        if piv != j:
            W[[j, piv]] = W[[piv, j]]
            sig[[j, piv]] = sig[[piv, j]]
            Q[:, [j, piv]] = Q[:, [piv, j]]

    R = W[:n].copy()
    return HRDecomposition(Q[:, :n].copy(), (TriangularFactor(R),), Signature(sig[:n]))


def _sympl_householder(W, Q, m, rows, col, bottom):
    """Apply ``diag(H, H)`` on top rows ``rows`` and their bottom partners.

    ``H`` compresses the top (or bottom) part of column ``col`` onto the first row.
    """
    target = rows + m if bottom else rows
    h = _householder(W[target, col])
    if h is None:
        return
    v, beta = h
    for r in (rows, rows + m):
        _reflect_rows(W, r, v)
        _reflect_cols(Q, r, v)
    W[target, col] = 0.0
    W[target[0], col] = beta


def _sympl_givens(W, Q, m, i, col):
    """Rotate in the (i, m+i) plane to annihilate ``W[m+i, col]``."""
    a, b = W[i, col], W[m + i, col]
    if b == 0.0:
        return
    r = np.hypot(a, b)
    G = np.array([[a, b], [-b, a]]) / r
    pair = [i, m + i]
    W[pair] = G @ W[pair]
    W[i, col], W[m + i, col] = r, 0.0
    Q[:, pair] = Q[:, pair] @ G.T


def sr_elimination(A):
    """Symplectic QR by successive elimination (SR decomposition).

    For each ``j`` column ``j`` is reduced with a symplectic Householder
    ``diag(H, H)``, a symplectic Givens rotation and a second Householder;
    column ``n + j`` gets the same treatment on the rows below ``j`` followed
    by a symplectic Gauss shear ``[[I, T], [0, I]]`` (``T`` symmetric) that
    uses ``R[n + j, n + j]`` as pivot. ``R`` ends up in the form
    ``[[upper, strictly upper], [strictly upper, upper]]``.

    Raises
    ------
    BreakdownError
        If the Gauss pivot of column ``n + j`` vanishes (``index`` is ``j``).
    """
    A = as_matrix(A)
    rows_, cols_ = A.shape
    if rows_ % 2 or cols_ % 2:
        raise DimensionError("A must have even numbers of rows and columns")
    m, n = rows_ // 2, cols_ // 2
    if n > m:
        raise DimensionError("sr_elimination needs rows >= cols")

    W = A.copy()
    Q = np.eye(2 * m)
    for j in range(n):
        below = np.arange(j, m)
        _sympl_householder(W, Q, m, below, j, bottom=True)
        _sympl_givens(W, Q, m, j, j)
        _sympl_householder(W, Q, m, below, j, bottom=False)

        c = n + j
        if j + 1 < m:
            below = np.arange(j + 1, m)
            _sympl_householder(W, Q, m, below, c, bottom=True)
            _sympl_givens(W, Q, m, j + 1, c)
            _sympl_householder(W, Q, m, below, c, bottom=False)

        y = W[m + j, c]
        x0 = W[j, c]
        x1 = W[j + 1, c] if j + 1 < m else 0.0
        if x0 == 0.0 and x1 == 0.0:
            continue
        if y == 0.0:
            raise BreakdownError(f"zero Gauss pivot in column {c}", j)
        t0, t1 = -x0 / y, -x1 / y
        W[j] += t0 * W[m + j]
        Q[:, m + j] -= t0 * Q[:, j]
        if j + 1 < m:
            W[j] += t1 * W[m + j + 1]
            W[j + 1] += t1 * W[m + j]
            Q[:, m + j] -= t1 * Q[:, j + 1]
            Q[:, m + j + 1] -= t1 * Q[:, j]
            W[j + 1, c] = 0.0
        W[j, c] = 0.0

    keep = np.concatenate([np.arange(n), m + np.arange(n)])
    R = W[keep]
    Ps = perfect_shuffle(n)
    inter = Ps.inverse().map
    Rhat = R[np.ix_(inter, inter)]
    return SRDecomposition(Q[:, keep].copy(), (SkewFactor(Rhat, Ps),), (m, n))
