"""Dense building blocks: scalar products, permutations, Gram matrices, solves.

Matrices are plain ``float64`` numpy arrays. All indices are 0-based; the
1-based column numbering used in the literature (``e_1, e_3, ...``) maps to
``0, 2, ...`` here.
"""

import numpy as np
from scipy.linalg import solve_triangular

from .exceptions import DimensionError, SingularMatrixError

__all__ = [
    "ScalarProduct",
    "Identity",
    "Signature",
    "SymplecticJ",
    "Permutation",
    "as_matrix",
    "bilinear_form",
    "adjoint",
    "perfect_shuffle",
    "gram",
    "right_tri_solve",
    "frobenius_norm",
]


def as_matrix(A, name="A"):
    """Return ``A`` as a 2-D float64 array, rejecting NaN/Inf entries."""
    A = np.asarray(A, dtype=np.float64)
    if A.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} contains non-finite entries")
    return A


def _as_vector(x, name):
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise DimensionError(f"{name} must be 1-D, got shape {x.shape}")
    return x


class ScalarProduct:
    """Nonsingular matrix ``M`` defining the bilinear form ``x^T M y``.

    Subclasses never build ``M`` densely in kernels; they apply it through
    sign flips or index swaps. ``matrix()`` is provided for tests and display.
    """

    dim: int

    def apply(self, X):
        """Return ``M @ X`` (``X`` is a vector or has ``dim`` rows)."""
        raise NotImplementedError

    def apply_transpose(self, X):
        raise NotImplementedError

    def apply_inverse(self, X):
        raise NotImplementedError

    def matrix(self):
        return self.apply(np.eye(self.dim))

    def _check(self, n, what):
        if n != self.dim:
            raise DimensionError(f"{what} has length {n}, scalar product has dimension {self.dim}")


class Identity(ScalarProduct):
    """Euclidean inner product on R^dim."""

    def __init__(self, dim):
        if dim < 1:
            raise ValueError("dim must be positive")
        self.dim = int(dim)

    def apply(self, X):
        self._check(np.shape(X)[0], "operand")
        return np.array(X, dtype=np.float64)

    apply_transpose = apply
    apply_inverse = apply

    def __eq__(self, other):
        return isinstance(other, Identity) and other.dim == self.dim

    def __repr__(self):
        return f"Identity({self.dim})"


class Signature(ScalarProduct):
    """Indefinite product ``diag(signs)`` with every sign equal to +1 or -1."""

    def __init__(self, signs):
        signs = np.asarray(signs, dtype=np.float64).ravel()
        if signs.size == 0 or not np.all(np.abs(signs) == 1.0):
            raise ValueError("signature entries must be +1 or -1")
        signs.setflags(write=False)
        self.signs = signs
        self.dim = signs.size

    def apply(self, X):
        X = np.asarray(X, dtype=np.float64)
        self._check(X.shape[0], "operand")
        if X.ndim == 1:
            return self.signs * X
        return self.signs[:, None] * X

    apply_transpose = apply
    apply_inverse = apply

    @property
    def n_pos(self):
        return int(np.count_nonzero(self.signs > 0))

    @property
    def n_neg(self):
        return int(np.count_nonzero(self.signs < 0))

    def __eq__(self, other):
        return isinstance(other, Signature) and np.array_equal(other.signs, self.signs)

    def __repr__(self):
        return f"Signature({self.signs.astype(int).tolist()})"


class SymplecticJ(ScalarProduct):
    """Skew product ``J = [[0, I_m], [-I_m, 0]]`` on R^(2m)."""

    def __init__(self, half_dim):
        if half_dim < 1:
            raise ValueError("half_dim must be positive")
        self.half_dim = int(half_dim)
        self.dim = 2 * self.half_dim

    def apply(self, X):
        X = np.asarray(X, dtype=np.float64)
        self._check(X.shape[0], "operand")
        m = self.half_dim
        return np.concatenate([X[m:], -X[:m]])

    def apply_transpose(self, X):
        X = np.asarray(X, dtype=np.float64)
        self._check(X.shape[0], "operand")
        m = self.half_dim
        return np.concatenate([-X[m:], X[:m]])

    # J^{-1} = -J = J^T
    apply_inverse = apply_transpose

    def __eq__(self, other):
        return isinstance(other, SymplecticJ) and other.half_dim == self.half_dim

    def __repr__(self):
        return f"SymplecticJ({self.half_dim})"


class Permutation:
    """Permutation of ``{0, ..., k-1}`` stored as an index map.

    The associated matrix ``P`` has ``e_{map[j]}`` as its j-th column, so
    ``A @ P == A[:, map]`` and ``P.T @ x == x[map]``.
    """

    def __init__(self, map):
        p = np.asarray(map, dtype=np.intp).ravel()
        if not np.array_equal(np.sort(p), np.arange(p.size)):
            raise ValueError("map is not a bijection on 0..k-1")
        p.setflags(write=False)
        self.map = p

    @classmethod
    def identity(cls, k):
        return cls(np.arange(k))

    def __len__(self):
        return self.map.size

    def inverse(self):
        return Permutation(np.argsort(self.map, kind="stable"))

    def __matmul__(self, other):
        # P(a) @ P(b) == P(a[b])
        if len(other) != len(self):
            raise DimensionError("permutation sizes differ")
        return Permutation(self.map[other.map])

    def matrix(self):
        P = np.zeros((len(self), len(self)))
        P[self.map, np.arange(len(self))] = 1.0
        return P

    def apply_right(self, X):
        """``X @ P``."""
        return np.asarray(X)[:, self.map]

    def apply_right_transpose(self, X):
        """``X @ P.T``."""
        return np.asarray(X)[:, np.argsort(self.map, kind="stable")]

    def is_identity(self):
        return bool(np.array_equal(self.map, np.arange(len(self))))

    def __eq__(self, other):
        return isinstance(other, Permutation) and np.array_equal(self.map, other.map)

    def __repr__(self):
        return f"Permutation({self.map.tolist()})"


def bilinear_form(x, y, M):
    """Evaluate ``<x, y>_M = x^T M y``."""
    x = _as_vector(x, "x")
    y = _as_vector(y, "y")
    if x.size != y.size:
        raise DimensionError("x and y have different lengths")
    return float(x @ M.apply(y))


def adjoint(A, M, N):
    """Return the (M, N)-adjoint ``N^{-1} A^T M`` of ``A``.

    It is the unique matrix with ``<A x, y>_M == <x, adjoint(A) y>_N``.
    """
    A = as_matrix(A)
    if M.dim != A.shape[0] or N.dim != A.shape[1]:
        raise DimensionError(
            f"A is {A.shape[0]}x{A.shape[1]}, scalar products have dims {M.dim}, {N.dim}"
        )
    # A^T M = (M^T A)^T
    return N.apply_inverse(M.apply_transpose(A).T)


def perfect_shuffle(n):
    """Permutation with columns ``e_1, e_3, ..., e_{2n-1}, e_2, e_4, ..., e_{2n}``.

    Conjugating ``J_n`` with it gives ``blockdiag([[0, 1], [-1, 0]])``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    return Permutation(np.concatenate([np.arange(0, 2 * n, 2), np.arange(1, 2 * n, 2)]))


def gram(A, M):
    """Return ``A^T M A``, made exactly symmetric (or skew for ``SymplecticJ``)."""
    A = as_matrix(A)
    if M.dim != A.shape[0]:
        raise DimensionError(f"A has {A.shape[0]} rows, scalar product has dimension {M.dim}")
    G = A.T @ M.apply(A)
    if isinstance(M, SymplecticJ):
        return 0.5 * (G - G.T)
    return 0.5 * (G + G.T)


def right_tri_solve(B, R, unit_diagonal=False):
    """Solve ``X @ R = B`` for upper-triangular ``R`` by substitution.

    Raises
    ------
    SingularMatrixError
        If a diagonal entry of ``R`` is zero or subnormal (not checked when
        ``unit_diagonal`` is set).
    """
    B = np.asarray(B, dtype=np.float64)
    R = np.asarray(R, dtype=np.float64)
    if R.ndim != 2 or R.shape[0] != R.shape[1]:
        raise DimensionError("R must be square")
    if B.ndim != 2 or B.shape[1] != R.shape[0]:
        raise DimensionError(f"B has shape {B.shape}, R is {R.shape[0]}x{R.shape[0]}")
    if not unit_diagonal:
        bad = np.flatnonzero(np.abs(np.diag(R)) < np.finfo(np.float64).tiny)
        if bad.size:
            raise SingularMatrixError(f"zero or subnormal pivot at index {bad[0]}", int(bad[0]))
    # X R = B  <=>  R^T X^T = B^T
    X = solve_triangular(R, B.T, trans="T", lower=False, unit_diagonal=unit_diagonal,
                         check_finite=False)
    return np.ascontiguousarray(X.T)


def frobenius_norm(A):
    return float(np.linalg.norm(np.asarray(A, dtype=np.float64)))
