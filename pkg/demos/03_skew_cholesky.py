# Cholesky-like factorization of a skew-symmetric matrix: Pi B Pi^T = Rhat^T Jhat Rhat.
import numpy as np

from grdecomp import reconstruct, skew_chol_like

F = skew_chol_like([[0.0, 4.0], [-4.0, 0.0]])
print("Rhat for b = 4:\n", F.Rhat)
F = skew_chol_like([[0.0, -4.0], [4.0, 0.0]])
print("Rhat for b = -4 (sign sits on the second entry):\n", F.Rhat)

rng = np.random.default_rng(2)
X = rng.standard_normal((10, 10))
B = X - X.T
for pivoting in (False, True):
    F = skew_chol_like(B, pivoting=pivoting)
    err = np.linalg.norm(reconstruct(F) - B) / np.linalg.norm(B)
    print(f"pivoting={pivoting!s:5}  reconstruction {err:.1e}  max|Rhat| {np.abs(F.Rhat).max():.2f}")

# pivots are products of the diagonal pairs
k = np.arange(0, 10, 2)
print("r11*r22 == pivot:", np.allclose(F.Rhat[k, k] * F.Rhat[k + 1, k + 1], F.pivots))
print("permutation:", F.Pi.map)
