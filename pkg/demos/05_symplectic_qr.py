# Symplectic QR (SR) decomposition A = S R with S^T J S = J.
import numpy as np

from grdecomp import SymplecticJ, sr_elimination, sr_via_chol
from grdecomp.bench import SplitMix64, gen_random_cond, isometry_metric

d = sr_via_chol(2.0 * np.eye(4))
print("A = 2 I: Rhat =", np.diag(d.R_factors[0].Rhat), " S == I:", np.array_equal(d.S, np.eye(4)))

rng = SplitMix64(4)
n = 60
J = SymplecticJ(n)
runs = {
    "chol1": dict(),
    "chol2": dict(passes=2),
    "chol1-piv": dict(pivot_first=True),
    "chol2-piv-first": dict(passes=2, pivot_first=True),
}
print(f"\n{'cond':>6} {'method':>16} {'residual':>10} {'isometry':>10}")
for cond in (1e2, 1e5, 1e8):
    A = gen_random_cond(2 * n, 2 * n, cond, rng)
    for name, kw in runs.items():
        d = sr_via_chol(A, **kw)
        res = np.linalg.norm(A - d.apply_R(d.S)) / np.linalg.norm(A)
        print(f"{cond:6.0e} {name:>16} {res:10.1e} {isometry_metric(d.S, J, J):10.1e}")
    d = sr_elimination(A)
    res = np.linalg.norm(A - d.apply_R(d.S)) / np.linalg.norm(A)
    print(f"{cond:6.0e} {'elim':>16} {res:10.1e} {isometry_metric(d.S, J, J):10.1e}")

# single pass: R has the four-block pattern [[upper, strict upper], [strict upper, upper]]
Rs = sr_via_chol(A).structured_R()
print("\nnonzeros below the diagonal of R11:", np.count_nonzero(np.tril(Rs[:n, :n], -1)))
print("nonzeros on/below the diagonal of R21:", np.count_nonzero(np.tril(Rs[n:, :n])))
