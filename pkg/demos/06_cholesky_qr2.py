# CholeskyQR and CholeskyQR2 on a tall matrix.
import numpy as np

from grdecomp import NotPositiveDefiniteError, cholesky_qr, cholesky_qr2
from grdecomp.bench import SplitMix64, gen_random_cond

for cond in (1e2, 1e4, 1e6, 1e8, 1e10):
    A = gen_random_cond(200, 50, cond, SplitMix64(5))
    row = [f"cond {cond:6.0e}"]
    for name, fn in (("cholqr", cholesky_qr), ("cholqr2", cholesky_qr2)):
        try:
            Q = fn(A).Q
            row.append(f"{name} {np.linalg.norm(Q.T @ Q - np.eye(50)):.1e}")
        except NotPositiveDefiniteError as exc:
            row.append(f"{name} fails at pivot {exc.index}")
    print("  ".join(row))
