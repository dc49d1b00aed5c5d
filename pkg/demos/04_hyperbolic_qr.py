# Hyperbolic QR (HR) decomposition A = H R with H^T Sigma H = Sigma_n.
import numpy as np

from grdecomp import Signature, hr_elimination, hr_via_ldl
from grdecomp.bench import SplitMix64, gen_random_cond, gen_signature, isometry_metric

d = hr_via_ldl(np.diag([2.0, 1.0]), Signature([1, -1]))
print("diag(2, 1): R =", d.full_R().tolist(), " H =", d.H.tolist(), " Sigma_n =", d.sigma_out)

rng = SplitMix64(3)
n = 120
print(f"\n{'cond':>6} {'method':>6} {'residual':>10} {'isometry':>10}")
for cond in (1e2, 1e5, 1e8):
    A = gen_random_cond(n, n, cond, rng)
    sigma = gen_signature(n, rng)
    for name, d in (("ldl1", hr_via_ldl(A, sigma)),
                    ("ldl2", hr_via_ldl(A, sigma, passes=2)),
                    ("elim", hr_elimination(A, sigma))):
        res = np.linalg.norm(A - d.apply_R(d.H)) / np.linalg.norm(A)
        iso = isometry_metric(d.H, sigma, d.sigma_out)
        print(f"{cond:6.0e} {name:>6} {res:10.1e} {iso:10.1e}")

# R is block upper triangular once its columns are permuted back
f = hr_via_ldl(A, sigma).R_factors[0]
print("\nBK block sizes in the last R:", f.blocks.count(1), "x 1x1,", f.blocks.count(2), "x 2x2")
