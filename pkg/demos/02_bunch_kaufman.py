# Bunch-Kaufman LDL^T of a symmetric indefinite matrix, and its inertia.
import numpy as np

from grdecomp import block_eig, bunch_kaufman

# zero diagonal: no 1x1 pivot is acceptable, so BK takes a 2x2 block
F = bunch_kaufman(np.array([[0.0, 1.0], [1.0, 0.0]]))
print("D blocks:", F.D.blocks, " inertia:", F.inertia)

rng = np.random.default_rng(1)
X = rng.standard_normal((8, 8))
G = X + X.T
F = bunch_kaufman(G)
print("block sizes:", F.D.sizes)
print("inertia (pos, neg, zero):", F.inertia)
print("eigenvalue signs        :", (np.sum(np.linalg.eigvalsh(G) > 0), np.sum(np.linalg.eigvalsh(G) < 0)))
print("reconstruction error:", np.linalg.norm(F.reconstruct() - G) / np.linalg.norm(G))
print("max |L|:", np.abs(F.L).max())

# the 2x2 blocks of D are diagonalized by one Jacobi rotation each
V, mag, sgn = block_eig(F.D)
Vm = V.matrix()
print("D == V diag(lambda) V^T:", np.allclose(Vm @ np.diag(sgn * mag) @ Vm.T, F.D.matrix()))
