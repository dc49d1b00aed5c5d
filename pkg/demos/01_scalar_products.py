# Scalar products, adjoints and the perfect shuffle.
import numpy as np

from grdecomp import Identity, Signature, SymplecticJ, adjoint, bilinear_form, gram, perfect_shuffle

x = np.array([1.0, 0.0])
y = np.array([0.0, 1.0])
print("<x, y>_I     =", bilinear_form(x, y, Identity(2)))
print("<y, y>_Sigma =", bilinear_form(y, y, Signature([1, -1])))
print("<x, y>_J     =", bilinear_form(x, y, SymplecticJ(1)))
print("<y, x>_J     =", bilinear_form(y, x, SymplecticJ(1)))  # J is skew

# the adjoint w.r.t. Sigma is Sigma A^T Sigma
s = Signature([1, -1])
A = np.array([[0.0, 1.0], [1.0, 0.0]])
print("Sigma-adjoint of the swap:\n", adjoint(A, s, s))

# <Ax, y>_M == <x, A* y>_N holds for any pair of scalar products
rng = np.random.default_rng(0)
M, N = SymplecticJ(2), Signature([1, -1, -1])
B = rng.standard_normal((4, 3))
u, v = rng.standard_normal(3), rng.standard_normal(4)
print("adjoint identity gap:", bilinear_form(B @ u, v, M) - bilinear_form(u, adjoint(B, M, N) @ v, N))

# perfect shuffle turns J into 2x2 blocks
P = perfect_shuffle(3).matrix()
print("P J P^T =\n", (P @ SymplecticJ(3).matrix() @ P.T).astype(int))

# Gram matrices come out exactly (skew-)symmetric
C = rng.standard_normal((6, 4))
G = gram(C, SymplecticJ(3))
print("gram w.r.t. J is exactly skew:", np.array_equal(G, -G.T))
