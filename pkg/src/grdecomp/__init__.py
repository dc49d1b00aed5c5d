"""GR decompositions (QR, hyperbolic HR, symplectic SR) via Cholesky-like factorizations."""

from .core import (Identity, Permutation, ScalarProduct, Signature, SymplecticJ, adjoint,
                   bilinear_form, frobenius_norm, gram, perfect_shuffle, right_tri_solve)
from .decompositions import (HRDecomposition, QRDecomposition, SRDecomposition, cholesky_qr,
                             cholesky_qr2, hr_via_ldl, sr_via_chol)
from .elimination import hr_elimination, sr_elimination
from .exceptions import (BreakdownError, DimensionError, FactorizationError,
                         NotPositiveDefiniteError, RankDeficiencyError, SingularMatrixError,
                         StructuralSingularityError)
from .skew import SkewCholFactorization, reconstruct, skew_chol_like
from .symmetric import BKFactorization, BlockDiagonal, block_eig, bunch_kaufman, cholesky_upper

__version__ = "0.1.0"
