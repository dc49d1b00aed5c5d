"""Accuracy-versus-condition experiments for the GR decompositions.

Random numbers come from a counter-based SplitMix64 stream so that a seed
means the same matrices on every platform:

* ``uint64`` output ``i`` (0-based) of a stream with state ``s`` is
  ``mix64(s + (i + 1) * 0x9E3779B97F4A7C15)`` (mod 2**64), where ``mix64`` is
  the SplitMix64 finalizer (xor-shift 30/27/31 with multipliers
  ``0xBF58476D1CE4E5B9`` and ``0x94D049BB133111EB``).
* uniforms are ``(x >> 11) * 2**-53``; normals come in pairs from Box-Muller,
  ``sqrt(-2 log(1 - u1)) * (cos(2 pi u2), sin(2 pi u2))``.
* the stream of sweep cell ``(cond_index, trial)`` has state
  ``derive_seed(seed, cond_index, trial)``.
* matrices are filled column by column.
"""

import csv
import math
import os
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import Identity, Signature, SymplecticJ, as_matrix
from .decompositions import cholesky_qr, cholesky_qr2, hr_via_ldl, sr_via_chol
from .elimination import hr_elimination, sr_elimination
from .exceptions import DimensionError

__all__ = [
    "SplitMix64",
    "derive_seed",
    "gen_random_cond",
    "gen_signature",
    "residual_metric",
    "isometry_metric",
    "METHODS",
    "DEFAULT_SIZES",
    "REFERENCE_SIZES",
    "ExperimentConfig",
    "MetricRecord",
    "run_sweep",
    "write_csv",
    "read_csv",
    "CSV_HEADER",
]

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix64(z):
    """SplitMix64 finalizer on a ``uint64`` array."""
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def _mix64_int(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def derive_seed(seed, *keys):
    """Fold integer ``keys`` into ``seed``: ``h = mix64(h ^ (k * GAMMA + 1))`` per key."""
    h = int(seed) & _MASK
    for k in keys:
        h = _mix64_int(h ^ ((int(k) * _GAMMA + 1) & _MASK))
    return h


class SplitMix64:
    """Counter-based SplitMix64 stream."""

    def __init__(self, seed):
        self.state = int(seed) & _MASK
        self.counter = 0

    def integers(self, count):
        idx = np.arange(self.counter + 1, self.counter + 1 + count, dtype=np.uint64)
        self.counter += count
        with np.errstate(over="ignore"):
            return _mix64(np.uint64(self.state) + idx * np.uint64(_GAMMA))

    def uniform(self, count):
        """Doubles in ``[0, 1)`` with 53 random bits."""
        return (self.integers(count) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def normal(self, count):
        pairs = (count + 1) // 2
        u = self.uniform(2 * pairs)
        radius = np.sqrt(-2.0 * np.log1p(-u[0::2]))
        angle = 2.0 * np.pi * u[1::2]
        z = np.empty(2 * pairs)
        z[0::2] = radius * np.cos(angle)
        z[1::2] = radius * np.sin(angle)
        return z[:count]

    def normal_matrix(self, rows, cols):
        return self.normal(rows * cols).reshape(cols, rows).T.copy()


def gen_random_cond(rows, cols, cond, rng):
    """``U @ diag(s) @ V.T`` with ``s`` log-spaced from 1 down to ``1/cond``.

    ``U`` (rows x cols) and ``V`` (cols x cols) are Gaussian matrices
    orthonormalized with CholeskyQR2, so the 2-norm condition number of the
    result is ``cond`` up to rounding.
    """
    if rows < cols or cols < 1:
        raise DimensionError("need rows >= cols >= 1")
    if not cond >= 1.0:
        raise ValueError("cond must be >= 1")
    if cond > 1e300:
        raise ValueError("cond too large: smallest singular value would underflow")
    U = cholesky_qr2(rng.normal_matrix(rows, cols)).Q
    V = cholesky_qr2(rng.normal_matrix(cols, cols)).Q
    s = np.logspace(0.0, -math.log10(cond), cols) if cols > 1 else np.ones(1)
    return (U * s) @ V.T


def gen_signature(m, rng):
    """Signature with ``ceil(m/2)`` entries +1 and ``floor(m/2)`` entries -1, shuffled."""
    if m < 2:
        raise ValueError("m must be at least 2")
    signs = np.concatenate([np.ones((m + 1) // 2), -np.ones(m // 2)])
    u = rng.uniform(m - 1)
    # Fisher-Yates, i = m-1 .. 1
    for t, i in enumerate(range(m - 1, 0, -1)):
        j = int(u[t] * (i + 1))
        signs[i], signs[j] = signs[j], signs[i]
    return Signature(signs)


def residual_metric(A, G, R):
    """``||A - G R||_F / ||A||_F``; ``R`` is a matrix or a callable returning ``X @ R``."""
    A = as_matrix(A)
    GR = R(G) if callable(R) else np.asarray(G) @ np.asarray(R)
    if GR.shape != A.shape:
        raise DimensionError(f"G R has shape {GR.shape}, A has {A.shape}")
    return float(np.linalg.norm(A - GR) / np.linalg.norm(A))


def isometry_metric(G, M, N):
    """``||G^T M G - N||_F`` with ``M`` and ``N`` applied without forming them."""
    G = np.asarray(G, dtype=np.float64)
    if G.shape != (M.dim, N.dim):
        raise DimensionError(f"G has shape {G.shape}, expected {(M.dim, N.dim)}")
    E = G.T @ M.apply(G)
    k = N.dim
    if isinstance(N, SymplecticJ):
        h = N.half_dim
        i = np.arange(h)
        E[i, h + i] -= 1.0
        E[h + i, i] += 1.0
    elif isinstance(N, Signature):
        E[np.arange(k), np.arange(k)] -= N.signs
    else:
        E[np.arange(k), np.arange(k)] -= 1.0
    return float(np.linalg.norm(E))


# method id -> (passes/flags) per family; each runner returns (G, apply_R, M, N)
def _hr(passes):
    def run(A, sigma):
        d = hr_via_ldl(A, sigma, passes=passes)
        return d.H, d.apply_R, sigma, d.sigma_out
    return run


def _hr_elim(A, sigma):
    d = hr_elimination(A, sigma)
    return d.H, d.apply_R, sigma, d.sigma_out


def _sr(passes, pivot_first=False):
    def run(A, sigma):
        d = sr_via_chol(A, passes=passes, pivot_first=pivot_first)
        m, n = d.half_dims
        return d.S, d.apply_R, SymplecticJ(m), SymplecticJ(n)
    return run


def _sr_elim(A, sigma):
    d = sr_elimination(A)
    m, n = d.half_dims
    return d.S, d.apply_R, SymplecticJ(m), SymplecticJ(n)


def _qr(fn):
    def run(A, sigma):
        d = fn(A)
        return d.Q, d.R, Identity(A.shape[0]), Identity(A.shape[1])
    return run


def _qr_elim(A, sigma):
    d = hr_elimination(A, Signature(np.ones(A.shape[0])))
    return d.H, d.apply_R, Identity(A.shape[0]), Identity(A.shape[1])


METHODS = {
    "hr": {"elim": _hr_elim, "ldl1": _hr(1), "ldl2": _hr(2)},
    "sr": {
        "elim": _sr_elim,
        "chol1": _sr(1),
        "chol2": _sr(2),
        "chol1-piv": _sr(1, pivot_first=True),
        "chol2-piv-first": _sr(2, pivot_first=True),
    },
    "qr": {"elim": _qr_elim, "cholqr": _qr(cholesky_qr), "cholqr2": _qr(cholesky_qr2)},
}

DEFAULT_SIZES = {"hr": 200, "sr": 400, "qr": 200}
REFERENCE_SIZES = {"hr": 500, "sr": 1000, "qr": 500}
DEFAULT_CONDS = (1e2, 1e4, 1e6, 1e8)


def matrix_shape(family, size):
    """Shape of the test matrices; QR uses tall ``size x size//4`` matrices."""
    if family == "qr":
        return size, max(1, size // 4)
    return size, size


@dataclass(frozen=True)
class ExperimentConfig:
    family: str
    size: int = None
    conds: tuple = DEFAULT_CONDS
    methods: tuple = None
    trials: int = 3
    seed: int = 0
    output_path: str = None
    timing: bool = False

    def __post_init__(self):
        if self.family not in METHODS:
            raise ValueError(f"unknown family {self.family!r}")
        if self.size is None:
            object.__setattr__(self, "size", DEFAULT_SIZES[self.family])
        if self.methods is None:
            object.__setattr__(self, "methods", tuple(METHODS[self.family]))
        object.__setattr__(self, "methods", tuple(self.methods))
        object.__setattr__(self, "conds", tuple(float(c) for c in self.conds))
        unknown = [m for m in self.methods if m not in METHODS[self.family]]
        if unknown:
            raise ValueError(f"unknown methods for {self.family}: {unknown}")
        if self.size < 2 or (self.family == "sr" and self.size % 2):
            raise ValueError("size must be >= 2 (and even for sr)")
        if not self.conds or any(not c >= 1.0 for c in self.conds):
            raise ValueError("conds must be non-empty and >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 <= self.seed <= _MASK:
            raise ValueError("seed must fit in 64 bits")


@dataclass(frozen=True)
class MetricRecord:
    family: str
    method: str
    cond_target: float
    cond_measured: float
    trial: int
    residual: float = None
    isometry_error: float = None
    elapsed_seconds: float = None
    status: str = "ok"


def _check_writable(path):
    parent = Path(path).resolve().parent
    if not parent.is_dir() or not os.access(parent, os.W_OK):
        raise OSError(f"cannot write to {path}")
    if Path(path).exists() and not os.access(path, os.W_OK):
        raise OSError(f"cannot write to {path}")


def run_cell(config, cond_index, trial):
    """Run every method of ``config`` on the matrix of one (cond, trial) cell."""
    cond = config.conds[cond_index]
    rng = SplitMix64(derive_seed(config.seed, cond_index, trial))
    rows, cols = matrix_shape(config.family, config.size)
    A = gen_random_cond(rows, cols, cond, rng)
    sigma = gen_signature(rows, rng) if config.family == "hr" else None
    cond_measured = float(np.linalg.cond(A))

    records = []
    for name in config.methods:
        start = time.perf_counter()
        try:
            G, R, M, N = METHODS[config.family][name](A.copy(), sigma)
            res = residual_metric(A, G, R)
            iso = isometry_metric(G, M, N)
            status = "ok" if np.isfinite(res) and np.isfinite(iso) else "non-finite"
        except Exception as exc:  # a failing method must not abort the sweep
            res = iso = None
            status = getattr(exc, "code", "error")
        elapsed = time.perf_counter() - start if config.timing else None
        if status != "ok":
            res = iso = None
        records.append(MetricRecord(config.family, name, cond, cond_measured, trial,
                                    res, iso, elapsed, status))
    return records


def run_sweep(config):
    """Run all (cond, method, trial) combinations; order is cond, method, trial.

    Every method sees the same matrix within a (cond, trial) cell. If
    ``config.output_path`` is set the records are also written there.
    """
    if config.output_path is not None:
        _check_writable(config.output_path)
    cells = {}
    for ci in range(len(config.conds)):
        for t in range(config.trials):
            cells[ci, t] = run_cell(config, ci, t)
    records = []
    for ci in range(len(config.conds)):
        for mi in range(len(config.methods)):
            records.extend(cells[ci, t][mi] for t in range(config.trials))
    if config.output_path is not None:
        write_csv(records, config.output_path)
    return records


CSV_HEADER = ["family", "method", "cond_target", "cond_measured", "trial", "residual",
              "isometry_error", "elapsed_seconds", "status"]


def _fmt(x):
    return "" if x is None else repr(float(x))


def write_csv(records, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in records:
            writer.writerow([r.family, r.method, _fmt(r.cond_target), _fmt(r.cond_measured),
                             r.trial, _fmt(r.residual), _fmt(r.isometry_error),
                             _fmt(r.elapsed_seconds), r.status])


def read_csv(path):
    def num(s):
        return float(s) if s != "" else None

    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        return [MetricRecord(row["family"], row["method"], float(row["cond_target"]),
                             num(row["cond_measured"]), int(row["trial"]), num(row["residual"]),
                             num(row["isometry_error"]), num(row["elapsed_seconds"]),
                             row["status"])
                for row in reader]
