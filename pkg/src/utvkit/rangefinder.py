"""Randomized range finders for the dominant row space.

The basic sketch draws Gaussian samples of the rows of A; the power variant
sharpens the sample by alternating applications of A and A.T with a thin QR
re-orthonormalization between every application.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .matrix import check_matrix, gaussian
from .qr import hqr_thin


@dataclass(frozen=True)
class RangeBasis:
    """Orthonormal basis Q (n-by-b) approximating the dominant row space."""

    Q: np.ndarray
    samples_used: int
    q_power: int


def range_basic(a, b, rng):
    """Single-shot sketch: thin-QR basis of A.T @ G with G Gaussian m-by-b."""
    a = check_matrix(a)
    m, n = a.shape
    if not 1 <= b <= n:
        raise DimensionError(f"block size b={b} out of range for shape {a.shape}")
    g = gaussian(m, b, rng)
    y = a.T @ g
    q, _ = hqr_thin(y)
    return RangeBasis(Q=q, samples_used=b, q_power=0)


def range_power(a, b, p, q, rng):
    """Stabilized power-iteration sample matrix, returned unorthonormalized.

    Evaluates (A.T @ A)^q @ A.T @ G for Gaussian G with b+p columns,
    re-orthonormalizing via thin QR between every application of A and A.T.
    Callers post-process the returned n-by-(b+p) matrix (e.g. with
    svd_tall_thin_left) to extract a basis.
    """
    a = check_matrix(a)
    m, n = a.shape
    ell = int(b) + int(p)
    if not 1 <= ell <= min(m, n):
        raise DimensionError(f"b+p={ell} out of range for shape {a.shape}")
    if q < 0:
        raise ValueError(f"power iteration count must be >= 0, got {q}")
    g = gaussian(m, ell, rng)
    y = a.T @ g
    for _ in range(q):
        qy, _ = hqr_thin(y)
        z = a @ qy
        qz, _ = hqr_thin(z)
        y = a.T @ qz
    return y
