"""Randomized URV factorization A = U @ R @ V.T driven by power iteration.

With q = 0 the right factor is an orthonormal basis of a Gaussian matrix
drawn independently of A (the RURV of Demmel, Dumitriu and Holtz); q >= 1
rounds of stabilized power iteration align V with the right singular
vectors, sharpening the rank-revealing quality of R.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .matrix import check_matrix, gaussian
from .qr import QFactor, apply_q, hqr_full, hqr_thin, materialize_q


@dataclass(frozen=True)
class UrvFactorization:
    """A = U @ R @ V.T with U, V orthogonal (compact-WY) and R trapezoidal."""

    Uq: QFactor
    R: np.ndarray
    Vq: QFactor
    q_used: int

    @property
    def U(self):
        return materialize_q(self.Uq)

    @property
    def V(self):
        return materialize_q(self.Vq)

    @property
    def T(self):
        """Alias so URV results can be swept like UTV results."""
        return self.R


def power_urv_from_sample(a, q, g):
    """powerURV with the Gaussian matrix supplied by the caller.

    Exposed so the projector-equivalence check can hand the exact same G to
    both this routine and the randomized SVD; normal callers use
    :func:`power_urv`.
    """
    a = check_matrix(a)
    m, n = a.shape
    if m < n:
        raise DimensionError(f"power_urv needs m >= n, got {a.shape}; factor the transpose")
    if q < 0:
        raise ValueError(f"power iteration count must be >= 0, got {q}")
    g = check_matrix(g, name="G")
    if g.shape != (n, n):
        raise DimensionError(f"G must be {n}x{n}, got {g.shape}")

    if q == 0:
        vq, _ = hqr_full(g)
    else:
        v = g
        vq = None
        for _ in range(q):
            yhat = a @ v
            vhat, _ = hqr_thin(yhat)
            y = a.T @ vhat
            vq, _ = hqr_full(y)
            v = materialize_q(vq)

    ahat = apply_q(vq, a, side="right", trans=False)
    uq, r = hqr_full(ahat)
    return UrvFactorization(Uq=uq, R=r, Vq=vq, q_used=int(q))


def power_urv(a, q, rng):
    """Randomized URV with q rounds of stabilized power iteration."""
    a = check_matrix(a)
    g = gaussian(a.shape[1], a.shape[1], rng)
    return power_urv_from_sample(a, q, g)


def rurv(a, rng):
    """Randomized URV without power iteration (V independent of A)."""
    return power_urv(a, 0, rng)
