"""Test-matrix generators: prescribed spectra and adversarial cases.

The spectrum-controlled generators build A = U @ diag(d) @ V.T from random
orthogonal factors, so the true singular values are known exactly and can be
returned alongside the matrix.
"""

import numpy as np

from .errors import DimensionError
from .matrix import check_matrix, gaussian
from .qr import hqr_full, materialize_q

KINDS = ("fast", "s", "bie", "kahan", "gaussian")


def random_orthogonal(n, rng):
    """Orthogonal factor of the QR factorization of a Gaussian matrix."""
    q, _ = hqr_full(gaussian(n, n, rng))
    return materialize_q(q)


def _from_spectrum(d, rng):
    n = d.shape[0]
    u = random_orthogonal(n, rng)
    v = random_orthogonal(n, rng)
    return u @ (d[:, None] * v.T)


def gen_fast_decay(n, beta, rng):
    """Geometric spectrum d_i = beta**((i-1)/(n-1)), from 1 down to beta."""
    if n < 2:
        raise DimensionError(f"fast-decay matrix needs n >= 2, got {n}")
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must be in (0, 1), got {beta}")
    d = beta ** (np.arange(n) / (n - 1))
    return _from_spectrum(d, rng), d


# Logistic profile for the S-shaped spectrum: near 1 for the leading quarter
# of the indices, then a rapid drop onto a plateau at the floor value.
_S_SHAPE_FLOOR = 1e-2
_S_SHAPE_STEEPNESS = 60.0


def gen_s_shaped(n, rng):
    """Spectrum hovering near 1, dropping fast, then flat at 1e-2."""
    if n < 8:
        raise DimensionError(f"S-shaped matrix needs n >= 8, got {n}")
    i = np.arange(1, n + 1, dtype=np.float64)
    d = _S_SHAPE_FLOOR + (1.0 - _S_SHAPE_FLOOR) / (
        1.0 + np.exp(_S_SHAPE_STEEPNESS * (i - n / 4.0) / n)
    )
    d = np.minimum.accumulate(d)
    return _from_spectrum(d, rng), d


def gen_bie(n):
    """Discretized single-layer logarithmic kernel on the unit circle.

    Trapezoidal rule with uniform weights w = 2*pi/n.  The diagonal holds
    the self-interaction value log(n)/n that makes every row sum vanish
    (prod_{j=1..n-1} 2*sin(pi*j/n) = n), mirroring the continuous operator,
    which annihilates constants on the unit circle.  Deterministic and very
    ill-conditioned by construction.
    """
    if n < 16:
        raise DimensionError(f"BIE matrix needs n >= 16, got {n}")
    w = 2.0 * np.pi / n
    idx = np.arange(n)
    diff = idx[:, None] - idx[None, :]
    dist = 2.0 * np.abs(np.sin(np.pi * diff / n))
    np.fill_diagonal(dist, 1.0)
    a = -(1.0 / (2.0 * np.pi)) * np.log(dist) * w
    np.fill_diagonal(a, np.log(n) / n)
    return check_matrix(a)


def gen_kahan(n, theta=1.2):
    """Kahan's upper triangular matrix: diag(1, s, ..., s^(n-1)) @ (I - c*strict_upper).

    Greedy column-pivoted QR leaves it untouched while its smallest singular
    value is exponentially smaller than the last diagonal entry.
    """
    if n < 1:
        raise DimensionError(f"Kahan matrix needs n >= 1, got {n}")
    if not 0.0 < theta < np.pi / 2.0:
        raise ValueError(f"theta must be in (0, pi/2), got {theta}")
    s = np.sin(theta)
    c = np.cos(theta)
    upper = np.triu(np.full((n, n), -c), k=1) + np.eye(n)
    scale = s ** np.arange(n)
    return check_matrix(scale[:, None] * upper)


def gen_gaussian(n, rng):
    """Square standard Gaussian matrix."""
    return gaussian(n, n, rng)
