"""Randomized SVD used as an independent cross-check for powerURV.

Both algorithms can be driven by the same Gaussian matrix; in exact
arithmetic the rank-ell projector onto the left factor of the randomized SVD
equals the projector onto the leading ell columns of the powerURV left
factor.  The power iteration here re-orthonormalizes at the same cadence as
powerURV so both consume G column for column.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .matrix import check_matrix, frobenius_norm
from .qr import hqr_thin
from .svd import svd_dense


@dataclass(frozen=True)
class RsvdFactors:
    """Approximate truncated SVD: A ~ U_rsvd @ diag(sigma) @ V_rsvd.T."""

    U_rsvd: np.ndarray
    sigma: np.ndarray
    V_rsvd: np.ndarray
    ell: int
    q_used: int


def rsvd(a, g_shared, ell, q):
    """Randomized SVD of rank ell drawing from the first ell columns of g_shared.

    Sampling computes (A @ A.T)^q @ A @ G[:, :ell] with a thin QR between
    every application of A and A.T, then a small SVD of Q.T @ A lifts the
    basis to singular vectors; 2q+2 applications of A or A.T in total.
    """
    a = check_matrix(a)
    m, n = a.shape
    g_shared = check_matrix(g_shared, name="G")
    if g_shared.shape[0] != n:
        raise DimensionError(f"G must have {n} rows, got {g_shared.shape}")
    ell = int(ell)
    if not 1 <= ell <= min(m, n, g_shared.shape[1]):
        raise ValueError(f"ell={ell} out of range for shape {a.shape}")
    if q < 0:
        raise ValueError(f"power iteration count must be >= 0, got {q}")

    g = g_shared[:, :ell]
    z = a @ g
    qr_basis, _ = hqr_thin(z)
    for _ in range(q):
        f = a.T @ qr_basis
        p, _ = hqr_thin(f)
        z = a @ p
        qr_basis, _ = hqr_thin(z)

    b = qr_basis.T @ a
    small = svd_dense(b, mode="thin")
    u = qr_basis @ small.U
    return RsvdFactors(U_rsvd=u, sigma=small.sigma, V_rsvd=small.V, ell=ell, q_used=int(q))


def projector_gap(u1, u2, a):
    """Relative Frobenius gap between two rank-ell projections of A.

    Returns ||u1 @ u1.T @ a - u2 @ u2.T @ a||_F / ||a||_F for matrices u1,
    u2 with the same number of orthonormal columns.
    """
    u1 = check_matrix(u1, name="U1")
    u2 = check_matrix(u2, name="U2")
    a = check_matrix(a)
    if u1.shape != u2.shape:
        raise ValueError(f"U1 and U2 must match, got {u1.shape} vs {u2.shape}")
    if u1.shape[0] != a.shape[0]:
        raise DimensionError(f"projector bases have {u1.shape[0]} rows, A has {a.shape[0]}")
    diff = u1 @ (u1.T @ a) - u2 @ (u2.T @ a)
    return frobenius_norm(diff) / frobenius_norm(a)
