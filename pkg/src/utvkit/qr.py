"""Householder QR in compact-WY form, plus column-pivoted QR.

The orthogonal factor of every QR here is held as ``Q = I - Y @ Twy @ Y.T``
with Y unit lower trapezoidal and Twy upper triangular, so Q can be applied
to a block with three matrix-matrix products and never has to be formed
unless explicitly requested.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .matrix import MACHINE_EPS, check_matrix, frobenius_norm


@dataclass(frozen=True)
class QFactor:
    """Product of Householder reflectors, stored as I - Y @ Twy @ Y.T.

    Y is m-by-k with unit diagonal and zeros above it; Twy is k-by-k upper
    triangular.  The implied Q is m-by-m orthogonal.
    """

    Y: np.ndarray
    Twy: np.ndarray
    m: int

    @property
    def k(self):
        return self.Y.shape[1]


@dataclass(frozen=True)
class PivotedQr:
    """Column-pivoted QR: ``A[:, perm] = Q @ R`` with |diag R| non-increasing."""

    q: QFactor
    R: np.ndarray
    perm: np.ndarray


def _reflector(x, thresh):
    """Householder vector for x -> -sign(x0)*||x||*e1.

    Returns (v, tau, beta) with v normalized to v[0] = 1.  Returns
    (None, 0.0, x[0]) when the column is numerically zero (norm <= thresh)
    or already collinear with e1, in which case the reflector is skipped.
    """
    sigma = float(x[1:] @ x[1:])
    alpha = float(x[0])
    xnorm = np.sqrt(alpha * alpha + sigma)
    if xnorm <= thresh or sigma == 0.0:
        return None, 0.0, alpha
    s = 1.0 if alpha >= 0.0 else -1.0
    v1 = alpha + s * xnorm
    v = x / v1
    v[0] = 1.0
    tau = 2.0 / (1.0 + sigma / (v1 * v1))
    return v, tau, -s * xnorm


def _append_twy_column(Twy, Y, j, v, tau):
    """Grow the compact-WY triangle by one reflector (forward accumulation)."""
    Twy[j, j] = tau
    if j > 0 and tau != 0.0:
        z = Y[j:, :j].T @ v
        Twy[:j, j] = -tau * (Twy[:j, :j] @ z)


def hqr_full(a):
    """Full unpivoted Householder QR of an m-by-n matrix with m >= n.

    Returns ``(q, R)`` where q is the compact-WY form of the m-by-m
    orthogonal factor and R is m-by-n upper trapezoidal.  Numerically zero
    columns are skipped (identity reflector), so rank-deficient input yields
    a trailing zero block in R rather than an error.
    """
    a = check_matrix(a)
    m, n = a.shape
    if m < n:
        raise DimensionError(f"hqr_full needs m >= n, got {a.shape}; factor the transpose")
    R = np.array(a, order="F", copy=True)
    Y = np.zeros((m, n), order="F")
    Twy = np.zeros((n, n), order="F")
    thresh = MACHINE_EPS * frobenius_norm(a)
    for j in range(n):
        v, tau, beta = _reflector(R[j:, j].copy(), thresh)
        if v is None:
            Y[j, j] = 1.0
            _append_twy_column(Twy, Y, j, Y[j:, j], 0.0)
            R[j + 1:, j] = 0.0
            continue
        w = tau * (v @ R[j:, j:])
        R[j:, j:] -= np.outer(v, w)
        R[j, j] = beta
        R[j + 1:, j] = 0.0
        Y[j:, j] = v
        _append_twy_column(Twy, Y, j, v, tau)
    return QFactor(Y=Y, Twy=Twy, m=m), R


def apply_q(q, b, side="left", trans=False):
    """Apply Q (or its transpose) to a block without forming Q.

    side="left" computes Q @ b or Q.T @ b; side="right" computes b @ Q or
    b @ Q.T.  Three GEMMs each way.
    """
    b = np.asarray(b, dtype=np.float64)
    if b.ndim != 2:
        raise DimensionError(f"apply_q operand must be 2-D, got shape {b.shape}")
    t = q.Twy.T if trans else q.Twy
    if side == "left":
        if b.shape[0] != q.m:
            raise DimensionError(f"apply_q left: operand has {b.shape[0]} rows, Q is {q.m}x{q.m}")
        return b - q.Y @ (t @ (q.Y.T @ b))
    if side == "right":
        if b.shape[1] != q.m:
            raise DimensionError(f"apply_q right: operand has {b.shape[1]} cols, Q is {q.m}x{q.m}")
        return b - ((b @ q.Y) @ t) @ q.Y.T
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def materialize_q(q, ncols=None):
    """Form the leading ``ncols`` columns of Q explicitly (all m by default)."""
    ncols = q.m if ncols is None else int(ncols)
    if not 1 <= ncols <= q.m:
        raise DimensionError(f"ncols must be in [1, {q.m}], got {ncols}")
    eye = np.zeros((q.m, ncols), order="F")
    np.fill_diagonal(eye, 1.0)
    return eye - q.Y @ (q.Twy @ q.Y[:ncols, :].T)


def hqr_thin(a):
    """Thin QR: returns (Qhat, Rhat) with Qhat m-by-n orthonormal, Rhat n-by-n."""
    q, r = hqr_full(a)
    n = a.shape[1]
    return materialize_q(q, ncols=n), np.array(r[:n, :], copy=True)


# Columns whose running norm estimate decays past sqrt(eps) of the reference
# get their norm recomputed exactly; standard guard against cancellation in
# the downdating recurrence.
_DOWNDATE_RTOL = MACHINE_EPS

# Norm ties within this relative window resolve to the leftmost column, so
# exact-arithmetic ties (all columns equal, as in Kahan matrices) are not
# broken by rounding noise in the running estimates.
_PIVOT_TIE_RTOL = 1e-12


def hqrcp(a):
    """Column-pivoted Householder QR (greedy largest-norm pivoting).

    Businger-Golub pivoting with norm downdating and an exact-recompute
    safeguard.  The diagonal of R decays monotonically in magnitude.
    """
    a = check_matrix(a)
    m, n = a.shape
    r_steps = min(m, n)
    R = np.array(a, order="F", copy=True)
    Y = np.zeros((m, r_steps), order="F")
    Twy = np.zeros((r_steps, r_steps), order="F")
    perm = np.arange(n)
    thresh = MACHINE_EPS * frobenius_norm(a)

    norms2 = np.sum(R * R, axis=0)
    ref2 = norms2.copy()

    for j in range(r_steps):
        tail = norms2[j:]
        top = float(tail.max())
        if top > 0.0:
            piv = j + int(np.argmax(tail >= top * (1.0 - _PIVOT_TIE_RTOL)))
        else:
            piv = j
        if piv != j:
            R[:, [j, piv]] = R[:, [piv, j]]
            perm[[j, piv]] = perm[[piv, j]]
            norms2[[j, piv]] = norms2[[piv, j]]
            ref2[[j, piv]] = ref2[[piv, j]]

        v, tau, beta = _reflector(R[j:, j].copy(), thresh)
        if v is None:
            Y[j, j] = 1.0
            _append_twy_column(Twy, Y, j, Y[j:, j], 0.0)
            R[j + 1:, j] = 0.0
        else:
            w = tau * (v @ R[j:, j:])
            R[j:, j:] -= np.outer(v, w)
            R[j, j] = beta
            R[j + 1:, j] = 0.0
            Y[j:, j] = v
            _append_twy_column(Twy, Y, j, v, tau)

        if j + 1 < n:
            norms2[j + 1:] -= R[j, j + 1:] ** 2
            np.maximum(norms2[j + 1:], 0.0, out=norms2[j + 1:])
            stale = np.nonzero(norms2[j + 1:] <= _DOWNDATE_RTOL * ref2[j + 1:])[0]
            for c in j + 1 + stale:
                norms2[c] = float(R[j + 1:, c] @ R[j + 1:, c])
                ref2[c] = norms2[c]

    return PivotedQr(q=QFactor(Y=Y, Twy=Twy, m=m), R=R, perm=perm)
