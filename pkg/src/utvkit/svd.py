"""Dense SVD utilities: full/thin SVD, the tall-thin left-vector shortcut,
and best-rank-k truncation errors.

The square SVD kernel is delegated to LAPACK through numpy; this module owns
the surrounding contracts (ordering, sign convention, shapes) and the
QR-then-small-SVD composition used for tall thin blocks.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DimensionError
from .matrix import check_matrix
from .qr import apply_q, hqr_full


@dataclass(frozen=True)
class SvdTriple:
    """A = U @ diag(sigma) @ V.T with sigma sorted descending."""

    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray
    thin: bool


def singular_values(a):
    """All singular values of a, descending (no vectors computed)."""
    a = check_matrix(a)
    try:
        return np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"SVD failed to converge on shape {a.shape}") from exc


def svd_dense(a, mode="full"):
    """Dense SVD with deterministic signs.

    mode="full" returns U m-by-m and V n-by-n; mode="thin" returns U m-by-r
    and V n-by-r with r = min(m, n).  Each singular pair is flipped so the
    largest-magnitude entry of the V column is positive.
    """
    a = check_matrix(a)
    if mode not in ("full", "thin"):
        raise ValueError(f"mode must be 'full' or 'thin', got {mode!r}")
    try:
        u, s, vh = np.linalg.svd(a, full_matrices=(mode == "full"))
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"SVD failed to converge on shape {a.shape}") from exc
    v = vh.T.copy(order="F")
    u = u.copy(order="F")
    for j in range(s.shape[0]):
        i = int(np.argmax(np.abs(v[:, j])))
        if v[i, j] < 0.0:
            v[:, j] = -v[:, j]
            u[:, j] = -u[:, j]
    return SvdTriple(U=u, sigma=s, V=v, thin=(mode == "thin"))


def svd_tall_thin_left(y):
    """Left singular vectors of a tall thin matrix, completed to orthogonal.

    For y of shape (n, w) with n >= w, computes [q, r] = hqr_full(y) and the
    left singular vectors Uhat of the w-by-w block r[:w, :], then returns

        W = Q @ blockdiag(Uhat, I_{n-w})

    whose first w columns are the left singular vectors of y.  Costs one
    n-by-w QR plus a w-by-w SVD instead of an n-by-n SVD.
    """
    y = check_matrix(y)
    n, w = y.shape
    if n < w:
        raise DimensionError(f"svd_tall_thin_left needs rows >= cols, got {y.shape}")
    q, r = hqr_full(y)
    uhat = svd_dense(r[:w, :], mode="full").U
    c = np.zeros((n, n), order="F")
    c[:w, :w] = uhat
    if n > w:
        c[w:, w:] = np.eye(n - w)
    return apply_q(q, c, side="left", trans=False)


def eckart_young_error(sigma, k, norm="spectral"):
    """Best possible rank-k approximation error given the singular values.

    spectral: sigma[k] (the (k+1)-th singular value); fro: the root sum of
    squares of the trailing values.  Requires 0 <= k < len(sigma).
    """
    sigma = np.asarray(sigma, dtype=np.float64)
    if sigma.ndim != 1:
        raise ValueError(f"sigma must be a vector, got shape {sigma.shape}")
    if not 0 <= k < sigma.shape[0]:
        raise ValueError(f"k must be in [0, {sigma.shape[0]}), got {k}")
    if norm == "spectral":
        return float(sigma[k])
    if norm == "fro":
        return float(np.sqrt(np.sum(sigma[k:] ** 2)))
    raise ValueError(f"norm must be 'spectral' or 'fro', got {norm!r}")
