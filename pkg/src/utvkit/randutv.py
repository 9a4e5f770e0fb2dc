"""Blocked randomized UTV factorization A = U @ T @ V.T.

The matrix is driven to upper trapezoidal form b columns at a time.  Each
block step sketches the dominant right singular subspace of the trailing
block, rotates it to the front, triangularizes the resulting panel from the
left, and polishes the b-by-b diagonal block with a small SVD, so the
processed part of T carries singular-value estimates on its diagonal.

Two variants are provided.  The basic one samples exactly b columns per
step with an unstabilized inner power loop.  The boosted one oversamples by
p extra columns, orthonormalizes before the last half-application, picks the
block basis through the optimal rank-b approximation of the sample (tall
thin SVD), and recycles the p extra directions into the next step instead of
regenerating them.

Both variants track the Frobenius approximation error incrementally from the
mass removed by each panel, which is what makes early termination cheap.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConsistencyError, DimensionError
from .matrix import check_matrix, frobenius_norm, gaussian
from .qr import apply_q, hqr_full, materialize_q
from .svd import svd_dense, svd_tall_thin_left


@dataclass
class ErrorTracker:
    """Running Frobenius error of the not-yet-processed trailing block.

    Seeded with e_0 = ||A||_F; each processed panel subtracts its squared
    mass, so after step i the tracked value equals ||T(ib+1:m, ib+1:n)||_F
    up to roundoff.
    """

    e_sq: float
    e0_sq: float
    history: list = field(default_factory=list)

    @classmethod
    def start(cls, a_fro):
        return cls(e_sq=a_fro * a_fro, e0_sq=a_fro * a_fro)

    @property
    def e(self):
        return math.sqrt(self.e_sq)

    def update(self, panel):
        panel = np.asarray(panel, dtype=np.float64)
        self.e_sq -= float(np.sum(panel * panel))
        if self.e_sq < -1e-10 * self.e0_sq:
            raise ConsistencyError(
                f"tracked squared error went negative: {self.e_sq:.3e}"
            )
        if self.e_sq < 0.0:
            self.e_sq = 0.0
        self.history.append(self.e)
        return self


def error_update(tracker, t_panel):
    """Subtract one processed panel's squared mass from the tracker."""
    return tracker.update(t_panel)


@dataclass(frozen=True)
class UtvFactorization:
    """A = U @ T @ V.T with orthogonal U, V and upper trapezoidal T.

    The leading steps_done*b columns of T are upper trapezoidal with
    diagonal b-by-b blocks that are themselves diagonal (non-negative,
    non-increasing within each block).  ``errors`` holds the tracked
    Frobenius error after each block step; ``trailing_fro`` holds directly
    recomputed trailing-block norms when the run was asked to record them.
    """

    U: np.ndarray
    T: np.ndarray
    V: np.ndarray
    b: int
    steps_done: int
    oversample: int
    power: int
    errors: list
    trailing_fro: list | None = None

    @property
    def processed_columns(self):
        return min(self.steps_done * self.b, self.T.shape[1])


def _validate(a, b, q, p):
    a = check_matrix(a)
    m, n = a.shape
    if m < n:
        raise DimensionError(f"randutv needs m >= n, got {a.shape}; factor the transpose")
    if b < 1:
        raise ValueError(f"block size must be >= 1, got {b}")
    if q < 0:
        raise ValueError(f"power iteration count must be >= 0, got {q}")
    if p < 0:
        raise ValueError(f"oversampling must be >= 0, got {p}")
    return a


def _randutv(a, b, q, p, rng, boosted, tol_fro=None, max_rank=None,
             record_trailing=False):
    a = _validate(a, b, q, p)
    m, n = a.shape
    T = np.array(a, order="F", copy=True)
    U = np.eye(m, order="F")
    V = np.eye(n, order="F")
    tracker = ErrorTracker.start(frobenius_norm(a))
    trailing = [] if record_trailing else None
    w_next = None
    steps = 0

    for i in range(1, math.ceil(n / b) + 1):
        if tol_fro is not None and tracker.e <= tol_fro:
            break
        lo = (i - 1) * b
        mid = lo + b
        nrows = m - lo
        ncols = n - lo

        if ncols > b + (p if boosted else 0):
            if boosted:
                y = _sample_boosted(T, lo, b, q, p, rng, w_next, i)
                w_y = svd_tall_thin_left(y)
                vq, _ = hqr_full(w_y[:, :b])
                if p > 0 and (ncols - b) > b + p:
                    w_next = apply_q(vq, w_y[:, b:b + p], side="left", trans=True)[b:, :]
                else:
                    w_next = None
            else:
                y = _sample_basic(T, lo, b, q, rng)
                vq, _ = hqr_full(y)

            T[:, lo:] = apply_q(vq, T[:, lo:], side="right", trans=False)
            V[:, lo:] = apply_q(vq, V[:, lo:], side="right", trans=False)

            uq, r_panel = hqr_full(T[lo:, lo:mid])
            U[:, lo:] = apply_q(uq, U[:, lo:], side="right", trans=False)
            T[lo:, mid:] = apply_q(uq, T[lo:, mid:], side="left", trans=True)
            T[mid:, lo:mid] = 0.0

            small = svd_dense(r_panel[:b, :], mode="full")
            U[:, lo:mid] = U[:, lo:mid] @ small.U
            V[:, lo:mid] = V[:, lo:mid] @ small.V
            T[lo:mid, lo:mid] = np.diag(small.sigma)
            T[lo:mid, mid:] = small.U.T @ T[lo:mid, mid:]
            T[:lo, lo:mid] = T[:lo, lo:mid] @ small.V

            steps = i
            tracker.update(T[lo:mid, lo:])
            if trailing is not None:
                trailing.append(frobenius_norm(T[mid:, mid:]))
            if max_rank is not None and i * b >= max_rank:
                break
        else:
            # Trailing block too narrow to split: finish with a dense SVD.
            small = svd_dense(T[lo:, lo:], mode="full")
            U[:, lo:] = U[:, lo:] @ small.U
            V[:, lo:] = V[:, lo:] @ small.V
            d = np.zeros((nrows, ncols), order="F")
            np.fill_diagonal(d, small.sigma)
            T[lo:, lo:] = d
            T[:lo, lo:] = T[:lo, lo:] @ small.V
            steps = i
            tracker.update(T[lo:, lo:])
            if trailing is not None:
                trailing.append(0.0)
            break

    return UtvFactorization(
        U=U, T=T, V=V, b=int(b), steps_done=steps, oversample=int(p),
        power=int(q), errors=list(tracker.history), trailing_fro=trailing,
    )


def _sample_basic(T, lo, b, q, rng):
    """Sketch of the trailing block's row space: (B.T B)^q B.T G, unstabilized."""
    m = T.shape[0]
    blk = T[lo:, lo:]
    g = gaussian(m - lo, b, rng)
    y = blk.T @ g
    for _ in range(q):
        y = blk.T @ (blk @ y)
    return y


def _sample_boosted(T, lo, b, q, p, rng, w_next, step):
    """Oversampled sketch with recycling of the previous step's extra columns.

    The first step powers all b+p columns.  Later steps power only b fresh
    columns, project them off the carried subspace, orthonormalize, and apply
    the block's transpose to the carried columns alongside the fresh basis,
    which is the one orthonormalization before the final half-application.
    """
    m, n = T.shape
    blk = T[lo:, lo:]
    if step == 1:
        g = gaussian(m, b + p, rng)
        y = blk.T @ g
        for _ in range(q):
            y = blk.T @ (blk @ y)
        return y
    g = gaussian(m - lo, b, rng)
    y = blk.T @ g
    for _ in range(q - 1):
        y = blk.T @ (blk @ y)
    x = blk @ y
    if w_next is not None:
        pad = x.shape[0] - w_next.shape[0]
        w = np.vstack([w_next, np.zeros((pad, w_next.shape[1]))]) if pad else w_next
        x = x - w @ (w.T @ x)
    else:
        w = np.zeros((x.shape[0], 0))
    qx, _ = hqr_full(x)
    basis = np.hstack([materialize_q(qx, ncols=b), w])
    return blk.T @ basis


def randutv_basic(a, b, q, rng, record_trailing=False):
    """Blocked randomized UTV without oversampling.

    Each of the ceil(n/b) steps draws a fresh Gaussian block, runs q
    unstabilized power rounds, and takes the QR basis of the sample as the
    right transform; the last (narrow) block is finished with a dense SVD.
    """
    return _randutv(a, b, q, 0, rng, boosted=False, record_trailing=record_trailing)


def randutv_boosted(a, b, q, p, rng, record_trailing=False):
    """Blocked randomized UTV with oversampling and sample recycling.

    Requires q >= 1 (the recycled sampling path spends one of its power
    rounds on the orthonormalized final half-application).  p = 0 keeps the
    optimal rank-b basis selection but carries no extra samples.
    """
    if q < 1:
        raise ValueError(f"randutv_boosted requires q >= 1, got {q}")
    return _randutv(a, b, q, p, rng, boosted=True, record_trailing=record_trailing)


def randutv_partial(a, b, q, p, rng, tol_fro=None, max_rank=None,
                    record_trailing=False):
    """Boosted randUTV halted by error tolerance or column budget.

    Stops before a step once the tracked Frobenius error is <= tol_fro, or
    after the step that brings the processed column count to max_rank.  The
    processed prefix of (U, T, V) is identical to the full run's prefix under
    the same seed; A = U @ T @ V.T holds regardless of where the run stops.
    """
    if q < 1:
        raise ValueError(f"randutv_partial requires q >= 1, got {q}")
    if tol_fro is None and max_rank is None:
        raise ValueError("randutv_partial needs tol_fro or max_rank")
    return _randutv(a, b, q, p, rng, boosted=True, tol_fro=tol_fro,
                    max_rank=max_rank, record_trailing=record_trailing)
