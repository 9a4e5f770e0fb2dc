"""Rank-k error curves for factorizations and the relative-error metric.

For any factorization with orthogonal (or orthonormal-column) factors the
rank-k truncation error equals the norm of the trailing block of the middle
factor, so curves are computed from T alone and never by forming A - A_k.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .matrix import check_matrix
from .powerurv import UrvFactorization
from .qr import PivotedQr
from .randutv import UtvFactorization
from .svd import SvdTriple, eckart_young_error, singular_values


@dataclass(frozen=True)
class ErrorCurve:
    """Rank-k errors e_k for k = 1..n-1 under one norm."""

    algo: str
    norm: str
    k_values: np.ndarray
    e_k: np.ndarray
    rel_metric: np.ndarray | None = None


@dataclass(frozen=True)
class RunRecord:
    """One timed factorization run, serializable as a CSV row."""

    kind: str
    n: int
    algo: str
    b: int
    p: int
    q: int
    seed: int
    wall_time_seconds: float
    timestamp: str

    FIELDS = ("kind", "n", "algo", "b", "p", "q", "seed",
              "wall_time_seconds", "timestamp")

    def row(self):
        return [self.kind, self.n, self.algo, self.b, self.p, self.q,
                self.seed, "%.9f" % self.wall_time_seconds, self.timestamp]


def _middle_factor(f):
    if isinstance(f, UtvFactorization):
        return f.T, "randutv"
    if isinstance(f, UrvFactorization):
        return f.R, "powerurv"
    if isinstance(f, PivotedQr):
        return f.R, "cpqr"
    raise TypeError(f"cannot sweep errors for {type(f).__name__}")


def trailing_fro_curve(t):
    """||T[k:, k:]||_F for k = 1..n-1 via a 2-D suffix sum, O(mn) total."""
    t = check_matrix(t)
    n = t.shape[1]
    sq = t * t
    # suffix[i, j] = sum of sq[i:, j:]
    suffix = np.cumsum(np.cumsum(sq[::-1, ::-1], axis=0), axis=1)[::-1, ::-1]
    vals = np.array([suffix[k, k] if k < t.shape[0] else 0.0
                     for k in range(1, n)])
    return np.sqrt(np.maximum(vals, 0.0))


def trailing_spectral_curve(t):
    """sigma_max(T[k:, k:]) for k = 1..n-1, one small SVD per k."""
    t = check_matrix(t)
    m, n = t.shape
    nr = min(m, n)
    out = np.empty(n - 1)
    for k in range(1, n):
        if k >= m:
            out[k - 1] = 0.0
            continue
        # rows at and below min(m, n) are zero for trapezoidal T
        block = t[k:nr, k:] if k < nr else t[k:, k:]
        out[k - 1] = float(singular_values(block)[0]) if block.size else 0.0
    return out


def error_sweep(a, f, norm="spectral"):
    """Rank-k error curve of a factorization of a, for k = 1..n-1.

    For UTV/URV/CPQR results e_k is the norm of the trailing block
    T[k:, k:]; for an SVD it is the optimal truncation error from the
    singular values.
    """
    a = check_matrix(a)
    n = a.shape[1]
    ks = np.arange(1, n)
    if isinstance(f, SvdTriple):
        e = np.array([eckart_young_error(f.sigma, int(k), norm) for k in ks])
        return ErrorCurve(algo="svd", norm=norm, k_values=ks, e_k=e)
    t, label = _middle_factor(f)
    if t.shape[1] != n:
        raise ValueError(f"factorization is for {t.shape[1]} columns, matrix has {n}")
    if norm == "fro":
        e = trailing_fro_curve(t)
    elif norm == "spectral":
        e = trailing_spectral_curve(t)
    else:
        raise ValueError(f"norm must be 'spectral' or 'fro', got {norm!r}")
    return ErrorCurve(algo=label, norm=norm, k_values=ks, e_k=e)


def svd_curve(sigma, norm="spectral"):
    """Optimal error curve straight from a singular-value vector."""
    sigma = np.asarray(sigma, dtype=np.float64)
    ks = np.arange(1, sigma.shape[0])
    e = np.array([eckart_young_error(sigma, int(k), norm) for k in ks])
    return ErrorCurve(algo="svd", norm=norm, k_values=ks, e_k=e)


def relative_metric(curve, opt):
    """Elementwise e_k / e_opt_k - 1; NaN where the optimum underflows.

    ``opt`` must be the SVD curve on the same k grid.  Values are
    >= -1e-9 whenever both curves come from the same matrix.
    """
    if curve.k_values.shape != opt.k_values.shape or (curve.k_values != opt.k_values).any():
        raise ValueError("curves are on different k grids")
    out = np.full(curve.e_k.shape, np.nan)
    ok = opt.e_k > 1e-300
    out[ok] = curve.e_k[ok] / opt.e_k[ok] - 1.0
    return out


def floor_violation(curve, opt, slack=1e-9):
    """Largest amount by which a curve dips below the optimal curve."""
    if curve.e_k.shape != opt.e_k.shape:
        raise ValueError("curves are on different k grids")
    return float(np.max(opt.e_k - slack - curve.e_k))


def write_error_csv(path, curve, opt):
    """CSV with header k,e_k,e_opt,rel; rel is empty where not applicable."""
    rel = relative_metric(curve, opt)
    with open(path, "w", newline="", encoding="ascii") as fh:
        w = csv.writer(fh)
        w.writerow(["k", "e_k", "e_opt", "rel"])
        for k, e, eo, r in zip(curve.k_values, curve.e_k, opt.e_k, rel):
            w.writerow([int(k), "%.17g" % e, "%.17g" % eo,
                        "" if np.isnan(r) else "%.17g" % r])
