"""Dense matrix basics: seeded Gaussian sampling, GEMM, norms, text I/O.

Matrices are plain two-dimensional ``numpy.float64`` arrays.  Arrays created
by this module are Fortran (column-major) ordered; submatrices are always
taken as copies, never as writable aliases, by the higher-level kernels.
"""

import numpy as np

from .errors import DimensionError

#: Machine epsilon for IEEE double precision (about 2.22e-16).
MACHINE_EPS = float(np.finfo(np.float64).eps)


class RngStream:
    """Seeded stream of pseudo-random numbers.

    A stream is owned by one factorization run; two streams constructed with
    the same seed produce bitwise-identical draws.  Bit-compatibility across
    library versions or platforms is not promised, only determinism within
    one installation.
    """

    def __init__(self, seed):
        self.seed = int(seed)
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def standard_normal(self, m, n):
        return self._gen.standard_normal((m, n))

    def __repr__(self):
        return f"RngStream(seed={self.seed})"


def check_matrix(a, name="matrix"):
    """Validate a dense matrix value and return it as a float64 array.

    Raises ``DimensionError`` for non-2-D input and ``ValueError`` when any
    entry is NaN or infinite.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {a.shape}")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise DimensionError(f"{name} must have positive dimensions, got {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError(f"{name} contains NaN or Inf entries")
    return a


def gaussian(m, n, rng):
    """Return an m-by-n matrix with i.i.d. standard normal entries.

    Advances the state of ``rng``; two fresh streams with the same seed give
    bitwise-identical matrices.
    """
    if m < 1 or n < 1:
        raise DimensionError(f"gaussian dimensions must be positive, got ({m}, {n})")
    return np.asfortranarray(rng.standard_normal(int(m), int(n)))


def gemm(alpha, a, b, trans_a=False, trans_b=False):
    """Return ``alpha * op(a) @ op(b)`` where op is optional transposition."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    op_a = a.T if trans_a else a
    op_b = b.T if trans_b else b
    if op_a.shape[1] != op_b.shape[0]:
        raise DimensionError(
            f"gemm inner dimensions disagree: {op_a.shape} x {op_b.shape}"
        )
    out = op_a @ op_b
    if alpha != 1.0:
        out = alpha * out
    return out


def frobenius_norm(a):
    """Square root of the sum of squared entries."""
    return float(np.linalg.norm(np.asarray(a, dtype=np.float64)))


def spectral_norm(a):
    """Largest singular value, computed through a dense SVD."""
    a = np.asarray(a, dtype=np.float64)
    if a.size == 0:
        return 0.0
    if not a.any():
        return 0.0
    return float(np.linalg.svd(a, compute_uv=False)[0])


def write_matrix(a, path):
    """Write a matrix in the shared text format.

    Line 1 holds ``m n``; each of the following m lines holds n decimals
    printed with 17 significant digits, so ``read_matrix(write_matrix(a))``
    round-trips bitwise.
    """
    a = check_matrix(a)
    m, n = a.shape
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{m} {n}\n")
        for i in range(m):
            fh.write(" ".join("%.17g" % x for x in a[i, :]))
            fh.write("\n")


def read_matrix(path):
    """Read a matrix written by :func:`write_matrix`."""
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError(f"{path}: malformed header {header!r}")
        m, n = int(header[0]), int(header[1])
        data = np.empty((m, n), order="F")
        for i in range(m):
            row = fh.readline().split()
            if len(row) != n:
                raise ValueError(f"{path}: row {i} has {len(row)} entries, expected {n}")
            data[i, :] = [float(x) for x in row]
    return check_matrix(data, name=path)
