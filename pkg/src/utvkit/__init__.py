"""Randomized rank-revealing UTV factorizations and their building blocks.

Public surface: dense matrix basics (gaussian, gemm, norms, text I/O),
Householder QR in compact-WY form with column-pivoted QR, dense SVD helpers,
randomized range finders, the powerURV and randUTV factorizations, test
matrix generators, and rank-k error sweeps.
"""

from .bench import (ErrorCurve, RunRecord, error_sweep, floor_violation,
                    relative_metric, svd_curve, write_error_csv)
from .errors import ConsistencyError, ConvergenceError, DimensionError
from .matgen import (gen_bie, gen_fast_decay, gen_gaussian, gen_kahan,
                     gen_s_shaped, random_orthogonal)
from .matrix import (MACHINE_EPS, RngStream, frobenius_norm, gaussian, gemm,
                     read_matrix, spectral_norm, write_matrix)
from .powerurv import UrvFactorization, power_urv, power_urv_from_sample, rurv
from .qr import (PivotedQr, QFactor, apply_q, hqr_full, hqr_thin, hqrcp,
                 materialize_q)
from .randutv import (ErrorTracker, UtvFactorization, error_update,
                      randutv_basic, randutv_boosted, randutv_partial)
from .rangefinder import RangeBasis, range_basic, range_power
from .rsvd import RsvdFactors, projector_gap, rsvd
from .svd import (SvdTriple, eckart_young_error, singular_values, svd_dense,
                  svd_tall_thin_left)

__all__ = [
    "MACHINE_EPS", "RngStream", "gaussian", "gemm", "frobenius_norm",
    "spectral_norm", "read_matrix", "write_matrix",
    "QFactor", "PivotedQr", "hqr_full", "hqr_thin", "apply_q",
    "materialize_q", "hqrcp",
    "SvdTriple", "svd_dense", "singular_values", "svd_tall_thin_left",
    "eckart_young_error",
    "RangeBasis", "range_basic", "range_power",
    "UrvFactorization", "power_urv", "power_urv_from_sample", "rurv",
    "RsvdFactors", "rsvd", "projector_gap",
    "UtvFactorization", "ErrorTracker", "error_update", "randutv_basic",
    "randutv_boosted", "randutv_partial",
    "gen_fast_decay", "gen_s_shaped", "gen_bie", "gen_kahan", "gen_gaussian",
    "random_orthogonal",
    "ErrorCurve", "RunRecord", "error_sweep", "svd_curve", "relative_metric",
    "floor_violation", "write_error_csv",
    "DimensionError", "ConvergenceError", "ConsistencyError",
]
