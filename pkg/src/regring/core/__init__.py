"""Exact scalars, dense matrices and elimination-based linear algebra over Q(i)."""

from .linalg import (
    Elimination,
    Subspace,
    eliminate,
    full_rank_factorization,
    inverse,
    is_psd,
    kernel,
    rank,
    rref,
    solve,
    subspace_intersect,
)
from .matrix import M, ExactMatrix, format_matrix, parse_matrix
from .scalar import I, ONE, ZERO, Scalar

__all__ = [
    "Elimination",
    "ExactMatrix",
    "I",
    "M",
    "ONE",
    "Scalar",
    "Subspace",
    "ZERO",
    "eliminate",
    "format_matrix",
    "full_rank_factorization",
    "inverse",
    "is_psd",
    "kernel",
    "parse_matrix",
    "rank",
    "rref",
    "solve",
    "subspace_intersect",
]
