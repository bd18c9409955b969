"""Exact generalized inverses, matrix partial orders and shorted operators
over the Gaussian rationals, plus a finite-ring laboratory."""

from .core import (
    ExactMatrix,
    Scalar,
    Subspace,
    eliminate,
    format_matrix,
    full_rank_factorization,
    is_psd,
    parse_matrix,
    rank,
    solve,
)
from .errors import RegringError
from .geninv import (
    InverseFamily,
    group_inverse,
    moore_penrose,
    one_inverse,
    weak_to_strong,
    weighted_mp,
)
from .orders import (
    common_one_inverse,
    direct_sum_leq,
    hartwig_split_inverse,
    idempotent_leq,
    inverse_containment,
    loewner_leq,
    minus_leq,
)
from .shorted import (
    Frame,
    anderson_trapp,
    max_from_strong,
    member_from_weak,
    permutation_equivalent,
    shorted_psd,
)

__version__ = "0.1.0"
