"""Matrix partial orders: minus, direct-sum, Loewner and idempotent.

For matrices over a field the minus order is decided by rank subtractivity,
``a <=- b`` iff ``rank(b - a) == rank(b) - rank(a)``; the direct-sum order is
decided separately with subspace algebra so the two can be cross-checked.
"""

from typing import NamedTuple, Optional

from .core import ExactMatrix, Subspace, is_psd, rank, solve
from .errors import (
    ConsistencyError,
    NotHermitianError,
    NotIdempotentError,
    NotSquareError,
    PreconditionError,
    ShapeError,
)
from .geninv import InverseFamily, moore_penrose


class OrderCertificate(NamedTuple):
    """Verdict of :func:`minus_leq`.

    ``witness`` is an ``x`` with ``a x a = a``, ``a x = b x`` and ``x a = x b``
    when the verdict is true; otherwise ``violated`` names the failed check.
    ``rank_data`` is ``(rank(a), rank(b), rank(b - a))``.
    """

    verdict: bool
    witness: Optional[ExactMatrix]
    violated: Optional[str]
    rank_data: tuple

    def __bool__(self):
        return self.verdict


def _same_shape(a, b):
    if a.shape != b.shape:
        raise ShapeError(f"order predicates need equal shapes, got {a.shape} and {b.shape}")


def col_space(m):
    return Subspace.column_space(m)


def row_space(m):
    return Subspace.row_space(m)


def is_minus_witness(a, b, x):
    return a @ x @ a == a and a @ x == b @ x and x @ a == x @ b


def minus_leq(a, b):
    _same_shape(a, b)
    ra, rb, rd = rank(a), rank(b), rank(b - a)
    data = (ra, rb, rd)
    if rd != rb - ra:
        return OrderCertificate(False, None, "rank(b-a) = rank(b) - rank(a)", data)
    g = moore_penrose(b)
    x = g @ a @ g
    if not is_minus_witness(a, b, x):
        raise ConsistencyError("rank test passed but the witness g·a·g fails")
    return OrderCertificate(True, x, None, data)


def _direct_sum(parts, whole):
    """``whole = parts[0] ⊕ parts[1]`` as subspaces."""
    u, v = parts
    return (u & v).is_zero() and (u + v) == whole


def direct_sum_leq(a, b):
    """``col(b) = col(a) ⊕ col(b - a)``; the row-space version must agree."""
    _same_shape(a, b)
    d = b - a
    by_cols = _direct_sum((col_space(a), col_space(d)), col_space(b))
    by_rows = _direct_sum((row_space(a), row_space(d)), row_space(b))
    if by_cols != by_rows:
        raise ConsistencyError("column and row direct-sum conditions disagree")
    return by_cols


def inverse_containment(b, a):
    """Is every {1}-inverse of ``b`` also a {1}-inverse of ``a``?

    With ``g`` the Moore-Penrose inverse of ``b`` this holds iff
    ``a g a = a``, ``a g b = a`` and ``b g a = a``.
    """
    _same_shape(a, b)
    g = moore_penrose(b)
    ag = a @ g
    return ag @ a == a and ag @ b == a and b @ g @ a == a


def theorem1_conditions(a, b):
    """The three conditions for ``a`` and ``b`` to be summands of ``a + b``:

    1. ``col(a) ⊕ col(b) = col(a + b)``
    2. ``row(a) ⊕ row(b) = row(a + b)``
    3. ``col(a) ∩ col(b) = 0`` and ``row(a) ∩ row(b) = 0``
    """
    _same_shape(a, b)
    s = a + b
    ca, cb, ra, rb = col_space(a), col_space(b), row_space(a), row_space(b)
    c1 = _direct_sum((ca, cb), col_space(s))
    c2 = _direct_sum((ra, rb), row_space(s))
    c3 = (ca & cb).is_zero() and (ra & rb).is_zero()
    return (c1, c2, c3)


def loewner_leq(a, b):
    _same_shape(a, b)
    if not a.is_square():
        raise NotSquareError("Loewner order needs square matrices")
    if not (a.is_hermitian() and b.is_hermitian()):
        raise NotHermitianError("Loewner order needs hermitian matrices")
    return is_psd(b - a)


def idempotent_leq(a, b):
    """Kaplansky's order below an idempotent ``b``: ``a = a^2 = a b = b a``."""
    _same_shape(a, b)
    if not b.is_idempotent():
        raise NotIdempotentError("b is not idempotent")
    return a @ a == a and a @ b == a and b @ a == a


def common_one_inverse(a, b):
    """Some ``x`` with ``a x a = a`` and ``b x b = b``, or None.

    Searches the family ``g + (1 - g b) r1 + r2 (1 - b g)`` of all {1}-inverses
    of ``b``; ``a x a = a`` is linear in ``(r1, r2)``, solved with free
    parameters at 0.
    """
    _same_shape(a, b)
    g = moore_penrose(b)
    fam = InverseFamily.from_inverse(b, g)
    p, q = g.shape
    # vec(L r R) = (R^T ⊗ L) vec(r)
    left = a @ fam.left_annihilator
    right = fam.right_annihilator @ a
    system = ExactMatrix.hstack(a.T.kron(left), right.T.kron(a))
    target = (a - a @ g @ a).vec()
    z = solve(system, target)
    if z is None:
        return None
    n = p * q
    r1 = ExactMatrix.unvec(z.select_rows(range(n)), p, q)
    r2 = ExactMatrix.unvec(z.select_rows(range(n, 2 * n)), p, q)
    x = fam.member(r1, r2)
    if a @ x @ a != a or b @ x @ b != b:
        raise ConsistencyError("common {1}-inverse failed verification")
    return x


def hartwig_split_inverse(a, c):
    """A {1}-inverse ``x`` of ``a`` with ``x c = 0 = c x``.

    Needs ``a, c`` nonzero with trivially intersecting column spaces and row
    spaces; then ``a <=- a + c`` and the minus-order witness does the job.
    """
    _same_shape(a, c)
    if a.is_zero():
        raise PreconditionError("a != 0", "a must be nonzero")
    if c.is_zero():
        raise PreconditionError("c != 0", "c must be nonzero")
    if not (col_space(a) & col_space(c)).is_zero():
        raise PreconditionError("col(a) ∩ col(c) = 0", "column spaces of a and c overlap")
    if not (row_space(a) & row_space(c)).is_zero():
        raise PreconditionError("row(a) ∩ row(c) = 0", "row spaces of a and c overlap")
    cert = minus_leq(a, a + c)
    if not cert.verdict:
        raise ConsistencyError("disjoint summands but a is not below a + c")
    x = cert.witness
    zero = ExactMatrix.zeros(x.rows, c.cols)
    if a @ x @ a != a or x @ c != zero or c @ x != ExactMatrix.zeros(c.rows, x.cols):
        raise ConsistencyError("split inverse failed verification")
    return x


__all__ = [
    "OrderCertificate",
    "col_space",
    "common_one_inverse",
    "direct_sum_leq",
    "hartwig_split_inverse",
    "idempotent_leq",
    "inverse_containment",
    "is_minus_witness",
    "loewner_leq",
    "minus_leq",
    "row_space",
    "theorem1_conditions",
]
