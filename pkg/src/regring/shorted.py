"""Maximal elements below ``a`` inside a corner ``e R f`` (shorted operators).

A :class:`Frame` is a pair of idempotents ``(e, f)``. For a matrix ``a``
and a {1}-inverse ``a1`` the *core* is ``f a1 e``. Weak inverses ``u`` of the
core give the members ``e u f`` of the set of corner elements below ``a``
in the direct-sum order; strong inverses give the maximal ones.

For hermitian PSD ``a`` and ``f = e^*`` the maximal element is unique and is
computed two ways, ``e (f a^+ e)^+ f`` and ``a f_a^+ f`` with ``f_a^+`` the
``a``-weighted Moore-Penrose inverse of ``f``. It matches the Anderson-Trapp
block formula up to a permutation of coordinates.
"""

from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .core import ExactMatrix, inverse, is_psd, rank, solve
from .core.scalar import ONE, ZERO
from .errors import (
    ConsistencyError,
    DegenerateFrameError,
    InvalidInverseError,
    NotIdempotentError,
    NotPSDError,
    NotSquareError,
    PreconditionError,
    SearchBoundError,
    ShapeError,
)
from .geninv import InverseFamily, group_inverse, moore_penrose, weighted_mp
from .orders import col_space, direct_sum_leq, loewner_leq, row_space

COLUMN = "column"
ROW = "row"
ORTHOGONAL = "orthogonal"
OBLIQUE = "oblique"

PERMUTATION_SEARCH_BOUND = 10


@dataclass(frozen=True)
class Frame:
    """Idempotents ``e`` (column side) and ``f`` (row side)."""

    e: ExactMatrix
    f: ExactMatrix

    def __post_init__(self):
        if not self.e.is_idempotent():
            raise NotIdempotentError("frame e is not idempotent")
        if not self.f.is_idempotent():
            raise NotIdempotentError("frame f is not idempotent")

    def contains(self, d):
        """Is ``d`` in the corner ``e R f``?"""
        return self.e @ d @ self.f == d


def projector_intersection(u, v, side=COLUMN, style=ORTHOGONAL, complement=None):
    """Idempotent whose column space (``side="column"``) or row space
    (``side="row"``) is ``u ∩ v``.

    ``style="orthogonal"`` gives the hermitian projector. ``style="oblique"``
    projects along ``complement``, which must be complementary to ``u ∩ v``.
    """
    if side not in (COLUMN, ROW):
        raise ValueError(f"side must be {COLUMN!r} or {ROW!r}")
    w = u & v
    n = w.ambient_dim
    if style == ORTHOGONAL:
        if w.dim == 0:
            p = ExactMatrix.zeros(n)
        else:
            b = w.basis
            p = b @ inverse(b.H @ b) @ b.H
    elif style == OBLIQUE:
        if complement is None:
            raise PreconditionError("complement supplied", "oblique projector needs a complement")
        if complement.ambient_dim != n:
            raise ShapeError("complement lives in a different space")
        if w.dim + complement.dim != n or not (w & complement).is_zero():
            raise PreconditionError(
                "complement is complementary", "supplied complement is not complementary"
            )
        if w.dim == 0:
            p = ExactMatrix.zeros(n)
        else:
            basis = ExactMatrix.hstack(w.basis, complement.basis) if complement.dim else w.basis
            keep = ExactMatrix.diag([1] * w.dim + [0] * complement.dim)
            p = basis @ keep @ inverse(basis)
    else:
        raise ValueError(f"unknown projector style {style!r}")
    return p if side == COLUMN else p.T


def frame_for(a, b, c, style=ORTHOGONAL, e_complement=None, f_complement=None):
    """The frame with ``col(e) = col(a) ∩ col(c)`` and ``row(f) = row(a) ∩ row(b)``."""
    e = projector_intersection(col_space(a), col_space(c), COLUMN, style, e_complement)
    f = projector_intersection(row_space(a), row_space(b), ROW, style, f_complement)
    return Frame(e, f)


def _check_one_inverse(a, a1):
    if a1.shape != (a.cols, a.rows):
        raise ShapeError(f"a1 must be {a.cols}x{a.rows}")
    if a @ a1 @ a != a:
        raise InvalidInverseError("a1 is not a {1}-inverse of a")


def frame_within(a, frame):
    """``col(e) ⊆ col(a)`` and ``row(f) ⊆ row(a)``, checked as ``a a^+ e = e`` and ``f a^+ a = f``."""
    ap = moore_penrose(a)
    return a @ ap @ frame.e == frame.e and frame.f @ ap @ a == frame.f


def _require_frame_within(a, frame):
    if not frame_within(a, frame):
        raise PreconditionError(
            "col(e) ⊆ col(a) and row(f) ⊆ row(a)",
            "frame does not sit inside a: need col(e) ⊆ col(a) and row(f) ⊆ row(a)",
        )


class CoreMatrix(NamedTuple):
    core: ExactMatrix
    invariant_under_choice: bool


def core_matrix(a, frame, a1):
    """``f a1 e`` and whether it is the same for every {1}-inverse of ``a``.

    Independence holds when the frame sits inside ``a``; it is then
    re-checked against a second {1}-inverse drawn from the family of ``a1``.
    """
    _check_one_inverse(a, a1)
    core = frame.f @ a1 @ frame.e
    invariant = frame_within(a, frame)
    if invariant:
        fam = InverseFamily.from_inverse(a, a1)
        ones = ExactMatrix(a1.rows, a1.cols, [ONE] * (a1.rows * a1.cols))
        other = frame.f @ fam.member(ones, ones) @ frame.e
        if other != core:
            raise ConsistencyError("core changed with the choice of {1}-inverse")
    return CoreMatrix(core, invariant)


def member_from_weak(a, frame, a1, u):
    """``e u f`` for a weak inverse ``u`` of the core; it lies below ``a``."""
    _check_one_inverse(a, a1)
    _require_frame_within(a, frame)
    core = frame.f @ a1 @ frame.e
    if u.shape != (core.cols, core.rows) or u @ core @ u != u:
        raise InvalidInverseError("u is not a weak inverse of the core f·a1·e")
    s = frame.e @ u @ frame.f
    if s @ a1 @ s != s or not direct_sum_leq(s, a):
        raise ConsistencyError("e·u·f is not below a")
    return s


def is_maximal(d, a, frame, a1):
    """Is the corner element ``d`` below ``a`` maximal among such elements?

    Members are weak inverses of the core pushed through the frame, and the
    maximal ones are exactly those reaching the core's rank.
    """
    _check_one_inverse(a, a1)
    if not frame.contains(d):
        raise PreconditionError("d ∈ eRf", "d is not in the corner e·R·f")
    if not direct_sum_leq(d, a):
        raise PreconditionError("d ≤⊕ a", "d is not below a in the direct-sum order")
    core = frame.f @ a1 @ frame.e
    return d @ a1 @ d == d and rank(d) == rank(core)


def max_from_strong(a, frame, a1, strategy="mp"):
    """A maximal element ``e v f`` with ``v`` a strong inverse of the core.

    ``strategy`` is ``"mp"`` (Moore-Penrose inverse of the core), ``"group"``
    (its group inverse) or an explicit :class:`ExactMatrix`.
    """
    _check_one_inverse(a, a1)
    _require_frame_within(a, frame)
    core = frame.f @ a1 @ frame.e
    if isinstance(strategy, ExactMatrix):
        v = strategy
        if v.shape != (core.cols, core.rows) or core @ v @ core != core or v @ core @ v != v:
            raise InvalidInverseError("explicit v is not a strong inverse of the core")
    elif strategy == "mp":
        v = moore_penrose(core)
    elif strategy == "group":
        v = group_inverse(core)
        if v is None:
            raise PreconditionError(
                "group inverse exists", "the core has no group inverse (rank(core²) < rank(core))"
            )
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    d = frame.e @ v @ frame.f
    if not direct_sum_leq(d, a) or not is_maximal(d, a, frame, a1):
        raise ConsistencyError("e·v·f is not a maximal element below a")
    return d


def corner_contains(a, frame):
    """Solve-based test for ``a ∈ e R f``: ``a = e x`` and ``a = y f`` are both solvable."""
    return solve(frame.e, a) is not None and solve(frame.f.T, a.T) is not None


@dataclass(frozen=True)
class ShortedResult:
    value: ExactMatrix
    via_weighted: Optional[ExactMatrix]
    via_core: Optional[ExactMatrix]
    rank_drop: int


def shorted_psd(a, e):
    """The unique shorted operator of PSD ``a`` on the corner ``e S e^*``.

    Requires ``col(e) ⊆ col(a)`` and ``rank(e) != rank(a)`` (equal ranks mean
    ``a`` already lies in the corner).
    """
    if not a.is_square():
        raise NotSquareError("a must be square")
    if not is_psd(a):
        raise NotPSDError("a is not hermitian positive semidefinite")
    if e.shape != a.shape:
        raise ShapeError("e must have the shape of a")
    if not e.is_idempotent():
        raise NotIdempotentError("e is not idempotent")
    if not col_space(e) <= col_space(a):
        raise PreconditionError("col(e) ⊆ col(a)", "column space of e is not inside that of a")
    if rank(e) == rank(a):
        raise DegenerateFrameError("rank(e) != rank(a)", "rank(e) = rank(a): a already lies in e·S·e*")
    f = e.H
    via_core = e @ moore_penrose(f @ moore_penrose(a) @ e) @ f
    via_weighted = a @ weighted_mp(f, a).solution @ f
    if via_core != via_weighted:
        raise ConsistencyError("the two shorted-operator formulas disagree")
    value = via_core
    if not is_psd(value):
        raise ConsistencyError("shorted operator is not PSD")
    if e @ value @ f != value:
        raise ConsistencyError("shorted operator left the corner")
    if not direct_sum_leq(value, a) or not loewner_leq(value, a):
        raise ConsistencyError("shorted operator is not below a")
    return ShortedResult(value, via_weighted, via_core, rank(a) - rank(value))


def anderson_trapp(a, k):
    """``[[a11 - a12 a22^+ a21, 0], [0, 0]]`` with ``a11`` the leading ``k x k`` block."""
    if not a.is_square():
        raise NotSquareError("a must be square")
    n = a.rows
    if not 0 <= k <= n:
        raise PreconditionError("0 <= k <= n", f"k = {k} out of range 0..{n}")
    if not is_psd(a):
        raise NotPSDError("a is not hermitian positive semidefinite")
    head, tail = range(k), range(k, n)
    a11 = a.submatrix(head, head)
    if k < n:
        a12 = a.submatrix(head, tail)
        a21 = a.submatrix(tail, head)
        a22 = a.submatrix(tail, tail)
        a11 = a11 - a12 @ moore_penrose(a22) @ a21
    out = [[a11[i, j] if i < k and j < k else ZERO for j in range(n)] for i in range(n)]
    return ExactMatrix.from_rows(out) if n else ExactMatrix.zeros(0)


def _signature(values):
    return frozenset(Counter(values).items())


def permutation_equivalent(x, y):
    """A permutation matrix ``P`` with ``P x P^T == y``, or None.

    Backtracking over ``sigma`` with ``y[i, j] == x[sigma(i), sigma(j)]``,
    pruned by diagonal entries and row/column value multisets.
    """
    if not (x.is_square() and y.is_square()) or x.shape != y.shape:
        raise ShapeError("permutation equivalence needs square matrices of one size")
    n = x.rows
    if n > PERMUTATION_SEARCH_BOUND:
        raise SearchBoundError(f"n = {n} exceeds the search bound {PERMUTATION_SEARCH_BOUND}")
    xs = [(x[s, s], _signature(x.row(s)), _signature(x.column_entries(s))) for s in range(n)]
    ys = [(y[i, i], _signature(y.row(i)), _signature(y.column_entries(i))) for i in range(n)]
    candidates = [[s for s in range(n) if xs[s] == ys[i]] for i in range(n)]
    sigma = []
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        for s in candidates[i]:
            if used[s]:
                continue
            if any(y[i, j] != x[s, t] or y[j, i] != x[t, s] for j, t in enumerate(sigma)):
                continue
            used[s] = True
            sigma.append(s)
            if extend(i + 1):
                return True
            sigma.pop()
            used[s] = False
        return False

    if not extend(0):
        return None
    p = ExactMatrix.from_rows(
        [[1 if j == sigma[i] else 0 for j in range(n)] for i in range(n)]
    ) if n else ExactMatrix.zeros(0)
    if p @ x @ p.T != y:
        raise ConsistencyError("permutation search returned a wrong permutation")
    return p
