"""Gaussian elimination and the things built on it.

Plain rational elimination with exact entries; every pivot is normalised to 1
so the reduced row echelon form is canonical. Inputs in this project are at
most a few dozen rows wide, so no attempt is made to control coefficient
growth (fraction-free Bareiss would be the swap if that changes).
"""

from typing import NamedTuple

from gmpy2 import mpq

from ..errors import NotSquareError, ShapeError, SingularMatrixError
from .matrix import ExactMatrix
from .scalar import ONE, ZERO


class Elimination(NamedTuple):
    rref: ExactMatrix
    rank: int
    pivots: tuple
    transform: ExactMatrix


def _rref_rows(rows, ncols, track=None):
    """In-place RREF of a list of row lists; returns pivot columns.

    ``track`` is an optional list of rows that receives the same row
    operations (used for the transform matrix).
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if not rows[i][c].is_zero()), None)
        if p is None:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
            if track is not None:
                track[p], track[r] = track[r], track[p]
        piv = rows[r][c]
        if piv != ONE:
            inv = piv.inverse()
            rows[r] = [x * inv if not x.is_zero() else x for x in rows[r]]
            if track is not None:
                track[r] = [x * inv if not x.is_zero() else x for x in track[r]]
        prow = rows[r]
        trow = track[r] if track is not None else None
        for i in range(nrows):
            if i == r:
                continue
            factor = rows[i][c]
            if factor.is_zero():
                continue
            row = rows[i]
            rows[i] = [x - factor * y if not y.is_zero() else x for x, y in zip(row, prow)]
            if track is not None:
                track[i] = [x - factor * y if not y.is_zero() else x for x, y in zip(track[i], trow)]
        pivots.append(c)
        r += 1
    return pivots


def _rref_rational(rows, ncols):
    """In-place RREF of ``mpq`` row lists over the first ``ncols`` columns."""
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[p], rows[r] = rows[r], rows[p]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            factor = rows[i][c]
            if i != r and factor:
                rows[i] = [x - factor * y if y else x for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return pivots


def solve_rational(rows, rhs, ncols):
    """Solve a real system given as lists of ``mpq`` rows.

    Returns ``(particular, null_basis)``: one solution with free unknowns at 0
    (None if inconsistent) and a list of kernel vectors. Working on bare
    rationals skips the complex scalar overhead for systems that are real
    by construction.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = _rref_rational(aug, ncols)
    zero, one = mpq(0), mpq(1)
    if any(aug[i][ncols] for i in range(len(pivots), len(aug))):
        particular = None
    else:
        particular = [zero] * ncols
        for i, c in enumerate(pivots):
            particular[c] = aug[i][ncols]
    pivot_set = set(pivots)
    basis = []
    for fcol in range(ncols):
        if fcol in pivot_set:
            continue
        v = [zero] * ncols
        v[fcol] = one
        for i, pc in enumerate(pivots):
            v[pc] = -aug[i][fcol]
        basis.append(v)
    return particular, basis


def rank_rational(rows, ncols):
    """Rank of a list of ``mpq`` rows."""
    return len(_rref_rational([list(r) for r in rows], ncols))


def eliminate(m):
    """Reduced row echelon form of ``m`` with the transform that produces it.

    Returns ``Elimination(rref, rank, pivots, transform)`` with
    ``transform @ m == rref`` and ``transform`` invertible.
    """
    rows = [list(m.row(i)) for i in range(m.rows)]
    track = [list(r) for r in ExactMatrix.identity(m.rows).to_rows()]
    pivots = _rref_rows(rows, m.cols, track)
    rref = ExactMatrix._raw(m.rows, m.cols, tuple(x for r in rows for x in r))
    transform = ExactMatrix._raw(m.rows, m.rows, tuple(x for r in track for x in r))
    return Elimination(rref, len(pivots), tuple(pivots), transform)


def rref(m):
    rows = [list(m.row(i)) for i in range(m.rows)]
    pivots = _rref_rows(rows, m.cols)
    return ExactMatrix._raw(m.rows, m.cols, tuple(x for r in rows for x in r)), tuple(pivots)


def rank(m):
    rows = [list(m.row(i)) for i in range(m.rows)]
    return len(_rref_rows(rows, m.cols))


def solve(a, b):
    """A solution ``x`` of ``a @ x == b`` with all free variables set to 0.

    Returns None when the system is inconsistent.
    """
    if a.rows != b.rows:
        raise ShapeError(f"solve: {a.shape} and {b.shape} have different row counts")
    n = a.cols
    aug = [list(a.row(i)) + list(b.row(i)) for i in range(a.rows)]
    pivots = _rref_rows(aug, n)
    r = len(pivots)
    for i in range(r, a.rows):
        if any(not x.is_zero() for x in aug[i][n:]):
            return None
    out = [[ZERO] * b.cols for _ in range(n)]
    for i, c in enumerate(pivots):
        out[c] = aug[i][n:]
    return ExactMatrix._raw(n, b.cols, tuple(x for row in out for x in row))


def inverse(m):
    if not m.is_square():
        raise NotSquareError("inverse of a non-square matrix")
    x = solve(m, ExactMatrix.identity(m.rows))
    if x is None or m.rows and rank(m) < m.rows:
        raise SingularMatrixError("matrix is singular")
    return x


def kernel(m):
    """Matrix whose columns form a basis of the null space of ``m``."""
    rows = [list(m.row(i)) for i in range(m.rows)]
    pivots = _rref_rows(rows, m.cols)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [ZERO] * m.cols
        v[fcol] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fcol]
        basis.append(v)
    if not basis:
        return ExactMatrix.zeros(m.cols, 0)
    return ExactMatrix.from_rows(basis).T


def full_rank_factorization(m):
    """``(f, g)`` with ``m == f @ g``, ``f`` of full column rank, ``g`` of full row rank.

    ``f`` is the pivot columns of ``m`` and ``g`` the nonzero rows of its RREF.
    A zero matrix gives an ``rows x 0`` and a ``0 x cols`` factor.
    """
    red, pivots = rref(m)
    f = m.select_columns(pivots)
    g = red.select_rows(range(len(pivots)))
    return f, g


class Subspace:
    """A subspace of ``Q(i)^n`` held by a basis of column vectors."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim, basis=None):
        if basis is None:
            basis = ExactMatrix.zeros(ambient_dim, 0)
        if basis.rows != ambient_dim:
            raise ShapeError("basis vectors do not live in the ambient space")
        if basis.cols and rank(basis) != basis.cols:
            raise ValueError("basis columns are linearly dependent")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def span(cls, vectors):
        """Span of the columns of ``vectors`` (which may be dependent)."""
        _, pivots = rref(vectors)
        return cls(vectors.rows, vectors.select_columns(pivots))

    @classmethod
    def column_space(cls, m):
        return cls.span(m)

    @classmethod
    def row_space(cls, m):
        """Row space of ``m``, its vectors written as columns (no conjugation)."""
        return cls.span(m.T)

    @classmethod
    def null_space(cls, m):
        return cls(m.cols, kernel(m))

    @classmethod
    def whole(cls, n):
        return cls(n, ExactMatrix.identity(n))

    @property
    def dim(self):
        return self.basis.cols

    def is_zero(self):
        return self.dim == 0

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise ShapeError(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def contains_vector(self, v):
        if self.dim == 0:
            return v.is_zero()
        return solve(self.basis, v) is not None

    def __le__(self, other):
        """Containment ``self`` is a subspace of ``other``."""
        self._check(other)
        if self.dim == 0:
            return True
        if other.dim < self.dim:
            return False
        if other.dim == 0:
            return False
        return solve(other.basis, self.basis) is not None

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.dim == other.dim and self <= other

    def __hash__(self):
        return hash((self.ambient_dim, rref(self.basis.T)[0]))

    def __add__(self, other):
        self._check(other)
        if self.dim == 0:
            return other
        if other.dim == 0:
            return self
        return Subspace.span(ExactMatrix.hstack(self.basis, other.basis))

    def __and__(self, other):
        return subspace_intersect(self, other)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def subspace_intersect(u, v):
    """``u ∩ v`` from the kernel of ``[U | -V]``: solutions give ``U s = V t``."""
    u._check(v)
    if u.dim == 0 or v.dim == 0:
        return Subspace(u.ambient_dim)
    k = kernel(ExactMatrix.hstack(u.basis, -v.basis))
    if k.cols == 0:
        return Subspace(u.ambient_dim)
    s = k.select_rows(range(u.dim))
    return Subspace.span(u.basis @ s)


def is_psd(m):
    """Exact test for hermitian positive semidefiniteness.

    Symmetric pivoting: a non-real or negative diagonal entry rejects; a zero
    diagonal entry forces its whole row to vanish (then it is dropped);
    otherwise eliminate with a positive pivot and recurse on the Schur
    complement. The empty matrix is PSD.
    """
    if not m.is_square():
        raise NotSquareError("is_psd needs a square matrix")
    if not m.is_hermitian():
        return False
    a = m.to_rows()
    while a:
        n = len(a)
        pivot = None
        keep = []
        for i in range(n):
            d = a[i][i]
            if not d.is_real() or d.re < 0:
                return False
            if d.is_zero():
                if any(not x.is_zero() for x in a[i]):
                    return False
            else:
                keep.append(i)
                if pivot is None:
                    pivot = i
        if pivot is None:
            return True
        p = a[pivot]
        inv = p[pivot].inverse()
        rest = [i for i in keep if i != pivot]
        a = [
            [a[i][j] - a[i][pivot] * inv * p[j] for j in rest]
            for i in rest
        ]
    return True
