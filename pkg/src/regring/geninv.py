"""Generalized inverses over Q(i).

Naming follows the usual Penrose identities for a matrix ``a`` and a
candidate ``x``:

1. ``a x a = a``            ({1}-inverse, "von Neumann inverse")
2. ``x a x = x``            (weak inverse)
3. ``(a x)^* = a x``
4. ``(x a)^* = x a``

A {1,2}-inverse is also called reflexive or strong.
"""

from dataclasses import dataclass

from .core import ExactMatrix, Scalar, eliminate, full_rank_factorization, inverse, is_psd, rank, solve
from .core.linalg import rank_rational, solve_rational
from .core.scalar import I as IMAG
from .core.scalar import ONE, ZERO
from .errors import (
    ConsistencyError,
    InvalidInverseError,
    NoSolutionError,
    NotPSDError,
    NotSquareError,
    PreconditionError,
    ShapeError,
)


def is_one_inverse(a, x):
    return a @ x @ a == a


def is_weak_inverse(a, x):
    return x @ a @ x == x


def is_reflexive_inverse(a, x):
    return is_one_inverse(a, x) and is_weak_inverse(a, x)


def _check_inverse_shape(a, x, name="x"):
    if x.shape != (a.cols, a.rows):
        raise ShapeError(f"{name} must be {a.cols}x{a.rows}, got {x.rows}x{x.cols}")


@dataclass(frozen=True)
class InverseFamily:
    """All {1}-inverses of ``subject`` as ``base + left·r1 + r2·right``.

    ``left_annihilator`` is ``1 - base·subject`` and ``right_annihilator`` is
    ``1 - subject·base``; ``r1`` and ``r2`` range over all matrices of the
    shape of ``base``.
    """

    subject: ExactMatrix
    base: ExactMatrix
    left_annihilator: ExactMatrix
    right_annihilator: ExactMatrix

    @classmethod
    def from_inverse(cls, a, x):
        _check_inverse_shape(a, x)
        if not is_one_inverse(a, x):
            raise InvalidInverseError("a·x·a != a")
        return cls(
            subject=a,
            base=x,
            left_annihilator=ExactMatrix.identity(a.cols) - x @ a,
            right_annihilator=ExactMatrix.identity(a.rows) - a @ x,
        )

    @property
    def parameter_shape(self):
        return self.base.shape

    def member(self, r1, r2):
        return family_member(self, r1, r2)


def one_inverse(a):
    """A particular {1}-inverse from the rank normal form, packaged as a family.

    With ``P a Q = diag(I_r, 0)`` the base is ``Q diag(I_r, 0) P``.
    """
    if a.rows == 0 or a.cols == 0:
        raise ShapeError("one_inverse needs a nonempty matrix")
    left = eliminate(a)
    p, r = left.transform, left.rank
    right = eliminate(left.rref.T)
    q = right.transform.T
    d = ExactMatrix._raw(
        a.cols, a.rows,
        tuple(ONE if i == j and i < r else ZERO for i in range(a.cols) for j in range(a.rows)),
    )
    if p @ a @ q != d.T:
        raise ConsistencyError("rank normal form reduction failed")
    return InverseFamily.from_inverse(a, q @ d @ p)


def family_member(family, r1, r2):
    """``base + (1 - x a) r1 + r2 (1 - a x)``; always a {1}-inverse of the subject."""
    shape = family.base.shape
    if r1.shape != shape or r2.shape != shape:
        raise ShapeError(f"family parameters must be {shape[0]}x{shape[1]}")
    return family.base + family.left_annihilator @ r1 + r2 @ family.right_annihilator


def reflexive_from_one(a, x):
    """Turn a {1}-inverse ``x`` into the {1,2}-inverse ``x a x``."""
    _check_inverse_shape(a, x)
    if not is_one_inverse(a, x):
        raise InvalidInverseError("x is not a {1}-inverse of a (a·x·a != a)")
    return x @ a @ x


def moore_penrose(a):
    """Moore-Penrose inverse via a full-rank factorization ``a = F G``:
    ``G^* (G G^*)^-1 (F^* F)^-1 F^*``.
    """
    f, g = full_rank_factorization(a)
    if f.cols == 0:
        return ExactMatrix.zeros(a.cols, a.rows)
    gh, fh = g.H, f.H
    return gh @ inverse(g @ gh) @ inverse(fh @ f) @ fh


def is_moore_penrose(a, x):
    ax, xa = a @ x, x @ a
    return ax @ a == a and xa @ x == x and ax.H == ax and xa.H == xa


def group_inverse(a):
    """The group inverse ``F (G F)^-2 G``, or None when ``rank(a^2) != rank(a)``."""
    if not a.is_square():
        raise NotSquareError("group inverse needs a square matrix")
    f, g = full_rank_factorization(a)
    if f.cols == 0:
        return ExactMatrix.zeros(a.rows)
    gf = g @ f
    if rank(gf) < gf.rows:
        return None
    gfi = inverse(gf)
    return f @ gfi @ gfi @ g


def is_group_inverse(a, x):
    return a @ x @ a == a and x @ a @ x == x and a @ x == x @ a


@dataclass(frozen=True)
class WeightedMPResult:
    solution: ExactMatrix
    solution_set_dim: int

    @property
    def unique(self):
        return self.solution_set_dim == 0


def _real_coords(m):
    out = []
    for e in m.entries:
        out.append(e.re)
        out.append(e.im)
    return out


def _skew_part(h):
    return h - h.H


def _combine(coeffs, shape):
    """Matrix whose entry ``(i, j)`` is ``coeffs[2k] + coeffs[2k+1] i`` for ``k = i cols + j``."""
    rows, cols = shape
    entries = [Scalar(coeffs[2 * k], coeffs[2 * k + 1]) for k in range(rows * cols)]
    return ExactMatrix(rows, cols, entries)


def _solve_symmetry(shape, image, rhs):
    """Solve the real-linear system ``image(r) - image(r)^* = rhs``.

    ``r`` ranges over complex matrices of ``shape``; each entry contributes a
    real and an imaginary unknown. Returns the particular solution with free
    unknowns at 0 and a basis (list of matrices) of the homogeneous solutions.
    """
    rows, cols = shape
    columns = []
    for i in range(rows):
        for j in range(cols):
            img = image(ExactMatrix.unit(rows, i, j, cols))
            columns.append(_real_coords(_skew_part(img)))
            columns.append(_real_coords(_skew_part(img.scale(IMAG))))
    if not columns:
        return ExactMatrix.zeros(rows, cols), []
    system = [list(r) for r in zip(*columns)]
    z, null = solve_rational(system, _real_coords(rhs), len(columns))
    if z is None:
        raise NoSolutionError("weighted Moore-Penrose constraints are inconsistent")
    return _combine(z, shape), [_combine(v, shape) for v in null]


def _real_rank(mats):
    if not mats:
        return 0
    rows = [_real_coords(m) for m in mats]
    return rank_rational(rows, len(rows[0]))


def weighted_mp(b, w):
    """The ``w``-weighted Moore-Penrose inverse of ``b`` for PSD ``w``.

    Searches the {1}-inverses ``g + (1 - g b) r1 + r2 (1 - b g)`` (``g`` the
    Moore-Penrose inverse) for ones making ``w b x`` and ``w x b`` hermitian.
    The two conditions separate: ``w b x`` only sees ``r2`` and ``w x b``
    only sees ``r1``. Both are real-linear, so each is solved as a rational
    system in the real and imaginary parts, free unknowns at 0, and the
    result is made reflexive by ``x -> x b x`` (which preserves both
    conditions).

    ``solution_set_dim`` is the real dimension of the set of all such
    inverses, measured through the pair ``(b x, x b)`` that determines a
    reflexive inverse; 0 means the answer is unique.
    """
    if not b.is_square():
        raise ShapeError("weighted_mp needs a square b so that w b x and w x b are defined")
    if not w.is_square() or w.rows != b.rows:
        raise ShapeError(f"weight must be {b.rows}x{b.rows}")
    if not is_psd(w):
        raise NotPSDError("weight is not hermitian positive semidefinite")
    n = b.rows
    g = moore_penrose(b)
    eye = ExactMatrix.identity(n)
    left = eye - g @ b
    right = eye - b @ g
    wb = w @ b
    wl = w @ left

    # w b x = w b g + w b r2 (1 - b g)
    r2, dirs2 = _solve_symmetry((n, n), lambda r: wb @ r @ right, -_skew_part(wb @ g))
    # w x b = w g b + w (1 - g b) r1 b
    r1, dirs1 = _solve_symmetry((n, n), lambda r: wl @ r @ b, -_skew_part(w @ g @ b))

    x = g + left @ r1 + r2 @ right
    x = x @ b @ x
    wbx, wxb = w @ b @ x, w @ x @ b
    if not (b @ x @ b == b and x @ b @ x == x and wbx.H == wbx and wxb.H == wxb):
        raise ConsistencyError("weighted Moore-Penrose solution failed its own identities")
    dim = _real_rank([b @ d @ right for d in dirs2]) + _real_rank([left @ d @ b for d in dirs1])
    return WeightedMPResult(x, dim)


def weak_to_strong(b, a, a1):
    """Enlarge a weak inverse ``b`` of ``a`` to the strong inverse
    ``c = b + a1 (a - a b a) a1``; ``b`` sits below ``c`` in the direct-sum order.
    """
    _check_inverse_shape(a, b, "b")
    _check_inverse_shape(a, a1, "a1")
    if b @ a @ b != b:
        raise PreconditionError("b·a·b = b", "b is not a weak inverse of a (b·a·b != b)")
    if a @ a1 @ a != a:
        raise PreconditionError("a·a1·a = a", "a1 is not a {1}-inverse of a (a·a1·a != a)")
    return b + a1 @ (a - a @ b @ a) @ a1
