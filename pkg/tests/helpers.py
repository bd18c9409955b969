"""Random exact matrices and a sympy-backed oracle for cross-checks."""

import random

import sympy
from hypothesis import strategies as st

from regring.core import ExactMatrix, Scalar

SMALL = [-2, -1, 0, 0, 1, 2]


def rand_scalar(rng, gaussian=True):
    num = rng.randint(-3, 3)
    den = rng.randint(1, 3)
    im = rng.randint(-2, 2) if gaussian and rng.random() < 0.5 else 0
    return Scalar(f"{num}/{den}") + Scalar(0, im)


def rand_matrix(rng, rows, cols, rank=None, gaussian=True):
    """Random matrix; with ``rank`` given it is a product of thin factors."""
    if rank is None:
        return ExactMatrix.from_rows(
            [[rand_scalar(rng, gaussian) for _ in range(cols)] for _ in range(rows)]
        )
    if rank == 0:
        return ExactMatrix.zeros(rows, cols)
    left = rand_matrix(rng, rows, rank, gaussian=gaussian)
    right = rand_matrix(rng, rank, cols, gaussian=gaussian)
    return left @ right


def rand_psd(rng, n, rank, gaussian=True):
    z = rand_matrix(rng, n, rank, gaussian=gaussian)
    return z @ z.H


def rng_for(seed):
    return random.Random(seed)


@st.composite
def matrices(draw, rows=None, cols=None, max_dim=4, gaussian=True):
    r = rows if rows is not None else draw(st.integers(1, max_dim))
    c = cols if cols is not None else draw(st.integers(1, max_dim))
    ints = st.integers(-2, 2)
    entries = []
    for _ in range(r * c):
        re = draw(st.sampled_from(SMALL + [1, -1]))
        den = draw(st.sampled_from([1, 1, 2, 3]))
        im = draw(ints) if gaussian else 0
        entries.append(Scalar(f"{re}/{den}") + Scalar(0, im))
    # bias toward rank deficiency by occasionally copying a row
    if r > 1 and draw(st.booleans()):
        entries[(r - 1) * c:] = entries[:c]
    return ExactMatrix(r, c, entries)


def to_sympy(m):
    def conv(x):
        return sympy.Rational(int(x.re.numerator), int(x.re.denominator)) + sympy.I * sympy.Rational(
            int(x.im.numerator), int(x.im.denominator)
        )

    return sympy.Matrix(m.rows, m.cols, lambda i, j: conv(m[i, j]))


def from_sympy(s):
    def conv(x):
        re, im = sympy.nsimplify(x).as_real_imag()
        return Scalar(str(sympy.Rational(re))) + Scalar(0, 1) * Scalar(str(sympy.Rational(im)))

    return ExactMatrix.from_rows([[conv(s[i, j]) for j in range(s.cols)] for i in range(s.rows)])


def sympy_rank(m):
    return to_sympy(m).rank(simplify=True)


def psd_by_minors(m):
    """Hermitian and every principal minor nonnegative (slow, independent)."""
    import itertools

    s = to_sympy(m)
    if s != s.H:
        return False
    n = s.rows
    for k in range(1, n + 1):
        for idx in itertools.combinations(range(n), k):
            det = sympy.simplify(s.extract(list(idx), list(idx)).det())
            if sympy.re(det) < 0:
                return False
    return True
