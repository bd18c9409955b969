import pytest
from hypothesis import given, settings

from helpers import matrices, psd_by_minors, rand_matrix, rand_psd, rng_for, sympy_rank
from regring.core import (
    ExactMatrix,
    M,
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
from regring.errors import NotSquareError, SingularMatrixError


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == sympy_rank(m)


@given(matrices())
def test_rank_invariant_under_adjoints(m):
    r = rank(m)
    assert rank(m.T) == r == rank(m.H) == rank(m.conjugate())


@given(matrices())
def test_elimination_transform(m):
    el = eliminate(m)
    assert el.transform @ m == el.rref
    assert el.rank == len(el.pivots)
    assert rref(el.rref) == (el.rref, el.pivots)


@given(matrices())
def test_full_rank_factorization(m):
    f, g = full_rank_factorization(m)
    r = rank(m)
    assert f.cols == g.rows == r
    if r:
        assert f @ g == m
        assert rank(f) == rank(g) == r


@given(matrices())
def test_kernel(m):
    k = kernel(m)
    assert k.cols == m.cols - rank(m)
    if k.cols:
        assert (m @ k).is_zero()
        assert rank(k) == k.cols


@given(matrices(rows=3, cols=3))
def test_solve(m):
    rng = rng_for(hash(m) & 0xFFFF)
    x0 = rand_matrix(rng, 3, 1)
    b = m @ x0
    x = solve(m, b)
    assert x is not None and m @ x == b


def test_solve_inconsistent():
    assert solve(M("1 0 / 0 0"), M("0 / 1")) is None


def test_inverse():
    a = M("1 i / 0 2")
    assert a @ inverse(a) == ExactMatrix.identity(2)
    with pytest.raises(SingularMatrixError):
        inverse(M("1 2 / 2 4"))
    with pytest.raises(NotSquareError):
        inverse(M("1 2"))


@settings(max_examples=60, deadline=None)
@given(matrices(rows=4), matrices(rows=4))
def test_subspace_dimension_identity(u, v):
    su, sv = Subspace.column_space(u), Subspace.column_space(v)
    meet = su & sv
    assert (su + sv).dim + meet.dim == su.dim + sv.dim
    assert meet <= su and meet <= sv
    assert su <= su + sv
    for j in range(meet.basis.cols):
        col = meet.basis.select_columns([j])
        assert su.contains_vector(col) and sv.contains_vector(col)
    assert subspace_intersect(su, sv) == meet


def test_subspace_basics():
    whole = Subspace.whole(3)
    assert whole.dim == 3
    s = Subspace.span(M("1 / 1 / 0"))
    t = Subspace.span(M("2 / 2 / 0"))
    assert s == t and hash(s) == hash(t)
    assert (s & Subspace.span(M("1 / 0 / 0"))).is_zero()
    n = Subspace.null_space(M("1 1 0"))
    assert n.dim == 2
    assert Subspace.row_space(M("1 2 / 2 4")).dim == 1


@pytest.mark.parametrize(
    "text, expected",
    [
        ("1 0 / 0 1", True),
        ("1 1 / 1 1", True),
        ("0 0 / 0 0", True),
        ("1 2 / 2 1", False),
        ("0 1 / 1 0", False),
        ("1 i / -i 1", True),
        ("1 i / i 1", False),
        ("0 0 / 0 -1", False),
        ("2 -1 0 / -1 2 -1 / 0 -1 2", True),
        ("1 1 0 / 1 1 1 / 0 1 1", False),
    ],
)
def test_is_psd_table(text, expected):
    assert is_psd(M(text)) is expected


def test_is_psd_against_minors():
    rng = rng_for(7)
    for trial in range(30):
        n = rng.randint(1, 3)
        if trial % 3 == 0:
            m = rand_psd(rng, n, rng.randint(0, n))
        else:
            z = rand_matrix(rng, n, n)
            m = z + z.H
        assert is_psd(m) == psd_by_minors(m)
