import pytest
from hypothesis import given, settings

from helpers import from_sympy, matrices, rand_matrix, rand_psd, rng_for, to_sympy
from regring.core import ExactMatrix, M, inverse, rank
from regring.errors import NotPSDError, PreconditionError, ShapeError
from regring.geninv import (
    InverseFamily,
    family_member,
    group_inverse,
    is_group_inverse,
    is_moore_penrose,
    is_one_inverse,
    is_reflexive_inverse,
    is_weak_inverse,
    moore_penrose,
    one_inverse,
    reflexive_from_one,
    weak_to_strong,
    weighted_mp,
)


def penrose(a, x):
    return (
        a @ x @ a == a,
        x @ a @ x == x,
        (a @ x).H == a @ x,
        (x @ a).H == x @ a,
    )


@given(matrices())
def test_moore_penrose_equations(a):
    x = moore_penrose(a)
    assert penrose(a, x) == (True, True, True, True)
    assert is_moore_penrose(a, x)
    assert moore_penrose(x) == a


@settings(max_examples=40, deadline=None)
@given(matrices(max_dim=3))
def test_moore_penrose_matches_sympy(a):
    assert moore_penrose(a) == from_sympy(to_sympy(a).pinv())


@pytest.mark.parametrize(
    "text, pinv",
    [
        ("0 0 / 0 0", "0 0 / 0 0"),
        ("1 0 / 0 0", "1 0 / 0 0"),
        ("1 1 / 1 1", "1/4 1/4 / 1/4 1/4"),
        ("1 2", "1/5 / 2/5"),
        ("i", "-i"),
    ],
)
def test_moore_penrose_table(text, pinv):
    assert moore_penrose(M(text)) == M(pinv)


@given(matrices())
def test_group_inverse_exists_iff_rank_condition(a):
    if not a.is_square():
        return
    g = group_inverse(a)
    index_one = rank(a @ a) == rank(a)
    assert (g is not None) == index_one
    if g is not None:
        assert a @ g @ a == a and g @ a @ g == g and a @ g == g @ a
        assert is_group_inverse(a, g)


def test_group_inverse_nilpotent():
    assert group_inverse(M("0 1 / 0 0")) is None
    assert group_inverse(M("2 0 / 0 0")) == M("1/2 0 / 0 0")


@given(matrices())
def test_one_inverse_and_family(a):
    fam = one_inverse(a)
    assert is_one_inverse(a, fam.base)
    rng = rng_for(hash(a) & 0xFFFF)
    r1 = rand_matrix(rng, *fam.parameter_shape)
    r2 = rand_matrix(rng, *fam.parameter_shape)
    x = family_member(fam, r1, r2)
    assert is_one_inverse(a, x)
    y = reflexive_from_one(a, x)
    assert is_reflexive_inverse(a, y)


@given(matrices(rows=3, cols=3), matrices(rows=3, cols=3))
def test_family_reaches_every_one_inverse(a, t):
    # any {1}-inverse y = g + d is the member with r1 = d, r2 = g a d
    g = moore_penrose(a)
    y = g @ a @ g + (t - g @ a @ t @ a @ g)
    assert is_one_inverse(a, y)
    fam = InverseFamily.from_inverse(a, one_inverse(a).base)
    d = y - fam.base
    assert fam.member(d, fam.base @ a @ d) == y


def _weighted_oracle(b, c):
    """For ``w = c^* c`` with ``c`` invertible the answer is ``c^-1 (c b c^-1)^+ c``."""
    ci = inverse(c)
    inner = from_sympy(to_sympy(c @ b @ ci).pinv())
    return ci @ inner @ c


def test_weighted_mp_positive_definite_weight():
    rng = rng_for(11)
    done = 0
    while done < 15:
        n = rng.randint(1, 3)
        c = rand_matrix(rng, n, n)
        if rank(c) < n:
            continue
        b = rand_matrix(rng, n, n, rank=rng.randint(0, n))
        res = weighted_mp(b, c.H @ c)
        assert res.unique
        assert res.solution == _weighted_oracle(b, c)
        done += 1


@given(matrices(rows=3, cols=3))
def test_weighted_mp_identity_weight_is_moore_penrose(b):
    res = weighted_mp(b, ExactMatrix.identity(3))
    assert res.solution == moore_penrose(b)
    assert res.solution_set_dim == 0


def test_weighted_mp_singular_weight():
    rng = rng_for(5)
    for _ in range(15):
        n = 3
        w = rand_psd(rng, n, rng.randint(0, 2))
        b = rand_matrix(rng, n, n, rank=rng.randint(0, n))
        res = weighted_mp(b, w)
        x = res.solution
        assert is_reflexive_inverse(b, x)
        assert (w @ b @ x).H == w @ b @ x
        assert (w @ x @ b).H == w @ x @ b
        assert res.solution_set_dim >= 0


def test_weighted_mp_zero_weight_is_all_reflexive():
    b = M("1 0 / 0 0")
    res = weighted_mp(b, ExactMatrix.zeros(2))
    # reflexive inverses of a rank-1 2x2: bx and xb each move in 2 complex dims
    assert res.solution_set_dim == 4
    assert not res.unique


def test_weighted_mp_rejects():
    with pytest.raises(NotPSDError):
        weighted_mp(M("1 0 / 0 1"), M("0 1 / 1 0"))
    with pytest.raises(ShapeError):
        weighted_mp(M("1 2"), M("1"))
    with pytest.raises(ShapeError):
        weighted_mp(M("1 0 / 0 1"), M("1"))


def test_weak_to_strong():
    a = M("1 0 / 0 1")
    b = M("1 0 / 0 0")
    c = weak_to_strong(b, a, a)
    assert c == a
    assert is_reflexive_inverse(a, c)
    with pytest.raises(PreconditionError) as err:
        weak_to_strong(M("2 0 / 0 0"), a, a)
    assert err.value.condition == "b·a·b = b"
    with pytest.raises(PreconditionError) as err:
        weak_to_strong(b, a, M("0 0 / 0 0"))
    assert err.value.condition == "a·a1·a = a"


@settings(max_examples=40, deadline=None)
@given(matrices(rows=3, cols=3))
def test_weak_to_strong_random(a):
    from regring.orders import direct_sum_leq

    g = moore_penrose(a)
    b = g @ a @ ExactMatrix.unit(3, 0, 0) @ g  # weak inverse candidate
    if not is_weak_inverse(a, b):
        return
    c = weak_to_strong(b, a, g)
    assert is_reflexive_inverse(a, c)
    assert direct_sum_leq(b, c)
