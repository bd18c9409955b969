import itertools

import pytest

from helpers import rand_matrix, rand_psd, rng_for
from regring.core import ExactMatrix, M, Scalar, Subspace, is_psd, rank
from regring.errors import (
    DegenerateFrameError,
    InvalidInverseError,
    NotIdempotentError,
    NotPSDError,
    PreconditionError,
    SearchBoundError,
)
from regring.geninv import group_inverse, moore_penrose, one_inverse
from regring.orders import col_space, direct_sum_leq, loewner_leq, row_space
from regring.shorted import (
    COLUMN,
    OBLIQUE,
    ROW,
    Frame,
    anderson_trapp,
    core_matrix,
    corner_contains,
    frame_for,
    frame_within,
    is_maximal,
    max_from_strong,
    member_from_weak,
    permutation_equivalent,
    projector_intersection,
    shorted_psd,
)


def _random_frame(rng, a):
    """Oblique idempotents with ``col(e) ⊆ col(a)`` and ``row(f) ⊆ row(a)``."""
    n = a.rows
    e_dir = a @ rand_matrix(rng, n, 1)
    f_dir = rand_matrix(rng, 1, n) @ a
    comp = Subspace.null_space(rand_matrix(rng, 1, n))
    comp_r = Subspace.null_space(rand_matrix(rng, 1, n))
    e = projector_intersection(Subspace.span(e_dir), Subspace.whole(n), COLUMN, OBLIQUE, comp)
    f = projector_intersection(Subspace.span(f_dir.T), Subspace.whole(n), ROW, OBLIQUE, comp_r)
    return Frame(e, f)


def _instances(seed, count):
    rng = rng_for(seed)
    out = []
    while len(out) < count:
        a = rand_matrix(rng, 3, 3, rank=rng.randint(1, 3))
        try:
            frame = _random_frame(rng, a)
        except PreconditionError:
            continue  # random complement was not complementary
        out.append((rng, a, frame))
    return out


def test_projector_intersection_orthogonal():
    u = Subspace.span(M("1 0 / 1 1 / 0 1"))
    v = Subspace.span(M("1 / 1 / 0"))
    p = projector_intersection(u, v)
    assert p.is_idempotent() and p.is_hermitian()
    assert Subspace.column_space(p) == u & v
    q = projector_intersection(u, v, side=ROW)
    assert Subspace.row_space(q) == u & v


def test_projector_intersection_oblique_needs_complement():
    u = Subspace.whole(2)
    with pytest.raises(PreconditionError):
        projector_intersection(u, u, style=OBLIQUE)
    with pytest.raises(PreconditionError):
        projector_intersection(u, u, style=OBLIQUE, complement=Subspace.span(M("1 / 0")))


def test_frame_rejects_non_idempotent():
    with pytest.raises(NotIdempotentError):
        Frame(M("2 0 / 0 0"), M("1 0 / 0 0"))


def test_frame_for_shapes():
    a = M("1 0 0 / 0 1 0 / 0 0 0")
    b = M("1 0 0 / 0 0 0 / 0 0 0")
    c = M("0 0 0 / 0 1 0 / 0 0 0")
    frame = frame_for(a, b, c)
    assert frame.e == M("0 0 0 / 0 1 0 / 0 0 0")
    assert frame.f == M("1 0 0 / 0 0 0 / 0 0 0")
    assert frame_within(a, frame)


@pytest.mark.parametrize("case", range(12))
def test_general_frame_members_and_maxima(case):
    ((rng, a, frame),) = _instances(100 + case, 1)
    a1 = one_inverse(a).base
    cm = core_matrix(a, frame, a1)
    assert cm.invariant_under_choice
    # core does not depend on the {1}-inverse
    assert core_matrix(a, frame, moore_penrose(a)).core == cm.core
    core = cm.core
    rc = rank(core)

    # members from weak inverses u = g p with p projecting into col(core)
    g = moore_penrose(core)
    members = 0
    for _ in range(3):
        v = core @ rand_matrix(rng, core.cols, 1)
        if v.is_zero():
            continue
        span = Subspace.span(v)
        u = g @ projector_intersection(span, span)
        assert u @ core @ u == u
        s = member_from_weak(a, frame, a1, u)
        assert frame.contains(s)
        assert direct_sum_leq(s, a)
        assert rank(s) <= rc
        members += 1
    assert members or core.is_zero()

    for strategy in ("mp", "group"):
        try:
            d = max_from_strong(a, frame, a1, strategy)
        except PreconditionError as err:
            assert strategy == "group" and err.condition == "group inverse exists"
            continue
        assert frame.contains(d)
        assert direct_sum_leq(d, a)
        assert rank(d) == rc
        assert is_maximal(d, a, frame, a1)
        assert corner_contains(d, frame)


def test_is_maximal_false_for_small_member():
    a = ExactMatrix.identity(3)
    e = M("1 0 0 / 0 1 0 / 0 0 0")
    frame = Frame(e, e)
    small = M("1 0 0 / 0 0 0 / 0 0 0")
    assert not is_maximal(small, a, frame, a)
    assert is_maximal(e, a, frame, a)
    with pytest.raises(PreconditionError):
        is_maximal(a, a, frame, a)


def test_member_from_weak_checks():
    a = ExactMatrix.identity(2)
    e = M("1 0 / 0 0")
    frame = Frame(e, e)
    with pytest.raises(InvalidInverseError):
        member_from_weak(a, frame, a, M("2 0 / 0 0"))
    with pytest.raises(InvalidInverseError):
        member_from_weak(a, frame, M("0 0 / 0 0"), e)
    # frame outside a
    with pytest.raises(PreconditionError):
        member_from_weak(M("0 0 / 0 1"), frame, M("0 0 / 0 1"), ExactMatrix.zeros(2))


def test_max_from_strong_explicit_and_bad_strategy():
    a = ExactMatrix.identity(2)
    e = M("1 0 / 0 0")
    frame = Frame(e, e)
    assert max_from_strong(a, frame, a, e) == e
    with pytest.raises(InvalidInverseError):
        max_from_strong(a, frame, a, M("0 0 / 0 0"))
    with pytest.raises(ValueError):
        max_from_strong(a, frame, a, "bogus")


@pytest.mark.parametrize("seed", range(8))
def test_shorted_psd_matches_anderson_trapp(seed):
    rng = rng_for(seed)
    n = 4
    k = rng.randint(1, n - 1)
    a = rand_psd(rng, n, n)  # full rank so every corner sits inside a
    e = ExactMatrix.diag([1] * k + [0] * (n - k))
    res = shorted_psd(a, e)
    assert res.value == anderson_trapp(a, k)
    assert res.via_core == res.via_weighted
    assert is_psd(res.value) and loewner_leq(res.value, a) and direct_sum_leq(res.value, a)
    assert res.rank_drop == n - k


def test_shorted_psd_preconditions():
    a = M("1 0 / 0 0")
    with pytest.raises(NotPSDError):
        shorted_psd(M("0 1 / 1 0"), M("1 0 / 0 0"))
    with pytest.raises(PreconditionError) as err:
        shorted_psd(a, M("0 0 / 0 1"))
    assert err.value.condition == "col(e) ⊆ col(a)"
    with pytest.raises(DegenerateFrameError):
        shorted_psd(a, M("1 0 / 0 0"))
    with pytest.raises(NotIdempotentError):
        shorted_psd(a, M("2 0 / 0 0"))


def test_anderson_trapp_edges():
    a = M("2 1 / 1 2")
    assert anderson_trapp(a, 2) == a
    assert anderson_trapp(a, 0) == ExactMatrix.zeros(2)
    assert anderson_trapp(a, 1) == M("3/2 0 / 0 0")
    with pytest.raises(PreconditionError):
        anderson_trapp(a, 3)


def test_permutation_equivalent():
    rng = rng_for(21)
    for _ in range(10):
        x = rand_matrix(rng, 4, 4)
        perm = list(range(4))
        rng.shuffle(perm)
        p = ExactMatrix.from_rows([[1 if j == perm[i] else 0 for j in range(4)] for i in range(4)])
        y = p @ x @ p.T
        q = permutation_equivalent(x, y)
        assert q is not None and q @ x @ q.T == y
    assert permutation_equivalent(M("1 0 / 0 2"), M("1 0 / 0 3")) is None
    with pytest.raises(SearchBoundError):
        permutation_equivalent(ExactMatrix.identity(11), ExactMatrix.identity(11))


def test_row_and_col_space_helpers():
    a = M("1 2 / 2 4")
    assert col_space(a).dim == row_space(a).dim == 1


def _psd_instance(rng, n=4):
    """PSD ``a`` of deficient rank and an orthogonal ``e`` with col(e) strictly inside col(a)."""
    while True:
        a = rand_psd(rng, n, rng.randint(2, n - 1))
        ra = rank(a)
        span = Subspace.span(a @ rand_matrix(rng, n, rng.randint(1, ra - 1)))
        e = projector_intersection(span, span)
        if 0 < rank(e) < ra:
            return a, e


def _strong_inverses(rng, core, count=3):
    from regring.geninv import InverseFamily, reflexive_from_one

    out = [moore_penrose(core)]
    g = group_inverse(core)
    if g is not None:
        out.append(g)
    fam = InverseFamily.from_inverse(core, out[0])
    for _ in range(count):
        x = fam.member(rand_matrix(rng, *fam.parameter_shape), rand_matrix(rng, *fam.parameter_shape))
        out.append(reflexive_from_one(core, x))
    return out


@pytest.mark.parametrize("seed", range(6))
def test_weak_below_strong_maps_to_images_below(seed):
    # y <=⊕ z for a weak y and strong z of the core gives e y f <=⊕ e z f
    from regring.geninv import weak_to_strong

    ((rng, a, frame),) = _instances(300 + seed, 1)
    a1 = moore_penrose(a)
    core = frame.f @ a1 @ frame.e
    if core.is_zero():
        return
    span = Subspace.span(core @ rand_matrix(rng, core.cols, 1))
    y = moore_penrose(core) @ projector_intersection(span, span)
    z = weak_to_strong(y, core, moore_penrose(core))
    assert direct_sum_leq(y, z)
    assert direct_sum_leq(frame.e @ y @ frame.f, frame.e @ z @ frame.f)


@pytest.mark.parametrize("seed", range(6))
def test_comparable_maxima_are_equal(seed):
    ((rng, a, frame),) = _instances(400 + seed, 1)
    core = frame.f @ moore_penrose(a) @ frame.e
    images = [frame.e @ v @ frame.f for v in _strong_inverses(rng, core)]
    for d, d2 in itertools.product(images, repeat=2):
        if direct_sum_leq(d, d2):
            assert d == d2


@pytest.mark.parametrize("seed", range(6))
def test_shorted_value_is_fixed_point(seed):
    rng = rng_for(500 + seed)
    a, e = _psd_instance(rng)
    value = shorted_psd(a, e).value
    frame = Frame(e, e.H)
    a1 = moore_penrose(a)
    core = frame.f @ a1 @ frame.e
    for v in _strong_inverses(rng, core):
        assert max_from_strong(a, frame, a1, v) == value
    assert max_from_strong(a, frame, a1, "mp") == value


@pytest.mark.parametrize("seed", range(6))
def test_shorted_value_dominates_corner_elements_below_a(seed):
    rng = rng_for(600 + seed)
    a, e = _psd_instance(rng)
    value = shorted_psd(a, e).value
    checked = 0
    for _ in range(6):
        z = rand_matrix(rng, a.rows, 1)
        d = e @ z @ z.H @ e.H
        for _ in range(12):
            if loewner_leq(d, a):
                break
            d = d.scale(Scalar("1/4"))
        if loewner_leq(d, a):
            assert loewner_leq(d, value)
            checked += 1
    for t in ("0", "1/3", "1"):
        assert loewner_leq(value.scale(Scalar(t)), value)
    assert checked


def test_shorted_zero_frame():
    rng = rng_for(1)
    a = rand_psd(rng, 3, 2)
    assert shorted_psd(a, ExactMatrix.zeros(3)).value == ExactMatrix.zeros(3)


@pytest.mark.parametrize("seed", range(8))
def test_anderson_trapp_psd_and_below(seed):
    rng = rng_for(700 + seed)
    n = rng.randint(2, 4)
    a = rand_psd(rng, n, rng.randint(1, n))
    for k in range(n + 1):
        s = anderson_trapp(a, k)
        assert is_psd(s) and loewner_leq(s, a)


@pytest.mark.parametrize("seed", range(8))
def test_equal_rank_iff_a_in_corner(seed):
    rng = rng_for(800 + seed)
    a = rand_psd(rng, 4, rng.randint(1, 3))
    ra = rank(a)
    k = rng.randint(1, ra)
    span = Subspace.span(a @ rand_matrix(rng, 4, k))
    e = projector_intersection(span, span)
    inside = corner_contains(a, Frame(e, e.H))
    assert inside == (rank(e) == ra)
    if rank(e) == ra:
        with pytest.raises(DegenerateFrameError):
            shorted_psd(a, e)
