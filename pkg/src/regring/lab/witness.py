"""Exhaustive minus-order witness search in ``M_k(GF(p))`` without a ring table.

``M_4(GF(2))`` has 65536 elements, too many for multiplication tables but
few enough to test every candidate witness in one batched numpy pass.
"""

import itertools

import numpy as np

MAX_CANDIDATES = 1 << 16


def _all_matrices(k, p):
    n = p ** (k * k)
    if n > MAX_CANDIDATES:
        raise ValueError(f"M_{k}(GF({p})) has {n} elements; limit is {MAX_CANDIDATES}")
    digits = np.array(list(itertools.product(range(p), repeat=k * k)), dtype=np.int64)
    return digits.reshape(n, k, k)


def minus_witnesses_gf(a, b, p):
    """All ``x`` over GF(p) with ``a x a = a``, ``a x = b x`` and ``x a = x b``.

    ``a`` and ``b`` are integer arrays (or nested lists) of shape ``(k, k)``.
    """
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    k = a.shape[0]
    xs = _all_matrices(k, p)
    ax = np.matmul(a, xs) % p
    bx = np.matmul(b, xs) % p
    xa = np.matmul(xs, a) % p
    xb = np.matmul(xs, b) % p
    axa = np.matmul(ax, a) % p
    ok = (
        (axa == a).all(axis=(1, 2))
        & (ax == bx).all(axis=(1, 2))
        & (xa == xb).all(axis=(1, 2))
    )
    return xs[ok]


def minus_leq_gf(a, b, p):
    return len(minus_witnesses_gf(a, b, p)) > 0


def rank_gf(m, p):
    """Rank of an integer matrix over GF(p) by plain elimination."""
    rows = [[int(x) % p for x in row] for row in m]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                k = rows[i][c]
                rows[i] = [(x - k * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return r
