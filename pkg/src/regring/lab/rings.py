"""Small finite rings with full addition and multiplication tables.

Supported carriers are ``Z/n`` (regular iff ``n`` is squarefree),
``M_k(GF(p))`` and finite direct products of these. Elements are the
integers ``0 .. size-1``; index 0 is always the zero element.
"""

import os
import re
from functools import cached_property, reduce

import numpy as np

from ..errors import NotRegularError, RingSpecError

MAX_RING_SIZE = 4096
FULL_AXIOM_CHECK_LIMIT = 256
AXIOM_SAMPLES = 20000


def max_ring_size():
    """Ring size cap; ``REGRING_LAB_MAX_SIZE`` can lower (or raise) it."""
    value = os.environ.get("REGRING_LAB_MAX_SIZE")
    return int(value) if value else MAX_RING_SIZE


def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


class _ZMod:
    def __init__(self, n):
        if n < 2:
            raise RingSpecError(f"Z/{n}: modulus must be at least 2")
        self.n = n
        self.moduli = (n,)
        self.size = n
        self.name = f"Z/{n}"

    def one(self):
        return np.array([1 % self.n])

    def mul(self, x, y):
        return (x * y) % self.n

    def decode(self, coords):
        return int(coords[0])


class _MatGF:
    def __init__(self, k, p):
        if k < 1:
            raise RingSpecError("matrix size must be positive")
        if not _is_prime(p):
            raise RingSpecError(f"GF({p}): {p} is not prime")
        self.k, self.p = k, p
        self.moduli = (p,) * (k * k)
        self.size = p ** (k * k)
        self.name = f"M_{k}(GF({p}))"

    def one(self):
        return np.eye(self.k, dtype=np.int64).reshape(-1)

    def mul(self, x, y):
        k = self.k
        shape = np.broadcast_shapes(x.shape, y.shape)
        xm = np.broadcast_to(x, shape).reshape(-1, k, k)
        ym = np.broadcast_to(y, shape).reshape(-1, k, k)
        return (np.matmul(xm, ym) % self.p).reshape(shape)

    def decode(self, coords):
        k = self.k
        return tuple(tuple(int(coords[i * k + j]) for j in range(k)) for i in range(k))


_FACTOR_RE = re.compile(
    r"^(?:Z/(?P<n>\d+)|M_?(?P<k>\d+)\(GF\(?(?P<p>\d+)\)?\))$"
)


def parse_ring_spec(spec):
    factors = []
    for part in re.split(r"\s*(?:\bx\b|×|\*)\s*", spec.strip()):
        m = _FACTOR_RE.match(part.replace(" ", ""))
        if m is None:
            raise RingSpecError(f"cannot parse ring factor {part!r} in {spec!r}")
        if m.group("n"):
            factors.append(_ZMod(int(m.group("n"))))
        else:
            factors.append(_MatGF(int(m.group("k")), int(m.group("p"))))
    return factors


class FiniteRing:
    """An enumerable ring with precomputed tables.

    Construction verifies the ring axioms (exhaustively up to
    ``FULL_AXIOM_CHECK_LIMIT`` elements, on random triples above) and
    regularity exhaustively: every element needs some ``x`` with ``a x a = a``.
    """

    def __init__(self, spec):
        self.factors = parse_ring_spec(spec)
        self.spec = " x ".join(f.name for f in self.factors)
        self.moduli = tuple(m for f in self.factors for m in f.moduli)
        size = reduce(lambda acc, f: acc * f.size, self.factors, 1)
        cap = max_ring_size()
        if size > cap:
            raise RingSpecError(f"{self.spec} has {size} elements, above the cap of {cap}")
        self.size = size
        self._radix = np.array(
            [int(np.prod(self.moduli[i + 1:], dtype=np.int64)) for i in range(len(self.moduli))],
            dtype=np.int64,
        )
        self.coords = self._all_coords()
        self.one = int(self.encode(np.concatenate([f.one() for f in self.factors])))
        dtype = np.int16 if size <= np.iinfo(np.int16).max else np.int32
        self.add_table = self._table(self._add_coords).astype(dtype)
        self.mul_table = self._table(self._mul_coords).astype(dtype)
        self.neg = self._negations()
        self._check_axioms()
        self._check_regular()

    # -- encoding -------------------------------------------------------------

    def _all_coords(self):
        idx = np.arange(self.size, dtype=np.int64)[:, None]
        return (idx // self._radix) % np.array(self.moduli, dtype=np.int64)

    def encode(self, coords):
        return (np.asarray(coords, dtype=np.int64) * self._radix).sum(axis=-1)

    def decode(self, x):
        """Human-readable form of element ``x``."""
        c = self.coords[int(x)]
        parts = []
        start = 0
        for f in self.factors:
            width = len(f.moduli)
            parts.append(f.decode(c[start:start + width]))
            start += width
        return parts[0] if len(parts) == 1 else tuple(parts)

    def _split(self, coords):
        out = []
        start = 0
        for f in self.factors:
            width = len(f.moduli)
            out.append(coords[..., start:start + width])
            start += width
        return out

    def _add_coords(self, x, y):
        return (x + y) % np.array(self.moduli, dtype=np.int64)

    def _mul_coords(self, x, y):
        return np.concatenate(
            [f.mul(a, b) for f, a, b in zip(self.factors, self._split(x), self._split(y))],
            axis=-1,
        )

    def _table(self, op):
        table = np.empty((self.size, self.size), dtype=np.int64)
        for i in range(self.size):
            table[i] = self.encode(op(self.coords[i][None, :], self.coords))
        return table

    def _negations(self):
        return np.argmax(self.add_table == 0, axis=1)

    # -- validation -------------------------------------------------------------

    def _check_axioms(self):
        n, add, mul = self.size, self.add_table, self.mul_table
        ar = np.arange(n)
        if not (add[0] == ar).all() or not (add == add.T).all():
            raise RingSpecError(f"{self.spec}: addition is not a commutative monoid with 0")
        if not (add[ar, self.neg] == 0).all():
            raise RingSpecError(f"{self.spec}: missing additive inverses")
        if not (mul[self.one] == ar).all() or not (mul[:, self.one] == ar).all():
            raise RingSpecError(f"{self.spec}: identity element fails")
        if n <= FULL_AXIOM_CHECK_LIMIT:
            for x in range(n):
                if not _axioms_hold(add, mul, x, ar[:, None], ar[None, :]):
                    raise RingSpecError(f"{self.spec}: ring axiom fails at x={self.decode(x)}")
        else:
            rng = np.random.default_rng(0)
            xs, ys, zs = rng.integers(0, n, size=(3, AXIOM_SAMPLES))
            if not _axioms_hold(add, mul, xs, ys, zs):
                raise RingSpecError(f"{self.spec}: ring axiom fails on sampled triples")

    def _check_regular(self):
        mul = self.mul_table
        for start in range(0, self.size, 256):
            block = np.arange(start, min(start + 256, self.size))
            # a·x·a for a in block and every x
            axa = mul[mul[block], block[:, None]]
            regular = (axa == block[:, None]).any(axis=1)
            if regular.all():
                continue
            bad = int(block[np.argmin(regular)])
            raise NotRegularError(
                f"{self.spec} is not von Neumann regular: {self.decode(bad)} has no x with a·x·a = a",
                witness=self.decode(bad),
            )

    # -- element arithmetic ------------------------------------------------------

    @property
    def elements(self):
        return range(self.size)

    @property
    def zero(self):
        return 0

    def add(self, x, y):
        return self.tables[0][x][y]

    def sub(self, x, y):
        return self.tables[0][x][self.neg_list[y]]

    def mul(self, x, y):
        return self.tables[1][x][y]

    @cached_property
    def tables(self):
        """Tables as nested lists; far faster than numpy for scalar lookups."""
        return self.add_table.tolist(), self.mul_table.tolist()

    @cached_property
    def neg_list(self):
        return self.neg.tolist()

    # -- inverse sets -----------------------------------------------------------

    def one_inverses(self, a):
        mul = self.mul_table
        return frozenset(np.nonzero(mul[mul[a], a] == a)[0].tolist())

    def weak_inverses(self, a):
        mul = self.mul_table
        return frozenset(np.nonzero(mul[mul[:, a], np.arange(self.size)] == np.arange(self.size))[0].tolist())

    def idempotents(self):
        ar = np.arange(self.size)
        return np.nonzero(self.mul_table[ar, ar] == ar)[0].tolist()

    def right_ideal(self, a):
        """``aR`` as a frozenset."""
        return frozenset(self.mul_table[a].tolist())

    def left_ideal(self, a):
        """``Ra`` as a frozenset."""
        return frozenset(self.mul_table[:, a].tolist())

    def __repr__(self):
        return f"FiniteRing({self.spec!r}, size={self.size})"

    def __getstate__(self):
        state = dict(self.__dict__)
        for key in ("tables", "neg_list"):
            state.pop(key, None)
        return state


def _axioms_hold(add, mul, x, y, z):
    checks = (
        add[add[x, y], z] == add[x, add[y, z]],
        mul[mul[x, y], z] == mul[x, mul[y, z]],
        mul[x, add[y, z]] == add[mul[x, y], mul[x, z]],
        mul[add[y, z], x] == add[mul[y, x], mul[z, x]],
    )
    return all(np.all(c) for c in checks)


def make_ring(spec):
    """Build and validate a :class:`FiniteRing` from a spec such as ``"Z/30"``,
    ``"M_2(GF(2))"`` or ``"Z/2 x M_2(GF(2))"``.
    """
    return FiniteRing(spec)


def inverse_sets(ring, a):
    """``(one_inverses, reflexive, weak)`` for element ``a`` by exhaustive scan.

    The reflexive set is computed both as the intersection of the other two
    and as ``{x a x : x a {1}-inverse}``; a mismatch raises.
    """
    one = ring.one_inverses(a)
    weak = ring.weak_inverses(a)
    reflexive = one & weak
    mul = ring.mul
    if reflexive != frozenset(mul(mul(x, a), x) for x in one):
        raise AssertionError(f"reflexive inverse sets disagree at {ring.decode(a)}")
    return one, reflexive, weak
