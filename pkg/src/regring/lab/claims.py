"""Brute-force checks of the ring-theoretic statements about regular rings.

Every order here is decided by exhaustive search: ``a <=- b`` by looking for
a witness ``x``, ``a <=⊕ b`` by comparing the actual sets ``aR``,
``(b - a)R`` and ``bR``. Nothing uses rank, so these checks are independent
of the matrix code.

Each claim is a pair of functions: one enumerating the tuples the statement
quantifies over, one checking a single tuple. A failing tuple is a
counterexample and can be replayed with :func:`replay`.
"""

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from ..errors import RingSpecError

PAIR_LIMIT = 64


class Facts:
    """Cached exhaustive data for one ring: inverse sets, principal ideals,
    ideal sums and the two orders."""

    def __init__(self, ring):
        self.ring = ring
        self.n = ring.size
        self.add, self.mul = ring.tables
        neg = ring.neg_list
        self.sub = [[self.add[x][neg[y]] for y in range(self.n)] for x in range(self.n)]
        self.one = ring.one
        self.one_inv = [ring.one_inverses(a) for a in range(self.n)]
        self.weak = [ring.weak_inverses(a) for a in range(self.n)]
        self.strong = [o & w for o, w in zip(self.one_inv, self.weak)]
        self._sets = []
        self._ids = {}
        self.rid = [self._intern(frozenset(self.mul[a])) for a in range(self.n)]
        self.lid = [self._intern(frozenset(row[a] for row in self.mul)) for a in range(self.n)]
        self.zero_id = self._intern(frozenset([0]))
        self._sum = {}
        self._meet = {}
        self._minus = {}
        self._dsum = {}
        self.idempotents = [a for a in range(self.n) if self.mul[a][a] == a]

    def _intern(self, s):
        i = self._ids.get(s)
        if i is None:
            i = self._ids[s] = len(self._sets)
            self._sets.append(s)
        return i

    def ideal(self, i):
        return self._sets[i]

    def ideal_sum(self, i, j):
        key = (i, j) if i <= j else (j, i)
        out = self._sum.get(key)
        if out is None:
            add = self.add
            out = self._intern(frozenset(add[x][y] for x in self._sets[i] for y in self._sets[j]))
            self._sum[key] = out
        return out

    def meet_is_zero(self, i, j):
        key = (i, j) if i <= j else (j, i)
        out = self._meet.get(key)
        if out is None:
            out = self._meet[key] = len(self._sets[i] & self._sets[j]) == 1
        return out

    def contained(self, i, j):
        return self._sets[i] <= self._sets[j]

    # -- orders ------------------------------------------------------------

    def minus_witnesses(self, a, b):
        mul = self.mul
        ma, mb = mul[a], mul[b]
        return [x for x in self.one_inv[a] if ma[x] == mb[x] and mul[x][a] == mul[x][b]]

    def minus_leq(self, a, b):
        key = (a, b)
        out = self._minus.get(key)
        if out is None:
            mul = self.mul
            ma, mb = mul[a], mul[b]
            out = any(ma[x] == mb[x] and mul[x][a] == mul[x][b] for x in self.one_inv[a])
            self._minus[key] = out
        return out

    def dsum_leq(self, a, b):
        """``bR = aR ⊕ (b - a)R`` on the actual ideals."""
        key = (a, b)
        out = self._dsum.get(key)
        if out is None:
            i, j, k = self.rid[a], self.rid[self.sub[b][a]], self.rid[b]
            out = self.meet_is_zero(i, j) and self.ideal_sum(i, j) == k
            self._dsum[key] = out
        return out

    def dsum_leq_left(self, a, b):
        i, j, k = self.lid[a], self.lid[self.sub[b][a]], self.lid[b]
        return self.meet_is_zero(i, j) and self.ideal_sum(i, j) == k

    def contains_inverses(self, b, a):
        """``{b^(1)} ⊆ {a^(1)}``."""
        return self.one_inv[b] <= self.one_inv[a]

    def disjoint(self, a, c):
        """``aR ∩ cR = 0 = Ra ∩ Rc``."""
        return self.meet_is_zero(self.rid[a], self.rid[c]) and self.meet_is_zero(self.lid[a], self.lid[c])

    def size_r(self, a):
        return len(self._sets[self.rid[a]])


# -- claims ------------------------------------------------------------------


def _pairs(elems):
    return [(a, b) for a in elems for b in elems]


def _thm1_tuples(F, elems):
    return [(a, b) for a, b in _pairs(elems) if F.one_inv[F.add[a][b]]]


def _thm1_check(F, t):
    a, b = t
    s = F.add[a][b]
    c1 = F.meet_is_zero(F.rid[a], F.rid[b]) and F.ideal_sum(F.rid[a], F.rid[b]) == F.rid[s]
    c2 = F.meet_is_zero(F.lid[a], F.lid[b]) and F.ideal_sum(F.lid[a], F.lid[b]) == F.lid[s]
    c3 = F.disjoint(a, b)
    return c1 == c2 == c3


def _lemma2_tuples(F, elems):
    return [(a,) for a in elems]


def _lemma2_check(F, t):
    (a,) = t
    add, mul, sub = F.add, F.mul, F.sub
    one = F.one
    x = min(F.one_inv[a])
    left = sub[one][mul[x][a]]
    right = sub[one][mul[a][x]]
    family = set()
    for r1 in range(F.n):
        base = add[x][mul[left][r1]]
        row = add[base]
        for r2 in range(F.n):
            family.add(row[mul[r2][right]])
    if family != F.one_inv[a]:
        return False
    return {mul[mul[y][a]][y] for y in F.one_inv[a]} == F.strong[a]


def _lemma3_tuples(F, elems):
    return _pairs(elems)


def _lemma3_check(F, t):
    a, b = t
    return F.dsum_leq(a, b) == F.minus_leq(a, b) == F.contains_inverses(b, a)


def _cor4_tuples(F, elems):
    idem = set(F.idempotents)
    return [(a, b) for a, b in _pairs(elems) if b in idem]


def _cor4_check(F, t):
    a, b = t
    mul = F.mul
    kaplansky = mul[a][a] == a and mul[a][b] == a and mul[b][a] == a
    return F.minus_leq(a, b) == kaplansky


def _cor5_tuples(F, elems):
    return _pairs(elems)


def _cor5_check(F, t):
    a, c = t
    return F.minus_leq(a, F.add[a][c]) == F.disjoint(a, c)


def _prop6_tuples(F, elems):
    return [(a, c) for a, c in _pairs(elems) if a and c and F.disjoint(a, c)]


def _prop6_check(F, t):
    a, c = t
    mul = F.mul
    witnesses = F.minus_witnesses(a, F.add[a][c])
    if not witnesses:
        return False
    return all(x != 0 and mul[x][c] == 0 and mul[c][x] == 0 for x in witnesses)


def _lemma8_tuples(F, elems):
    return [(a, b) for a, b in _pairs(elems) if F.one_inv[a] & F.one_inv[b]]


def _lemma8_check(F, t):
    a, b = t
    spans = F.contained(F.rid[a], F.rid[b]) and F.contained(F.lid[a], F.lid[b])
    return spans == F.dsum_leq(a, b)


def _lemma9_tuples(F, elems):
    order = {x: i for i, x in enumerate(elems)}
    out = []
    for a in elems:
        for b in sorted(F.weak[a], key=order.__getitem__):
            for a1 in sorted(F.one_inv[a], key=order.__getitem__):
                out.append(("forward", a, b, a1))
        for c in sorted(F.strong[a], key=order.__getitem__):
            for b in elems:
                if F.dsum_leq(b, c):
                    out.append(("backward", a, c, b))
    return out


def _lemma9_check(F, t):
    add, mul, sub = F.add, F.mul, F.sub
    if t[0] == "forward":
        _, a, b, a1 = t
        aba = mul[mul[a][b]][a]
        c = add[b][mul[mul[a1][sub[a][aba]]][a1]]
        return (
            mul[mul[a][c]][a] == a
            and mul[mul[c][a]][c] == c
            and F.dsum_leq(b, c)
            and F.minus_leq(b, c)
        )
    _, a, c, b = t
    return mul[mul[b][a]][b] == b


def _frames(F, a):
    """Idempotent pairs ``(e, f)`` with ``e ∈ aR`` and ``f ∈ Ra``."""
    ar, ra = F.ideal(F.rid[a]), F.ideal(F.lid[a])
    es = [e for e in F.idempotents if e in ar]
    fs = [f for f in F.idempotents if f in ra]
    return [(e, f) for e in es for f in fs]


def _lemma12_13_tuples(F, elems):
    order = {x: i for i, x in enumerate(elems)}
    out = []
    for a in elems:
        for e, f in _frames(F, a):
            for a1 in sorted(F.one_inv[a], key=order.__getitem__):
                out.append((e, f, a, a1))
    return out


def _lemma12_13_check(F, t):
    e, f, a, a1 = t
    mul = F.mul
    corner = {mul[mul[e][x]][f] for x in range(F.n)}
    members = {s for s in corner if F.dsum_leq(s, a)}
    alpha = mul[mul[f][a1]][e]
    from_weak = {mul[mul[e][u]][f] for u in F.weak[alpha]}
    if members != from_weak:
        return False
    if a in corner:
        return True
    maximal = {
        d for d in members
        if not any(c != d and F.dsum_leq(d, c) for c in members)
    }
    from_strong = {mul[mul[e][v]][f] for v in F.strong[alpha]}
    if maximal != from_strong:
        return False
    alpha_size = F.size_r(alpha)
    for d in members:
        by_rank = mul[mul[d][a1]][d] == d and F.size_r(d) == alpha_size
        if by_rank != (d in maximal):
            return False
    return True


def _partial_order_tuples(F, elems):
    return [(a, b, c) for a in elems for b in elems for c in elems]


def _partial_order_check(F, t):
    a, b, c = t
    if not F.minus_leq(a, a):
        return False
    if a != b and F.minus_leq(a, b) and F.minus_leq(b, a):
        return False
    if F.minus_leq(a, b) and F.minus_leq(b, c) and not F.minus_leq(a, c):
        return False
    return True


CLAIMS = {
    "thm1": (_thm1_tuples, _thm1_check),
    "lemma2": (_lemma2_tuples, _lemma2_check),
    "lemma3": (_lemma3_tuples, _lemma3_check),
    "cor4": (_cor4_tuples, _cor4_check),
    "cor5": (_cor5_tuples, _cor5_check),
    "prop6": (_prop6_tuples, _prop6_check),
    "lemma8": (_lemma8_tuples, _lemma8_check),
    "lemma9": (_lemma9_tuples, _lemma9_check),
    "lemma12_13": (_lemma12_13_tuples, _lemma12_13_check),
    "partial_order": (_partial_order_tuples, _partial_order_check),
}


@dataclass
class ClaimReport:
    claim_id: str
    ring: str
    universe_size: int
    counterexamples: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def holds(self):
        return not self.counterexamples

    def same_outcome(self, other):
        """Equality ignoring wall-clock time."""
        return (self.claim_id, self.ring, self.universe_size, self.counterexamples) == (
            other.claim_id, other.ring, other.universe_size, other.counterexamples,
        )


def _element_order(ring, order):
    elems = list(ring.elements)
    if order in (None, "natural"):
        return elems
    if order == "reversed":
        return elems[::-1]
    if isinstance(order, int):
        random.Random(order).shuffle(elems)
        return elems
    raise ValueError(f"unknown element order {order!r}")


def _check_chunk(ring, claim_id, chunk):
    facts = Facts(ring)
    check = CLAIMS[claim_id][1]
    return [t for t in chunk if not check(facts, t)]


def verify(ring, claim_id, order=None, workers=1):
    """Check ``claim_id`` on every tuple it quantifies over in ``ring``.

    ``order`` permutes the element iteration (``"natural"``, ``"reversed"`` or
    an integer shuffle seed). With ``workers > 1`` the tuples are split into
    contiguous chunks checked in separate processes; the counterexample list
    keeps the single-worker order.
    """
    if claim_id not in CLAIMS:
        raise KeyError(f"unknown claim {claim_id!r}; known: {', '.join(CLAIMS)}")
    if ring.size > PAIR_LIMIT:
        raise RingSpecError(
            f"{ring.spec} has {ring.size} elements; exhaustive claims need at most {PAIR_LIMIT}"
        )
    start = time.perf_counter()
    facts = Facts(ring)
    tuples_fn, check = CLAIMS[claim_id]
    tuples = tuples_fn(facts, _element_order(ring, order))
    if workers > 1 and len(tuples) > 1:
        size = -(-len(tuples) // workers)
        chunks = [tuples[i:i + size] for i in range(0, len(tuples), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_check_chunk, [ring] * len(chunks), [claim_id] * len(chunks), chunks))
        bad = [t for part in parts for t in part]
    else:
        bad = [t for t in tuples if not check(facts, t)]
    return ClaimReport(claim_id, ring.spec, len(tuples), bad, time.perf_counter() - start)


def replay(ring, claim_id, tup):
    """Re-evaluate one tuple from scratch; True when the claim holds on it."""
    return CLAIMS[claim_id][1](Facts(ring), tuple(tup))
