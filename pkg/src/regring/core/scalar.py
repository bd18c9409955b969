"""Exact Gaussian rationals: numbers ``re + im*i`` with ``re, im`` in Q.

The rational parts are ``gmpy2.mpq`` values, which are always in lowest
terms with a positive denominator and are an order of magnitude faster than
``fractions.Fraction`` for the small-matrix workloads here.
"""

import re
from fractions import Fraction
from numbers import Rational
from operator import itemgetter

from gmpy2 import mpq

from ..errors import ParseError

_Q0 = mpq(0)
_Q1 = mpq(1)

_Q = r"\d+(?:/\d+)?"
_ENTRY_RE = re.compile(
    rf"^(?:(?P<re>-?{_Q})(?:(?P<sign>[+-])(?P<im>{_Q})?i)?|(?P<sign2>-)?(?P<im2>{_Q})?i)$"
)

_new = tuple.__new__


def _rational(text):
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ZeroDivisionError(text)
    return mpq(int(num), int(den) if den else 1)


def to_rational(value):
    if isinstance(value, mpq):
        return value
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, Rational):
        return mpq(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        return _rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


class Scalar(tuple):
    """An element of Q(i), immutable and hashable.

    ``Scalar(3) == 3`` and both hash alike, so real scalars mix with ints in
    sets and dicts.
    """

    __slots__ = ()

    re = property(itemgetter(0))
    im = property(itemgetter(1))

    def __new__(cls, re=0, im=0):
        if isinstance(re, str) and im == 0:
            return cls.parse(re)
        return _new(cls, (to_rational(re), to_rational(im)))

    @classmethod
    def coerce(cls, value):
        if isinstance(value, Scalar):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, complex):
            raise TypeError("floating point complex values are not exact")
        return _new(cls, (to_rational(value), _Q0))

    @classmethod
    def parse(cls, text):
        """Parse ``R``, ``R+Ri``, ``R-Ri`` or ``Ri`` where ``R`` is ``[-]digits[/digits]``.

        An omitted imaginary coefficient means 1, so ``i``, ``-i`` and ``1+i`` work.
        """
        m = _ENTRY_RE.match(text.strip())
        if m is None:
            raise ParseError(f"malformed entry {text!r}")
        try:
            if m.group("re") is not None:
                real = _rational(m.group("re"))
                has_im, im, sign = m.group("sign") is not None, m.group("im"), m.group("sign")
            else:
                real = _Q0
                has_im, im, sign = True, m.group("im2"), m.group("sign2")
            imag = _Q0
            if has_im:
                imag = _rational(im) if im is not None else mpq(1)
                if sign == "-":
                    imag = -imag
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {text!r}") from None
        return _new(cls, (real, imag))

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return not self[0] and not self[1]

    def is_real(self):
        return not self[1]

    # -- arithmetic ---------------------------------------------------------

    def conjugate(self):
        if not self[1]:
            return self
        return _new(Scalar, (self[0], -self[1]))

    def __neg__(self):
        return _new(Scalar, (-self[0], -self[1]))

    def __pos__(self):
        return self

    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return _new(Scalar, (self[0] + other[0], self[1] + other[1]))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return _new(Scalar, (self[0] - other[0], self[1] - other[1]))

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        a, b = self
        c, d = other
        if not b:
            if not d:
                return _new(Scalar, (a * c, _Q0))
            return _new(Scalar, (a * c, a * d))
        if not d:
            return _new(Scalar, (a * c, b * c))
        return _new(Scalar, (a * c - b * d, a * d + b * c))

    __rmul__ = __mul__

    def norm(self):
        """``|z|^2``, a nonnegative rational."""
        return self[0] * self[0] + self[1] * self[1]

    def inverse(self):
        a, b = self
        if not b:
            if not a:
                raise ZeroDivisionError("Scalar division by zero")
            return _new(Scalar, (_Q1 / a, _Q0))
        n = a * a + b * b
        return _new(Scalar, (a / n, -b / n))

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    # -- comparison, hashing, display -------------------------------------

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self[0] == other[0] and self[1] == other[1]
        if isinstance(other, (int, Rational)):
            return not self[1] and self[0] == other
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if not self[1]:
            return hash(self[0])
        return hash((self[0], self[1]))

    def __bool__(self):
        return bool(self[0]) or bool(self[1])

    # tuple ordering would silently compare (re, im) pairs
    def __lt__(self, other):
        return NotImplemented

    __le__ = __gt__ = __ge__ = __lt__

    def sort_key(self):
        return (self[0], self[1])

    def __str__(self):
        real = _fmt(self[0])
        if not self[1]:
            return real
        sign = "-" if self[1] < 0 else "+"
        return f"{real}{sign}{_fmt(abs(self[1]))}i"

    def __repr__(self):
        return f"Scalar('{self}')"

    def __reduce__(self):
        return (Scalar, (self[0], self[1]))


def _fmt(q):
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
