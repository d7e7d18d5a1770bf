"""Exact ordered coefficient fields: the rationals and real quadratic fields Q(sqrt d).

Rationals are plain ``gmpy2.mpq`` values.  An irrational element a + b*sqrt(d)
is a :class:`Scalar`.  Sign decisions never touch floating point.
"""
import re
from fractions import Fraction

from gmpy2 import mpq, is_square


class ScalarError(ValueError):
    pass


def _q(x):
    if isinstance(x, Scalar):
        if x.b:
            raise ScalarError("expected a rational, got %s" % x)
        return x.a
    if isinstance(x, str):
        return mpq(Fraction(x))
    return mpq(x)


def _check_radicand(d):
    d = int(d)
    if d <= 1 or is_square(d):
        raise ScalarError("radicand must be a positive nonsquare integer, got %d" % d)
    return d


def qsign(x):
    """Sign of a rational."""
    return (x > 0) - (x < 0)


class Scalar:
    """a + b*sqrt(d) with a, b rational.

    ``d`` is None exactly when ``b == 0``; a scalar with zero irrational part
    forgets its radicand, so rationals are compatible with every field.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d=None):
        a = _q(a)
        b = _q(b)
        if b == 0:
            d = None
        elif d is None:
            raise ScalarError("irrational part needs a radicand")
        else:
            d = _check_radicand(d)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def sqrt(cls, d):
        return cls(0, 1, d)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, cls):
            return x
        return cls(x)

    def _pair(self, other):
        other = Scalar.coerce(other)
        if self.d is not None and other.d is not None and self.d != other.d:
            raise ScalarError("radicand mismatch: %d vs %d" % (self.d, other.d))
        return other, self.d if self.d is not None else other.d

    def is_rational(self):
        return self.b == 0

    def sign(self):
        return sign_ab(self.a, self.b, self.d)

    def __add__(self, other):
        try:
            o, d = self._pair(other)
        except ScalarError:
            raise
        except (TypeError, ValueError):
            return NotImplemented
        return Scalar(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o, d = self._pair(other)
        except ScalarError:
            raise
        except (TypeError, ValueError):
            return NotImplemented
        return Scalar(self.a - o.a, self.b - o.b, d)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        try:
            o, d = self._pair(other)
        except ScalarError:
            raise
        except (TypeError, ValueError):
            return NotImplemented
        bb = self.b * o.b
        return Scalar(self.a * o.a + (bb * d if bb else 0), self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def inverse(self):
        if self.b == 0:
            if self.a == 0:
                raise ZeroDivisionError("division by zero scalar")
            return Scalar(1 / self.a)
        # (a - b sqrt d) / (a^2 - b^2 d); the norm is nonzero since d is not a square
        n = self.a * self.a - self.b * self.b * self.d
        return Scalar(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        try:
            o, _ = self._pair(other)
        except ScalarError:
            raise
        except (TypeError, ValueError):
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def __eq__(self, other):
        try:
            o = Scalar.coerce(other)
        except ScalarError:
            raise
        except (TypeError, ValueError):
            return NotImplemented
        return self.a == o.a and self.b == o.b and (self.b == 0 or self.d == o.d)

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return "Scalar(%r)" % format_scalar(self)

    def __str__(self):
        return format_scalar(self)

    def to_float(self):
        r = float(self.a)
        if self.b:
            r += float(self.b) * self.d ** 0.5
        return r


def sign_ab(a, b, d):
    """Exact sign of a + b*sqrt(d): compare a^2 against b^2*d when the signs disagree."""
    sa = qsign(a)
    if not b:
        return sa
    sb = qsign(b)
    if sa == 0:
        return sb
    if sa == sb:
        return sa
    # opposite signs: whichever square is larger wins
    c = qsign(a * a - b * b * d)
    return sa if c > 0 else sb


def norm(x):
    """Collapse a Scalar with zero irrational part to a plain rational."""
    if type(x) is Scalar and not x.b:
        return x.a
    return x


def csign(x):
    """Sign of a coefficient, rational or quadratic."""
    if type(x) is Scalar:
        return x.sign()
    return (x > 0) - (x < 0)


def is_rational(x):
    return type(x) is not Scalar or not x.b


def radicand_of(x):
    return x.d if type(x) is Scalar else None


def scalar_sign(x):
    return csign(x)


def add(x, y):
    return Scalar.coerce(x) + y


def sub(x, y):
    return Scalar.coerce(x) - y


def mul(x, y):
    return Scalar.coerce(x) * y


def div(x, y):
    return Scalar.coerce(x) / y


def neg(x):
    return -Scalar.coerce(x)


def _fmt_q(x):
    x = mpq(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def format_scalar(x):
    """Canonical text: ``p/q`` or ``p/q+r/s*sqrt(d)``."""
    if type(x) is not Scalar:
        return _fmt_q(x)
    if not x.b:
        return _fmt_q(x.a)
    irr = "%s*sqrt(%d)" % (_fmt_q(x.b), x.d)
    if not x.a:
        return irr
    if x.b > 0:
        return "%s+%s" % (_fmt_q(x.a), irr)
    return "%s%s" % (_fmt_q(x.a), irr)


_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    r"^\s*(?:(?P<a>%s)(?=$|\s*[+-]))?\s*(?:(?P<b>[+-]?(?:\d+(?:/\d+)?)?)\*?sqrt\(?(?P<d>\d+)\)?)?\s*$" % _RAT
)


def parse_scalar(text):
    """Parse the canonical text form, plus shorthands like ``sqrt2`` and ``-sqrt(3)``."""
    m = _SCALAR_RE.match(text)
    if not m or (m.group("a") is None and m.group("d") is None):
        raise ScalarError("cannot parse scalar %r" % text)
    a = mpq(Fraction(m.group("a"))) if m.group("a") is not None else mpq(0)
    if m.group("d") is None:
        return a
    bs = m.group("b")
    if bs in ("", "+", None):
        b = mpq(1)
    elif bs == "-":
        b = mpq(-1)
    else:
        b = mpq(Fraction(bs))
    return norm(Scalar(a, b, int(m.group("d"))))
