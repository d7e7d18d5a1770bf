"""Elements of a finitely presented model and the maps psi, s, p, int, chi.

An element is a finite combination of Psi positions; the unit at Omega(n)
denotes s^{n+1}0 and the unit at Copy(c, k) denotes beta_{k,c}.  The basis
vector e_n of the omega part is unit(Omega(n)) - unit(Omega(n-1)).

Every map below has a closed form in this basis.  With support
a_1 < ... < a_r, coefficients q_j and Q = sum q_j:

* sign  = sign(Q) if Q != 0, else -sign(q_1)
* psi   = s0 if Q != 0, else unit(succ a_1)
* s     = unit(succ a_1) if Q == 1, else s0
"""
from tlog import kernels as K
from tlog.psi_order import PsiOrder, Omega, Copy, OMEGA_LIMIT
from tlog.scalars import Scalar, norm, is_rational, ScalarError, mpq


class DomainError(ValueError):
    """A well-formed request the mathematics does not allow."""


class Infinity:
    """The default value: absorbs every operation."""

    __slots__ = ()
    is_inf = True
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = object.__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"

    __str__ = __repr__

    def __add__(self, other):
        return self

    __radd__ = __sub__ = __rsub__ = __add__

    def __neg__(self):
        return self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("inf")

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()


def is_inf(x):
    return x is INF


class Model:
    """A finitely presented model: a PsiOrder plus the coefficient field."""

    __slots__ = ("order", "radicand", "_hash")

    def __init__(self, order=None, radicand=None):
        if order is None:
            order = PsiOrder()
        elif not isinstance(order, PsiOrder):
            order = PsiOrder(order)
        if radicand is not None:
            radicand = Scalar(0, 1, radicand).d
        self.order = order
        self.radicand = radicand
        self._hash = hash((order, radicand))

    def __eq__(self, other):
        return isinstance(other, Model) and self.order == other.order and self.radicand == other.radicand

    def __hash__(self):
        return self._hash

    def __repr__(self):
        f = "" if self.radicand is None else ", sqrt(%d)" % self.radicand
        return "Model(%r%s)" % (list(self.order.copies), f)

    @property
    def copies(self):
        return self.order.copies

    def with_order(self, order):
        return Model(order, self.radicand)

    def coerce_coeff(self, c):
        if isinstance(c, Scalar):
            c = norm(c)
            if type(c) is Scalar and c.d != self.radicand:
                raise ScalarError("coefficient %s outside the field of %r" % (c, self))
            return c
        if isinstance(c, float):
            raise ScalarError("floating point coefficients are not exact")
        return mpq(c)

    # constructors

    def zero(self):
        return Element(self, ())

    def unit(self, pos, coeff=1):
        c = self.coerce_coeff(coeff)
        if not c:
            return self.zero()
        return Element(self, ((self.order.key(pos), c),))

    def w(self, n, coeff=1):
        return self.unit(Omega(n), coeff)

    def beta(self, cid, k, coeff=1):
        return self.unit(Copy(cid, k), coeff)

    def e(self, n, coeff=1):
        """The basis vector e_n = s^{n+1}0 - s^n0 of the omega part."""
        if n == 0:
            return self.w(0, coeff)
        c = self.coerce_coeff(coeff)
        if not c:
            return self.zero()
        return Element(self, ((n - 1, -c), (n, c)))

    def from_terms(self, pairs):
        """Build from (position, coeff) pairs; repeated positions are summed."""
        acc = {}
        for pos, c in pairs:
            k = self.order.key(pos)
            c = self.coerce_coeff(c)
            acc[k] = norm(acc[k] + c) if k in acc else c
        return Element(self, tuple(sorted((k, c) for k, c in acc.items() if c)))

    def from_vector(self, vec):
        """From omega coordinates (r_0, r_1, ...) in the e-basis."""
        out = self.zero()
        for n, r in enumerate(vec):
            if r:
                out = out + self.e(n, r)
        return out

    def embed(self, x):
        """Move an element of a model whose order is a suborder of ours."""
        if is_inf(x):
            return INF
        if x.model == self:
            return x
        src = x.model.order
        pairs = [(src.position(k), c) for k, c in x.terms]
        return self.from_terms(pairs)


class Element:
    """A finitely supported combination of Psi positions.  Immutable."""

    __slots__ = ("model", "terms", "_hash")
    is_inf = False

    def __init__(self, model, terms):
        self.model = model
        self.terms = terms
        self._hash = None

    def _same(self, other):
        if other.model is not self.model and other.model != self.model:
            raise DomainError("elements of different models: %r vs %r" % (self.model, other.model))

    def __add__(self, other):
        if other is INF:
            return INF
        if not isinstance(other, Element):
            return NotImplemented
        self._same(other)
        return Element(self.model, K.vec_add(self.terms, other.terms))

    def __sub__(self, other):
        if other is INF:
            return INF
        if not isinstance(other, Element):
            return NotImplemented
        self._same(other)
        return Element(self.model, K.vec_sub(self.terms, other.terms))

    def __neg__(self):
        return Element(self.model, K.vec_neg(self.terms))

    def __pos__(self):
        return self

    def scale(self, c):
        c = self.model.coerce_coeff(c)
        return Element(self.model, K.vec_scale(self.terms, c))

    def __mul__(self, c):
        if isinstance(c, Element):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = self.model.coerce_coeff(c)
        if not c:
            raise ZeroDivisionError("division by zero")
        inv = (1 / c) if type(c) is not Scalar else c.inverse()
        return self.scale(inv)

    def sign(self):
        return K.vec_sign(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return False
        return self.terms == other.terms and self.model == other.model

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.model, self.terms))
        return self._hash

    def _cmp(self, other):
        if other is INF:
            return -1
        if type(other) is int and other == 0:
            return self.sign()
        if not isinstance(other, Element):
            raise TypeError("cannot compare an element with %r" % (other,))
        self._same(other)
        return K.vec_cmp(self.terms, other.terms)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def total(self):
        """Sum of the coefficients in the position basis."""
        return K.vec_total(self.terms)

    def support(self):
        order = self.model.order
        return [order.position(k) for k, _ in self.terms]

    def items(self):
        order = self.model.order
        return [(order.position(k), c) for k, c in self.terms]

    def coeff(self, pos):
        k = self.model.order.key(pos)
        for kk, c in self.terms:
            if kk == k:
                return c
        return mpq(0)

    def is_unit(self):
        """Is this a Psi element, i.e. a unit vector with coefficient 1?"""
        return len(self.terms) == 1 and self.terms[0][1] == 1

    def unit_position(self):
        if not self.is_unit():
            return None
        return self.model.order.position(self.terms[0][0])

    def is_rational(self):
        return all(is_rational(c) for _, c in self.terms)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __repr__(self):
        from tlog.lang import format_element
        return "Element(%s)" % format_element(self)

    def __str__(self):
        from tlog.lang import format_element
        return format_element(self)


def _unit_key(model, key):
    return Element(model, ((key, mpq(1)),))


# the maps

def sign(x):
    if is_inf(x):
        raise DomainError("sign of infinity")
    return x.sign()


def psi(x):
    if is_inf(x):
        return INF
    k = K.psi_key(x.terms)
    if k is None:
        return INF
    return _unit_key(x.model, k)


def s(x):
    if is_inf(x):
        return INF
    return _unit_key(x.model, K.s_key(x.terms))


def p(x):
    if is_inf(x) or len(x.terms) != 1:
        return INF
    k, c = x.terms[0]
    if c != 1 or k == 0:
        return INF
    return _unit_key(x.model, k - 1)


def integral(x):
    if is_inf(x):
        return INF
    return x - s(x)


def chi(x):
    """Contraction; infinity outside the negative cone."""
    if is_inf(x) or x.sign() >= 0:
        return INF
    y = psi(x)
    return y - s(y)


def dagger(x):
    return psi(x)


def prime(x):
    if is_inf(x) or not x:
        return INF
    return x + psi(x)


def delta(x, n):
    if is_inf(x):
        return INF
    n = int(n)
    if n < 1:
        raise DomainError("delta index must be at least 1")
    return x / n


def in_psi(x):
    return not is_inf(x) and x.is_unit()


def class_compare(x, y):
    """Compare archimedean classes: -1 if [x] < [y], 0 if equal, 1 if [x] > [y].

    psi is constant on classes and strictly decreasing across them in these
    models, so the comparison reduces to psi values.
    """
    if is_inf(x) or is_inf(y):
        raise DomainError("class of infinity")
    if not x:
        return 0 if not y else -1
    if not y:
        return 1
    px, py = psi(x), psi(y)
    c = px._cmp(py)
    return -c


def in_positive_integrals(x):
    """Is x in (Gamma^>)' ?"""
    return integral(x).sign() > 0


def in_negative_integrals(x):
    return integral(x).sign() < 0


def to_vector(x):
    """omega coordinates (r_0, r_1, ...) in the e-basis; requires omega support."""
    if is_inf(x):
        raise DomainError("infinity has no coordinates")
    if any(k >= OMEGA_LIMIT for k, _ in x.terms):
        raise DomainError("element has copy support; no omega vector form")
    if not x.terms:
        return ()
    top = x.terms[-1][0]
    coeff = [0] * (top + 1)
    for k, c in x.terms:
        coeff[k] = c
    # unit(w_n) = e_0 + ... + e_n, so r_i is the tail sum from i
    out = [0] * (top + 1)
    acc = 0
    for i in range(top, -1, -1):
        acc = norm(acc + coeff[i])
        out[i] = acc
    return tuple(norm(mpq(r)) if not isinstance(r, Scalar) else r for r in out)


def from_vector(model, vec):
    return model.from_vector(vec)


class Couple:
    """The asymptotic couple of a model with its closed-form maps.

    Shifted couples subclass this and override psi, s and p.
    """

    is_base = True

    def __init__(self, model):
        self.model = model

    def psi(self, x):
        return psi(x)

    def s(self, x):
        return s(x)

    def p(self, x):
        return p(x)

    def in_psi(self, x):
        return in_psi(x)

    def s0(self):
        return self.s(self.model.zero())

    def integral(self, x):
        if is_inf(x):
            return INF
        return x - self.s(x)

    def chi(self, x):
        if is_inf(x) or x.sign() >= 0:
            return INF
        y = self.psi(x)
        return y - self.s(y)

    def prime(self, x):
        if is_inf(x) or not x:
            return INF
        return x + self.psi(x)

    def class_compare(self, x, y):
        return class_compare(x, y)

    def describe(self):
        return "couple on %r" % (self.model,)
