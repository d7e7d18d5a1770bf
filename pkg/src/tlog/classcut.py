"""Adjoining a positive element in a new archimedean class.

The cut in the classes of span(S) is given by a cut descriptor over Psi: the
lower side L holds the psi values of the classes above the new one (psi is
decreasing on classes), the upper side those below it.  The new generator
alpha > 0 gets the prescribed psi value beta.  For g in span(S), q != 0:

* sign(g + q alpha) = sign(g) if psi(g) is in L, else sign(q)
* psi(g + q alpha)  = psi(g) if psi(g) is in L, else beta
"""
from dataclasses import dataclass

from tlog.couple import Element, DomainError, psi, integral
from tlog.psi_order import Omega, Copy, OrderError
from tlog.scalars import mpq, is_rational, format_scalar
from tlog.submodel import SubmodelSpec

_FAR = 1 << 40


class HypothesisError(DomainError):
    """A hypothesis of the class-cut construction fails; the message names it."""


def _positions_to_probe(spec, ncut, beta):
    """S positions where comparisons of unit(pi) with beta can change, plus the cut boundary.

    unit(pi) - beta has a fixed sign on each stretch between support positions of
    beta inside one class, so one probe per stretch decides every position.
    """
    order = spec.model.order
    out = set()
    supp = beta.support()
    out.add(Omega(0))
    out.add(Omega(_FAR))
    for p in supp:
        if spec.pos_in(p):
            out.add(p)
            out.add(order.succ(p))
            q = order.pred(p)
            if q is not None:
                out.add(q)
    for c in spec.copy_list():
        out.add(Copy(c, -_FAR))
        out.add(Copy(c, _FAR))
    if ncut[0] == "after":
        out.add(ncut[1])
        out.add(order.succ(ncut[1]))
    return sorted(out, key=order.key)


class ClassCutExtension:
    """span(S) + Q alpha with [alpha] in the cut ``cut`` and psi(alpha) = beta."""

    def __init__(self, spec, cut, beta, check=True):
        if not isinstance(spec, SubmodelSpec):
            raise DomainError("base must be a SubmodelSpec")
        if not spec.contains(beta):
            raise DomainError("beta must lie in the base")
        order = spec.model.order
        try:
            ncut = order.normalize_cut(cut)
        except OrderError as e:
            raise DomainError(str(e)) from None
        if ncut[0] == "after" and not spec.pos_in(ncut[1]):
            raise DomainError("cut position %s is not in the base" % (ncut[1],))
        if ncut[0] == "before_copy":
            # move to the first S class at or above the requested copy rank
            ranks = sorted(q for q in spec._ranks if q >= ncut[1])
            ncut = ("before_copy", ranks[0] if ranks else order.m)
        self.spec = spec
        self.cut = cut
        self.ncut = ncut
        self.beta = beta
        if check:
            self.check_hypotheses()

    def lower(self, pos):
        """Is the Psi position on the lower side (classes above alpha)?"""
        return self.spec.model.order.key_below_cut(self.spec.model.order.key(pos), self.ncut)

    def check_hypotheses(self):
        beta = self.beta
        model = self.spec.model
        if integral(beta).sign() >= 0:
            raise HypothesisError("beta < (Gamma^>)' fails: the integral of %s is not negative" % beta)
        for p in _positions_to_probe(self.spec, self.ncut, beta):
            u = model.unit(p)
            if self.lower(p) and not u <= beta:
                raise HypothesisError("psi(g) <= beta fails for classes above the cut: %s > %s" % (u, beta))
            if not self.lower(p) and not beta <= u:
                raise HypothesisError("beta <= psi(g) fails for classes below the cut: %s > %s" % (beta, u))

    def element(self, g, q=0):
        return ClassCutElement(self, g, mpq(q))

    def generator(self):
        return self.element(self.spec.model.zero(), 1)

    def describe(self):
        from tlog.lang import format_element
        return "class cut %s over %s with psi(alpha) = %s" % (self.ncut, self.spec.describe(), format_element(self.beta))


@dataclass(frozen=True)
class ClassCutElement:
    ext: ClassCutExtension
    g: Element
    q: object

    def _dominant_lower(self):
        """Does the base part dominate q alpha?"""
        if not self.g:
            return False
        return self.ext.lower(psi(self.g).unit_position())

    def sign(self):
        if not self.q:
            return self.g.sign()
        if self._dominant_lower():
            return self.g.sign()
        return 1 if self.q > 0 else -1

    def psi(self):
        if not self.q:
            return psi(self.g)
        if self._dominant_lower():
            return psi(self.g)
        return self.ext.beta

    def _same(self, other):
        if other.ext is not self.ext:
            raise DomainError("elements of different extensions")

    def __add__(self, other):
        self._same(other)
        return ClassCutElement(self.ext, self.g + other.g, self.q + other.q)

    def __sub__(self, other):
        self._same(other)
        return ClassCutElement(self.ext, self.g - other.g, self.q - other.q)

    def __neg__(self):
        return ClassCutElement(self.ext, -self.g, -self.q)

    def scale(self, c):
        if not is_rational(c):
            raise DomainError("scalars must be rational")
        return ClassCutElement(self.ext, self.g.scale(c), self.q * mpq(c))

    def __bool__(self):
        return bool(self.g) or bool(self.q)

    def compare(self, other):
        return (self - other).sign()

    def __lt__(self, other):
        return self.compare(other) < 0

    def invariants(self, spec):
        """What determines the type over span(spec) of a generator with a new class."""
        e = self.ext
        if e.spec != spec:
            raise DomainError("extension is over a different base")
        if self.g or self.q != 1:
            raise DomainError("only the generator itself has invariants here")
        return (e.ncut, e.beta, 1)

    def __str__(self):
        from tlog.lang import format_element
        return "%s + %s*alpha" % (format_element(self.g), format_scalar(self.q))


def adjoin_class_cut(spec, cut, beta, check=True):
    return ClassCutExtension(spec, cut, beta, check)


def tournant_pair(spec=None, delta=None):
    """Two extensions with the same class cut between delta and s(delta) but
    psi values delta and s(delta)."""
    from tlog.couple import Model, s
    from tlog.psi_order import AtPosition
    if spec is None:
        spec = SubmodelSpec(Model())
    model = spec.model
    if delta is None:
        delta = model.w(1)
    pos = delta.unit_position()
    cut = AtPosition(pos, "right")
    return adjoin_class_cut(spec, cut, delta), adjoin_class_cut(spec, cut, s(delta))
