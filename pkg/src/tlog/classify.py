"""The simple-extension classifier and what is built on it.

classify_simple_extension grows a submodel one whole copy at a time: while the
trace of alpha has an element outside Psi_S, that element's copy is adjoined.
The loop ends when alpha falls into the span (InSpan) or the trace stays
inside Psi_S (SpanPlusQAlpha: the extension is the span plus Q*alpha).
"""
from dataclasses import dataclass, field

from tlog.couple import Element, DomainError, psi, s
from tlog.psi_order import Copy, SCut
from tlog.scalars import mpq, is_rational
from tlog.submodel import SubmodelSpec, TraceResult, trace_set


def _trace(spec, alpha):
    if isinstance(alpha, Element):
        return trace_set(spec, alpha)
    from tlog.pseudolimit import PseudolimitExtension, pseudolimit_trace
    if isinstance(alpha, PseudolimitExtension):
        return pseudolimit_trace(spec, alpha)
    raise DomainError("cannot take the trace of %r" % (alpha,))


def _in_span(spec, alpha):
    return isinstance(alpha, Element) and spec.contains(alpha)


def submodel_contains(spec, x):
    return spec.contains(x)


@dataclass
class Step:
    copy: str
    cut: SCut          # where the copy sits relative to the current S
    base_cut: SCut     # the same, relative to the starting S
    trace: TraceResult


@dataclass
class ExtensionReport:
    base: SubmodelSpec
    alpha: object
    steps: list
    terminal: str      # "InSpan" or "SpanPlusQAlpha"
    final: SubmodelSpec
    final_trace: object = None

    @property
    def copies(self):
        return [st.copy for st in self.steps]

    @property
    def cuts(self):
        return [st.cut for st in self.steps]

    @property
    def rho(self):
        """The cuts over the starting submodel, one per adjoined copy."""
        return [st.base_cut for st in self.steps]

    def cuts_nondecreasing(self):
        r = [c.j for c in self.rho]
        return all(a <= b for a, b in zip(r, r[1:]))

    def summary(self):
        cs = ", ".join("%s@%d" % (st.copy, st.base_cut.j) for st in self.steps) or "none"
        return "%s after adjoining [%s]" % (self.terminal, cs)

    def to_text(self, width=3):
        from tlog.submodel import _fmt_alpha
        lines = ["extension terminal=%s base=%s alpha=%s" % (self.terminal, self.base.describe(), _fmt_alpha(self.alpha))]
        for i, st in enumerate(self.steps):
            lines.append("step %d copy=%s cut=%d base_cut=%d" % (i, st.copy, st.cut.j, st.base_cut.j))
            lines.extend("  " + ln for ln in st.trace.to_text(width).splitlines())
        lines.append("final %s" % self.final.describe())
        if self.final_trace is not None:
            lines.extend("  " + ln for ln in self.final_trace.to_text(width).splitlines())
        return "\n".join(lines)


def classify_simple_extension(spec, alpha, max_steps=None):
    """Classify the extension of span(spec) generated by alpha."""
    cur = spec
    steps = []
    limit = max_steps if max_steps is not None else len(spec.model.order.copies) + 1
    while True:
        if _in_span(cur, alpha):
            return ExtensionReport(spec, alpha, steps, "InSpan", cur)
        tr = _trace(cur, alpha)
        if tr.case != "Case3":
            return ExtensionReport(spec, alpha, steps, "SpanPlusQAlpha", cur, tr)
        cid = tr.external.id
        if len(steps) >= limit:
            raise DomainError("classifier exceeded %d steps" % limit)
        steps.append(Step(cid, cur.scut_below(cid), spec.scut_below(cid), tr))
        cur = cur.adjoin(cid)


# primitive elements

def primitive_strip(spec, alpha):
    """Copies recovered from alpha by repeatedly exposing its least position.

    With Q the coefficient sum, psi(x) (Q = 0) or s(x/Q) (Q != 0) is the unit
    just above the least position of x; that term is removed and the loop
    repeats.  The result is checked against the classifier.
    """
    cancel, x = spec.split(alpha)
    if not x:
        raise DomainError("alpha lies in the span of %s" % spec.describe())
    order = spec.model.order
    out = []
    while x:
        Q = x.total()
        v = psi(x) if not Q else s(x / Q)
        least = order.pred(v.unit_position())
        x = x - spec.model.unit(least, x.coeff(least))
        if isinstance(least, Copy) and not spec.pos_in(least) and least.id not in out:
            out.append(least.id)
    rep = classify_simple_extension(spec, alpha)
    if rep.terminal != "InSpan" or set(rep.copies) != set(out):
        raise DomainError("%s is not a primitive element over %s (%s)" % (alpha, spec.describe(), rep.summary()))
    return out


# algebraic closure

@dataclass
class AclSpan:
    """span(spec) + Q*extras, the structure generated by a set of elements."""
    spec: SubmodelSpec
    extras: list = field(default_factory=list)

    def contains(self, y):
        if self.spec.contains(y):
            return True
        _, uy = self.spec.split(y)
        for e in self.extras:
            _, ue = self.spec.split(e)
            c = _ratio(uy, ue)
            if c is not None and self.spec.contains(y - e.scale(c)):
                return True
        return False

    def describe(self):
        body = self.spec.describe()
        return body + "".join(" + Q*(%s)" % e for e in self.extras)


def _ratio(u, v):
    """Rational c with u = c v, or None."""
    if not v or len(u.terms) != len(v.terms):
        return None
    (k0, a0), (k1, b0) = u.terms[0], v.terms[0]
    if k0 != k1:
        return None
    c = a0 / b0
    if not is_rational(c):
        return None
    c = mpq(c) if not hasattr(c, "a") else c.a
    return c if v.scale(c) == u else None


def acl_generate(spec, xs):
    """The structure generated by span(spec) and the elements xs."""
    if isinstance(xs, Element):
        xs = [xs]
    cur = AclSpan(spec, [])
    changed = True
    while changed:
        changed = False
        for x in xs:
            if cur.contains(x):
                continue
            rep = classify_simple_extension(cur.spec, x)
            if rep.steps:
                changed = True
            extras = [e for e in cur.extras if not rep.final.contains(e)]
            cur = AclSpan(rep.final, extras)
            if rep.terminal == "SpanPlusQAlpha" and not cur.contains(x):
                if cur.extras:
                    raise DomainError("more than one generator outside the copy span is not supported")
                cur = AclSpan(rep.final, [x])
                changed = True
    return cur


def in_acl(spec, xs, y):
    return acl_generate(spec, xs).contains(y)


# types over a submodel

def _group_closed_trace(spec, a):
    tr = trace_set(spec, a)
    if tr.case == "Case3":
        raise DomainError("%s generates new Psi elements over %s; only span+Q*alpha extensions are supported"
                          % (a, spec.describe()))
    return tr


def same_cut(spec, a, b):
    """Do a and b realize the same cut over span(spec)?  Both must lie outside it.

    With d = b - a != 0 the cut is the same iff psi(d) lies above every psi
    value psi(a - g), g in span(S), i.e. above the psi-part of the trace of a.
    """
    if a == b:
        return True
    tr = _group_closed_trace(spec, a)
    k = psi(b - a).terms[0][0]
    return tr.psi_down.above_all(k)


def separate(spec, a, b):
    """An element g of span(S) strictly between a and b, or None if the cut is shared."""
    if a > b:
        a, b = b, a
    if same_cut(spec, a, b):
        return None
    tr = _group_closed_trace(spec, a)
    model = spec.model
    order = model.order
    d = b - a
    sk = psi(d).terms[0][0]
    tk = _tau_key(tr, sk)
    tau = order.position(tk)
    q, w = tr.witness("psi", tau)
    x0 = w / q          # psi(a - x0) = tau
    if tk == 0:
        g = model.w(0)
    else:
        g = model.unit(order.pred(tau)) - model.unit(tau)
    g = abs(g)

    def between(h):
        y = x0 + h
        return a < y < b

    if tk > sk:
        # a - x0 lies in a smaller class than d, and so does any multiple of g
        k = 1
        while not g.scale(k) > abs(a - x0):
            k *= 2
        if between(g.scale(k)):
            return x0 + g.scale(k)
    # same class: bisect a rational multiple of g into (a - x0, b - x0)
    lo, hi = a - x0, b - x0
    r0 = mpq(-1)
    while g.scale(r0) > lo:
        r0 *= 2
    r1 = mpq(1)
    while g.scale(r1) < hi:
        r1 *= 2
    for _ in range(400):
        mid = (r0 + r1) / 2
        h = g.scale(mid)
        if lo < h < hi:
            return x0 + h
        if h <= lo:
            r0 = mid
        else:
            r1 = mid
    raise DomainError("no separating element found between %s and %s" % (a, b))


def _tau_key(tr, sk):
    """A key in the psi-part of the trace that is >= sk."""
    D = tr.psi_down
    spec = tr.spec
    if D.contains_key(sk):
        return sk
    if D.closed:
        return D.K
    # open: the bottom of the first S copy above the class of sk that is still in D
    from tlog.submodel import _rank_of_key, _class_floor, _HALF
    r = _rank_of_key(sk)
    for q in sorted(spec._ranks):
        if q > r:
            k = _class_floor(q) + _HALF
            if D.contains_key(k):
                return k
    raise DomainError("psi-part has nothing above the difference")


def same_type_over(spec, a, b):
    """Do a and b have the same type over span(spec)?

    Ambient elements: both must generate span+Q*alpha extensions without new
    Psi elements; then the type is the cut.  Class-cut extensions compare
    their invariants: cut in the classes, psi value of the generator, sign.
    """
    from tlog.classcut import ClassCutElement, ClassCutExtension
    if isinstance(a, ClassCutExtension):
        a = a.generator()
    if isinstance(b, ClassCutExtension):
        b = b.generator()
    if isinstance(a, ClassCutElement) or isinstance(b, ClassCutElement):
        if not (isinstance(a, ClassCutElement) and isinstance(b, ClassCutElement)):
            raise DomainError("cannot compare a class-cut extension with an ambient element")
        return a.invariants(spec) == b.invariants(spec)
    if not isinstance(a, Element) or not isinstance(b, Element):
        raise DomainError("unsupported extension shape")
    if a.model != b.model or a.model != spec.model:
        raise DomainError("elements must live in the ambient of the submodel")
    ina, inb = spec.contains(a), spec.contains(b)
    if ina or inb:
        return a == b
    _group_closed_trace(spec, a)
    _group_closed_trace(spec, b)
    return same_cut(spec, a, b)
