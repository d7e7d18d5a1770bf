"""(B, eps)-shifts of psi and the precontraction-group view.

The shifted map adds eps to psi(x) whenever psi(x) lies in the s-cut B and
leaves it alone below B.  Its successor s~ has no closed form here: s~(x) is
found as the unique beta with beta = psi~(x - beta) among a few candidates.
"""
from tlog.couple import Couple, Model, INF, is_inf, DomainError, psi as base_psi, s as base_s
from tlog.psi_order import SCut
from tlog.axioms import Report, axiom_check
from tlog import sampling


class ShiftError(DomainError):
    pass


class ShiftSpec:
    """Data of a shift: model, s-cut B (SCut(-1) is all of Psi) and eps with psi(eps) in B."""

    def __init__(self, model, B, eps):
        order = model.order
        order.check_scut(B, allow_full=True)
        if eps.model != model:
            eps = model.embed(eps)
        if not eps:
            raise ShiftError("eps must be nonzero, since psi(0) is undefined")
        pe = base_psi(eps).unit_position()
        if not order.in_scut(pe, B):
            raise ShiftError("psi(eps) = %s is not in the s-cut B" % (pe,))
        self.model = model
        self.B = B
        self.eps = eps

    def describe(self):
        from tlog.lang import format_element
        b = "Psi" if self.B.is_full else "SCut(%d)" % self.B.j
        return "(%s, %s)-shift" % (b, format_element(self.eps))


class ShiftedCouple(Couple):
    is_base = False

    def __init__(self, spec):
        super().__init__(spec.model)
        self.spec = spec
        self._s_cache = {}

    def describe(self):
        return "%s of %r" % (self.spec.describe(), self.model)

    def _in_B(self, v):
        return self.model.order.in_scut(v.unit_position(), self.spec.B)

    def psi(self, x):
        if is_inf(x) or not x:
            return INF
        v = base_psi(x)
        return v + self.spec.eps if self._in_B(v) else v

    def _candidates(self, x):
        order = self.model.order
        keys = {0, 1}
        for k, _ in x.terms + self.spec.eps.terms:
            keys.update((k - 1, k, k + 1))
        out = []
        for k in sorted(keys):
            if k < 0 or (k >= (1 << 64) and ((k >> 64) - 1) >= order.m):
                continue
            try:
                u = self.model.unit(order.position(k))
            except (IndexError, ValueError):
                continue
            out.append(u)
            out.append(u + self.spec.eps)
        return out

    def s(self, x):
        if is_inf(x):
            return INF
        hit = self._s_cache.get(x)
        if hit is not None:
            return hit
        sols = {b for b in self._candidates(x) if self.psi(x - b) == b}
        if len(sols) != 1:
            raise ShiftError("shifted successor of %s: %d candidate solutions" % (x, len(sols)))
        (b,) = sols
        self._s_cache[x] = b
        return b

    def in_psi(self, x):
        if is_inf(x):
            return False
        if x.is_unit() and not self._in_B(x):
            return True
        y = x - self.spec.eps
        return y.is_unit() and self._in_B(y)

    def p(self, x):
        if not self.in_psi(x):
            return INF
        for c in self._candidates(x):
            if c != x and self.in_psi(c) and self.s(c) == x:
                return c
        return INF


def shifted_psi(spec, x):
    return ShiftedCouple(spec).psi(x)


def shifted_s(spec, x):
    return ShiftedCouple(spec).s(x)


def shift_check(spec, samples=1000, seed=0, t0=True):
    """Axiom suite on the shifted couple plus the shift-specific identities."""
    sc = ShiftedCouple(spec)
    rep = axiom_check(sc, samples=samples, seed=seed, t0=t0, oracles=False,
                      title="shift_check %s" % spec.describe())
    rng = sampling.make_rng(seed + 1)
    model = spec.model
    eps = spec.eps
    for _ in range(samples):
        x = sampling.random_nonzero(rng, model)
        if x.sign() > 0:
            x = -x
        ch = base_s_chi(x)
        rep.record("base-contraction-identity", ch + sc.psi(ch) == sc.psi(x), x)
        rep.record("contraction-invariance", sc.chi(x) == ch, x)
        y = sampling.random_element(rng, model)
        b = sc.s(y)
        rep.record("shifted-successor-solves-equation", sc.psi(y - b) == b, y)
    # the successor identity only bites when psi(x) is in B, so sample there
    hits = 0
    for x in _elements_with_psi_in(sc, rng, samples):
        v = base_psi(x)
        rep.record("shifted-successor-of-shifted-psi", sc.s(sc.psi(x)) == base_s(v) + eps, x)
        hits += 1
    if hits < samples:
        rep.notes.append("only %d of %d elements with psi in B found" % (hits, samples))
    return rep


def _elements_with_psi_in(sc, rng, n, tries=50):
    """Random x with psi(x) in B: sum-zero combinations over the copies of B."""
    model = sc.model
    B = sc.spec.B
    cids = model.copies if B.is_full else model.copies[B.j:]
    out = []
    for _ in range(n * tries):
        if len(out) >= n:
            break
        if not cids:
            x = sampling.random_nonzero(rng, model)
        else:
            x = model.zero()
            for _ in range(rng.randint(1, 3)):
                c = rng.choice(cids)
                k = rng.randint(-6, 6)
                x = x + (model.beta(c, k) - model.beta(c, k + rng.randint(1, 4))).scale(rng.choice(sampling._SMALL))
        if x and sc._in_B(base_psi(x)):
            out.append(x)
    return out


def base_s_chi(x):
    """The contraction of the unshifted couple."""
    v = base_psi(x)
    return v - base_s(v)


# precontraction groups

class PrecontractionView:
    """chi_PG: chi on the negative cone, 0 at 0, extended oddly."""

    def __init__(self, couple, chi=None):
        if not isinstance(couple, Couple):
            couple = Couple(couple)
        self.couple = couple
        self.model = couple.model
        self._chi = chi

    def chi(self, x):
        if self._chi is not None:
            return self._chi(x)
        return precontraction_chi(self.couple, x)


def precontraction_chi(couple, x):
    if isinstance(couple, PrecontractionView):
        return couple.chi(x)
    if not x:
        return x
    if x.sign() < 0:
        return couple.chi(x)
    return -couple.chi(-x)


def precontraction_check(view, samples=1000, seed=0, probes=()):
    """Precontraction axioms, centripetality and divisibility on random samples."""
    if not isinstance(view, PrecontractionView):
        view = PrecontractionView(view)
    rng = sampling.make_rng(seed)
    model = view.model
    rep = Report("precontraction_check %s" % view.couple.describe(), seed)
    f = view.chi
    xs = list(probes) + [sampling.random_element(rng, model) for _ in range(samples)]
    for x in xs:
        cx = f(x)
        rep.record("chi-zero-iff-zero", (not cx) == (not x), x)
        rep.record("chi-odd", f(-x) == -cx, x)
        y = sampling.random_element(rng, model)
        a, b = (x, y) if x <= y else (y, x)
        rep.record("chi-monotone", f(a) <= f(b), (a, b))
        if x:
            rep.record("chi-centripetal", abs(x) > abs(cx), x)
            # an element of the same class and sign: a positive multiple plus something smaller
            z = sampling.random_element(rng, model)
            r = rng.choice(sampling._SMALL)
            w = x.scale(abs(r))
            if z and view.couple.class_compare(z, x) < 0:
                w = w + z
            if w and w.sign() == x.sign() and view.couple.class_compare(w, x) == 0:
                rep.record("chi-constant-on-signed-classes", f(w) == cx, (x, w))
            n = rng.randint(2, 9)
            rep.record("divisible", (x / n).scale(n) == x, (x, n))
    return rep


def default_collision_shift(model=None):
    """The 2-copy shift used by the demonstration: B = last copy, eps = b[c1,0] - b[c1,5]."""
    if model is None:
        from tlog.psi_order import PsiOrder
        model = Model(PsiOrder(["c0", "c1"]))
    last = model.copies[-1]
    eps = model.beta(last, 0) - model.beta(last, 5)
    return ShiftSpec(model, SCut(model.order.m - 1), eps)


def chi_collision_demo(model=None, samples=10000, seed=0, spec=None):
    """psi and a shift of it give the same chi_PG but differ as maps."""
    spec = spec or default_collision_shift(model)
    model = spec.model
    base = Couple(model)
    sc = ShiftedCouple(spec)
    v0, v1 = PrecontractionView(base), PrecontractionView(sc)
    rng = sampling.make_rng(seed)
    rep = Report("chi_collision_demo %s" % spec.describe(), seed)
    for _ in range(samples):
        x = sampling.random_element(rng, model)
        rep.record("chi-agrees", v0.chi(x) == v1.chi(x), x)
    last = model.copies[-1] if model.copies else None
    if last is None:
        raise ShiftError("the demonstration needs a model with copies")
    w = model.beta(last, 0) - model.beta(last, 1)
    rep.record("psi-differs-at-witness", sc._in_B(base_psi(w)) and sc.psi(w) != base_psi(w), w)
    rep.notes.append("witness w = %s: psi(w) = %s, shifted psi(w) = %s" % (w, base_psi(w), sc.psi(w)))
    return rep
