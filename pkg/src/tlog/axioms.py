"""Randomized verification of the axioms and elementary lemmas of a couple.

Every check reads psi, s, p only through the couple object, so the same suite
runs on base couples, shifted couples and deliberately broken ones.
"""
from dataclasses import dataclass, field

from tlog.couple import Couple, is_inf, psi as base_psi, DomainError, to_vector
from tlog.psi_order import SCut
from tlog.scalars import mpq, csign
from tlog import sampling


@dataclass
class ClauseResult:
    name: str
    checked: int = 0
    failures: int = 0
    example: object = None


@dataclass
class Report:
    title: str
    seed: object = None
    clauses: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def clause(self, name):
        if name not in self.clauses:
            self.clauses[name] = ClauseResult(name)
        return self.clauses[name]

    def record(self, name, ok, example=None):
        r = self.clause(name)
        r.checked += 1
        if not ok:
            r.failures += 1
            if r.example is None:
                r.example = example

    def count(self, name):
        c = self.clauses.get(name)
        return c.checked if c else 0

    def fail(self, name, example):
        self.record(name, False, example)

    @property
    def ok(self):
        return all(r.failures == 0 for r in self.clauses.values())

    def failed(self):
        return [r for r in self.clauses.values() if r.failures]

    def merge(self, other, prefix=""):
        for r in other.clauses.values():
            mine = self.clause(prefix + r.name)
            mine.checked += r.checked
            mine.failures += r.failures
            if mine.example is None:
                mine.example = r.example
        self.notes.extend(other.notes)
        return self

    def lines(self):
        out = ["%s seed=%s" % (self.title, self.seed)]
        for r in self.clauses.values():
            status = "PASS" if not r.failures else "FAIL"
            line = "%s %s checked=%d failures=%d" % (status, r.name, r.checked, r.failures)
            if r.example is not None:
                line += " example=%s" % _fmt(r.example)
            out.append(line)
        out.extend("note: %s" % n for n in self.notes)
        return out

    def __str__(self):
        return "\n".join(self.lines())


def _fmt(v):
    if isinstance(v, (tuple, list)):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    return str(v)


def _lt(a, b):
    if is_inf(b):
        return not is_inf(a)
    if is_inf(a):
        return False
    return a._cmp(b) < 0


def _le(a, b):
    return _lt(a, b) or a == b


def _min(a, b):
    return a if _le(a, b) else b


# clause implementations; each gets (couple, x, y, report)

def ac1(c, x, y, rep):
    if x and y and (x + y):
        lhs = c.psi(x + y)
        rep.record("AC1", _le(_min(c.psi(x), c.psi(y)), lhs), (x, y))


def ac2(c, x, y, rep):
    if x:
        px = c.psi(x)
        for r in (-1, 2, -3, 10):
            if c.psi(x.scale(r)) != px:
                rep.fail("AC2", (x, r))
                return
        rep.record("AC2", True)


def ac3(c, x, y, rep):
    if x and y:
        a = x if x.sign() > 0 else -x
        rep.record("AC3", _lt(c.psi(y), a + c.psi(a)), (a, y))


def hc(c, x, y, rep):
    a, b = abs(x), abs(y)
    if a and b:
        if b < a:
            a, b = b, a
        rep.record("HC", _le(c.psi(b), c.psi(a)), (a, b))


def psi_min_rule(c, x, y, rep):
    if x and y:
        px, py = c.psi(x), c.psi(y)
        if _lt(px, py):
            rep.record("psi-min-rule", c.psi(x + y) == px, (x, y))
        elif _lt(py, px):
            rep.record("psi-min-rule", c.psi(x + y) == py, (x, y))


def derivative_increasing(c, x, y, rep):
    if x and y and x != y:
        a, b = (x, y) if x < y else (y, x)
        rep.record("derivative-increasing", _lt(c.prime(a), c.prime(b)), (a, b))


def asym_int(c, x, y, rep):
    """Every element is a derivative: the integral is nonzero and integrates back."""
    i = c.integral(x)
    ok = bool(i) and c.prime(i) == x
    if ok and y:
        # and the integral of a derivative is the original element
        ok = c.integral(c.prime(y)) == y
    rep.record("AsymptoticIntegration", ok, (x, y))


def _neg_int(c, x):
    return c.integral(x).sign() < 0


def _pos_int(c, x):
    return c.integral(x).sign() > 0


def successor_clauses(c, x, y, rep):
    sx = c.s(x)
    # int x = x - s x, and it is the inverse of the derivative
    i = x - sx
    rep.record("integral-inverts-derivative", bool(i) and i + c.psi(i) == x, x)
    if _neg_int(c, x):
        rep.record("s-above-below-positive-derivatives", x < sx, x)
    if _pos_int(c, x):
        rep.record("s-below-above-negative-derivatives", x > sx, x)
    if x != y:
        a, b = (x, y) if x < y else (y, x)
        # a < b < (Gamma^>)'
        if _neg_int(c, b):
            rep.record("s-monotone-left", _le(c.s(a), c.s(b)), (a, b))
        # (Gamma^<)' < a < b
        if _pos_int(c, a):
            rep.record("s-antitone-right", _le(c.s(b), c.s(a)), (a, b))
    # beta = psi(alpha - beta) iff beta = s(alpha), tried on s(x) and on nearby candidates
    ok = c.psi(x - sx) == sx
    for beta in (c.psi(y) if y else None, c.s(y), sx + c.psi(x) if x else None):
        if beta is None or is_inf(beta):
            continue
        if c.psi(x - beta) == beta and beta != sx:
            ok = False
    rep.record("s-unique-fixed-point", ok, (x, y))
    if x.sign() < 0:
        chx = c.chi(x)
        if y.sign() < 0 and x != y:
            a, b = (x, y) if x < y else (y, x)
            rep.record("chi-monotone", _le(c.chi(a), c.chi(b)), (a, b))
        # [x] > [chi x]: psi(x) < psi(chi x) and a large multiple of chi x stays below |x|
        ok8 = chx.sign() < 0 and _lt(c.psi(x), c.psi(chx)) and abs(chx).scale(10 ** 6) < abs(x)
        rep.record("chi-shrinks-class", ok8, x)
        rep.record("chi-contraction-identity", chx + c.psi(chx) == c.psi(x), x)


def combination_clauses(c, rng, rep, total=None):
    pts, qs = sampling.random_psi_combination(rng, c, total=total)
    alpha = c.model.zero()
    for a, q in zip(pts, qs):
        alpha = alpha + a.scale(q)
    Q = sum(qs, mpq(0))
    s0 = c.s0()
    ex = (pts, qs)
    if not alpha:
        return
    if Q == 0:
        rep.record("psi-of-combination-sum-zero", c.psi(alpha) == c.s(pts[0]), ex)
    else:
        rep.record("psi-of-combination-sum-nonzero", c.psi(alpha) == s0, ex)
    if Q == 1:
        rep.record("s-of-combination-sum-one", c.s(alpha) == c.s(pts[0]), ex)
    else:
        rep.record("s-of-combination-sum-not-one", c.s(alpha) == s0, ex)


def difference_of_s(c, x, y, rep):
    sx, sy = c.s(x), c.s(y)
    if sx < sy:
        rep.record("psi-of-difference-of-s", c.psi(y - x) == sx, (x, y))
    elif sy < sx:
        rep.record("psi-of-difference-of-s", c.psi(x - y) == sy, (x, y))


_FAR_Q = (mpq(1, 2), mpq(1), mpq(7))


def far_out_clauses(c, x, y, rep):
    s0 = c.s0()
    for q in _FAR_Q:
        if abs(x) > abs(s0).scale(1 + q):
            rep.record("s-equals-psi-far-out", c.s(x) == c.psi(x), (x, q))
    rep.record("s-differs-from-psi-at-s0", c.s(s0) != c.psi(s0), s0)


# independent oracles on the omega part


def oracle_sign(vec):
    """Lexicographic rule: sign of the first nonzero coordinate."""
    for r in vec:
        if r:
            return csign(r)
    return 0


def oracle_psi(vec):
    """psi of (0,..,0,r_n,..) with r_n != 0 is e_0 + ... + e_n (as a vector)."""
    for n, r in enumerate(vec):
        if r:
            return [mpq(1)] * (n + 1)
    return None


def oracle_s(vec):
    """s: take n with r_n != 1 and r_m = 1 for m < n; the value is (1,...,1) of length n+1."""
    n = 0
    while n < len(vec) and vec[n] == 1:
        n += 1
    return [mpq(1)] * (n + 1)


def oracle_int(vec):
    n = 0
    while n < len(vec) and vec[n] == 1:
        n += 1
    r = vec[n] if n < len(vec) else mpq(0)
    return [mpq(0)] * n + [r - 1] + list(vec[n + 1:])


def oracle_chi(vec):
    for n, r in enumerate(vec):
        if r:
            assert r < 0
            return [mpq(0)] * (n + 1) + [mpq(-1)]
    raise ValueError("chi oracle needs a negative element")


def _same_vec(model, x, vec):
    return x == model.from_vector(vec)


def omega_oracles(c, rng, rep):
    model = c.model
    x, vec = sampling.random_omega_element(rng, model)
    # bias toward leading ones so the s and int formulas see long prefixes
    if rng.random() < 0.3:
        k = rng.randint(1, 4)
        vec = [mpq(1)] * k + vec
        x = model.from_vector(vec)
    rep.record("Oracle-sign", x.sign() == oracle_sign(vec), vec)
    if x:
        rep.record("Oracle-psi", _same_vec(model, c.psi(x), oracle_psi(vec)), vec)
    rep.record("Oracle-s", _same_vec(model, c.s(x), oracle_s(vec)), vec)
    rep.record("Oracle-int", _same_vec(model, c.integral(x), oracle_int(vec)), vec)
    if x.sign() < 0:
        rep.record("Oracle-chi", _same_vec(model, c.chi(x), oracle_chi(vec)), vec)
    rep.record("Oracle-roundtrip", model.from_vector(to_vector(x)) == x, vec)


def top_copy_clause(c, x, rep, rng):
    """s over the model equals psi, one copy up, of x minus a unit of a new top copy."""
    order = c.model.order
    big, _, ids = order.insert_copies([SCut(order.m)])
    bm = c.model.with_order(big)
    gstar = bm.beta(ids[0], rng.randint(-5, 5))
    rep.record("s-via-top-copy", bm.embed(c.s(x)) == base_psi(bm.embed(x) - gstar), x)


# clauses on the sampled Psi set


def psi_set_clauses(c, pts, rep):
    s0 = c.s0()
    rep.record("psi-set-least-element", c.in_psi(s0), "s0 = %s is not in Psi" % s0)
    for a in pts:
        # s0 is the least element, and everything in Psi is positive
        rep.record("psi-set-least-element", _le(s0, a), ("below s0", a, s0))
        if not a:
            rep.fail("psi-set-positive", "least element is 0")
        else:
            rep.record("psi-set-positive", a.sign() > 0 and s0.sign() > 0, ("not positive", a))
    srt = sampling.sort_elements(set(pts))
    for i, a in enumerate(srt):
        sa = c.s(a)
        # successor set: s(a) is again in Psi and lies above a
        rep.record("psi-set-successor-set", c.in_psi(sa) and a < sa, (a, sa))
        # nothing sampled from Psi sits strictly between a and s(a)
        nxt = srt[i + 1] if i + 1 < len(srt) else None
        rep.record("psi-set-immediate-successor", nxt is None or _le(sa, nxt), (a, sa, nxt))
        # s: Psi -> Psi^{>s0} bijective: injective on samples, onto via p
        ok5 = sa > s0
        if a != s0:
            pa = c.p(a)
            ok5 = ok5 and not is_inf(pa) and c.in_psi(pa) and c.s(pa) == a
        else:
            ok5 = ok5 and is_inf(c.p(a))
        rep.record("psi-set-successor-bijection", ok5, a)
    imgs = {}
    for a in srt:
        sa = c.s(a)
        if sa in imgs and imgs[sa] != a:
            rep.fail("psi-set-successor-bijection", (imgs[sa], a))
        imgs[sa] = a


PAIR_CLAUSES = (ac1, ac2, ac3, hc, psi_min_rule, derivative_increasing, asym_int, successor_clauses, difference_of_s, far_out_clauses)


def psi_sample(c, xs, rng, extra=2):
    """Psi elements reached from samples, plus a few successors of each."""
    pts = set()
    for x in xs:
        if x:
            a = c.psi(x)
            pts.add(a)
            for _ in range(rng.randint(0, extra)):
                a = c.s(a)
                pts.add(a)
    pts.add(c.s0())
    return pts


# clauses whose premise a plain random pair often misses
CONDITIONAL = ("psi-min-rule", "chi-monotone", "s-antitone-right", "s-below-above-negative-derivatives",
               "s-monotone-left", "psi-of-difference-of-s", "chi-shrinks-class", "s-equals-psi-far-out")


COMBINATION = ("psi-of-combination-sum-zero", "psi-of-combination-sum-nonzero",
               "s-of-combination-sum-one", "s-of-combination-sum-not-one")


def _conditioned_pair(rng, couple, window):
    """A random pair pushed into the premise of one of the conditional clauses."""
    model = couple.model
    x, y = sampling.random_pair(rng, model, window=window)
    mode = rng.randrange(3)
    if mode == 0:
        # both negative
        return -abs(x), -abs(y)
    if mode == 1:
        # both above s0 with coefficient sum > 1, hence positive integrals
        k = rng.randint(2, 5)
        return abs(x) + model.w(0, k), abs(y) + model.w(0, k + rng.randint(0, 3))
    # coefficient sum 0, so psi leaves s0
    out = []
    for z in (x, y):
        if z.terms:
            z = z - model.unit(model.order.position(z.terms[-1][0]), z.total())
        out.append(z)
    return tuple(out)


def _run_pair(couple, x, y, rep):
    for f in PAIR_CLAUSES:
        try:
            f(couple, x, y, rep)
        except DomainError as e:
            rep.fail(f.__name__, (x, y, str(e)))


def axiom_check(couple, samples=1000, seed=0, probes=(), t0=True, oracles=None, window=6, title=None,
                min_checks=0):
    """Run every clause on ``samples`` random pairs plus each probe paired with random partners.

    With ``min_checks`` the conditional clauses are topped up with pairs drawn
    inside their premises until each has that many checks (or the budget of
    4 * min_checks extra pairs runs out).  Returns a Report; nothing raises on
    a failed clause.
    """
    if not isinstance(couple, Couple):
        couple = Couple(couple)
    rng = sampling.make_rng(seed)
    model = couple.model
    rep = Report(title or "axiom_check %s" % couple.describe(), seed)
    if oracles is None:
        oracles = getattr(couple, "is_base", False)
    probes = [model.embed(p) if p.model != model else p for p in probes]
    xs = []
    fixed = [model.zero(), model.w(0)] + list(probes)
    pairs = []
    for p in fixed:
        for _ in range(4):
            q = sampling.random_element(rng, model, window=window)
            pairs.append((p, q))
            pairs.append((q, p))
        pairs.append((p, p))
        pairs.append((p, p.scale(2)))
        if p:
            pairs.append((p, couple.psi(p)))
            pairs.append((p, -p + couple.s(p)))
    for _ in range(samples):
        pairs.append(sampling.random_pair(rng, model, window=window))
    for x, y in pairs:
        xs.append(x)
        _run_pair(couple, x, y, rep)
        if oracles:
            top_copy_clause(couple, x, rep, rng)
    extra = 0
    while min_checks and extra < 4 * min_checks:
        low = [n for n in CONDITIONAL if rep.count(n) < min_checks]
        if not low:
            break
        x, y = _conditioned_pair(rng, couple, window)
        _run_pair(couple, x, y, rep)
        extra += 1
    for _ in range(max(1, samples // 4)):
        combination_clauses(couple, rng, rep)
        if oracles:
            omega_oracles(couple, rng, rep)
    extra = 0
    while min_checks and extra < 8 * min_checks:
        low = [n for n in COMBINATION if rep.count(n) < min_checks]
        if not low:
            break
        # sum 0 feeds the first and last clause, sum 1 the middle two
        zero = any(n in low for n in (COMBINATION[0], COMBINATION[3]))
        combination_clauses(couple, rng, rep, total=0 if zero else 1)
        extra += 1
    if t0:
        pts = psi_sample(couple, xs, rng)
        pts.update(couple.psi(p) for p in fixed if p)
        # and Psi sampled directly, far out as well as near s0
        wide = max(window, samples // 8)
        order = model.order
        for _ in range(max(samples, min_checks)):
            # psi(u_succ(pi) - u_pi) is the Psi element just above pi, in any couple
            pos = sampling.random_position(rng, order, wide)
            pts.add(couple.psi(model.unit(order.succ(pos)) - model.unit(pos)))
        pts = {a for a in pts if not is_inf(a)}
        psi_set_clauses(couple, sampling.sort_elements(pts), rep)
    return rep


# named suites, shared by the CLI and the tests

def order_oracle_check(model, samples, seed):
    """elem_sign against the lexicographic rule on omega-supported elements."""
    rng = sampling.make_rng(seed)
    rep = Report("order oracle", seed)
    for _ in range(samples):
        x, vec = sampling.random_omega_element(rng, model, length=8)
        rep.record("sign-vs-lex", x.sign() == oracle_sign(vec), vec)
    return rep


def order_axioms_check(model, samples, seed):
    """x < y by sign(y - x) is a translation invariant total order."""
    rng = sampling.make_rng(seed)
    rep = Report("order axioms", seed)
    for _ in range(samples):
        x = sampling.random_element(rng, model)
        y = sampling.random_element(rng, model)
        z = sampling.random_element(rng, model)
        rep.record("antisymmetry", (x < y) + (y < x) + (x == y) == 1, (x, y))
        if x < y and y < z:
            rep.record("transitivity", x < z, (x, y, z))
        rep.record("translation", (x < y) == (x + z < y + z), (x, y, z))
        rep.record("negation", (x.sign() > 0) == ((-x).sign() < 0), x)
    return rep
