"""Named randomized suites.  Each takes (samples, seed) and returns a Report.

The CLI ``check`` command and the acceptance tests both run these, so a
failing run can be replayed from its suite name, sample count and seed.
"""
from tlog import sampling
from tlog.axioms import Report, axiom_check, order_oracle_check, order_axioms_check
from tlog.couple import Couple, Model, is_inf, psi, s, p, DomainError
from tlog.psi_order import PsiOrder, Omega, SCut
from tlog.scalars import mpq
from tlog.submodel import SubmodelSpec, trace_set, check_witness, structure_problems


def suite_axioms(samples=1000, seed=0, max_copies=4):
    """Every axiom clause on the prime model and on models with 1..max_copies copies.

    Conditional clauses are topped up so that, summed over the models, each
    is checked on at least ``samples`` inputs.
    """
    rep = Report("axioms", seed)
    models = sampling.sample_models(max_copies)
    per = -(-samples // len(models))
    for i, model in enumerate(models):
        sub = axiom_check(Couple(model), samples=samples, seed=seed * 101 + i, min_checks=per)
        rep.merge(sub)
    return rep


def suite_order(samples=1000, seed=0):
    rep = Report("order", seed)
    rep.merge(order_oracle_check(Model(), samples, seed))
    for i, model in enumerate(sampling.sample_models(2, radicand=2)):
        rep.merge(order_axioms_check(model, max(1, samples // 3), seed + i))
    return rep


def random_submodel(rng, model):
    cs = [c for c in model.copies if rng.random() < 0.5]
    return SubmodelSpec(model, cs, rational=rng.random() < 0.5)


def _sweep_point(rng, model, sub, alpha, cancel):
    q = rng.choice(sampling._SMALL)
    g = sub.coerce(sampling.random_element(rng, model, max_terms=3, irrational=0.4))
    r = rng.random()
    if r < 0.6:
        g = g + cancel.scale(q)
    if r < 0.3:
        # push the coefficient sum of q alpha - g onto 0 or 1, where psi and s branch
        fix = rng.choice((0, 1)) - (alpha.scale(q) - g).total()
        pos = model.order.position(g.terms[0][0]) if g.terms else Omega(rng.randrange(5))
        if sub.field_has(fix):
            g = g - model.unit(pos, fix)
    return q, g


def suite_trace(samples=100, seed=0, points=1000, max_copies=3, width=3):
    """Random (ambient, submodel, alpha) triples: witnesses, a (q, g) sweep, structure."""
    rng = sampling.make_rng(seed)
    rep = Report("trace", seed)
    done = 0
    while done < samples:
        m = rng.randint(0, max_copies)
        model = Model(PsiOrder(["c%d" % i for i in range(m)]), rng.choice((None, 2)))
        sub = random_submodel(rng, model)
        alpha = sampling.random_element(rng, model, max_terms=4, irrational=0.4)
        if sub.contains(alpha):
            continue
        done += 1
        tr = trace_set(sub, alpha)
        if done <= 3:
            rep.notes.append("%s over %s: %s" % (alpha, sub.describe(), tr.case))
        for prob in structure_problems(tr, width):
            rep.fail("trace-structure", (alpha, sub, prob))
        rep.record("trace-structure", True)
        for pos, a, b in tr.listing(width):
            for kind, flag in (("psi", a), ("s", b)):
                if flag:
                    rep.record("witness-reevaluates", check_witness(tr, kind, pos), (alpha, sub, kind, pos))
        cancel, _ = sub.split(alpha)
        for _ in range(points):
            q, g = _sweep_point(rng, model, sub, alpha, cancel)
            x = alpha.scale(q) - g
            if not x:
                continue
            rep.record("sweep-psi-inside-trace", tr.in_psi_part(psi(x)), (alpha, sub, q, g))
            rep.record("sweep-s-inside-trace", tr.in_s_part(s(x)), (alpha, sub, q, g))
            px = p(x)
            if not is_inf(px) and not sub.in_psi(px):
                rep.record("p-outside-forces-s-outside", not sub.in_psi(s(x)), (alpha, sub, q, g))
        # monotonicity: a larger submodel has a larger trace (on the window)
        bigger = [c for c in model.copies if c not in sub.copies]
        if bigger:
            sub2 = sub.adjoin(rng.choice(bigger))
            if not sub2.contains(alpha):
                tr2 = trace_set(sub2, alpha)
                ok = all(tr2.contains(model.unit(pos)) for pos, _, _ in tr.listing(width) if sub.pos_in(pos))
                rep.record("trace-monotone-in-submodel", ok, (alpha, sub, sub2))
    return rep


def random_shift(rng, max_copies=3):
    """A random (B, eps) shift with B a proper s-cut."""
    m = rng.randint(1, max_copies)
    model = Model(PsiOrder(["c%d" % i for i in range(m)]))
    j = rng.randint(0, m - 1)
    cid = model.copies[rng.randint(j, m - 1)]
    k = rng.randint(-4, 4)
    l = k + rng.randint(1, 6)
    eps = model.beta(cid, k).scale(rng.choice((1, 2, -3, mpq(1, 2)))) - model.beta(cid, l)
    if rng.random() < 0.3:
        eps = eps + model.e(rng.randrange(4), rng.choice(sampling._SMALL))
    from tlog.shifts import ShiftSpec
    if not model.order.in_scut(psi(eps).unit_position(), SCut(j)):
        eps = model.beta(cid, k) - model.beta(cid, l)
    return ShiftSpec(model, SCut(j), eps)


def suite_shift(samples=1000, seed=0, specs=50, per_spec=None):
    """Random proper shifts, the full-Psi counterexample and the chi collision."""
    from tlog.shifts import ShiftSpec, shift_check, chi_collision_demo
    rng = sampling.make_rng(seed)
    rep = Report("shift", seed)
    per = per_spec or max(20, samples // specs)
    for i in range(specs):
        spec = random_shift(rng)
        sub = shift_check(spec, samples=per, seed=seed * 31 + i)
        rep.merge(sub)
    model = Model()
    full = shift_check(ShiftSpec(model, SCut.full(), -model.w(0)), samples=max(50, per), seed=seed)
    bad = [c for c in full.clauses.values() if c.name == "psi-set-positive" and c.failures]
    diag = bool(bad) and "least element is 0" in str(bad[0].example)
    rep.record("full-shift-fails-least-element-0", diag, "least element is 0" if diag else full.failed())
    rep.merge(chi_collision_demo(samples=samples, seed=seed))
    return rep


def suite_precontraction(samples=1000, seed=0):
    from tlog.shifts import precontraction_check, ShiftedCouple, default_collision_shift
    rep = Report("precontraction", seed)
    for i, model in enumerate(sampling.sample_models(2)):
        rep.merge(precontraction_check(Couple(model), samples, seed + i))
    rep.merge(precontraction_check(ShiftedCouple(default_collision_shift()), samples, seed + 9))
    return rep


def suite_lang(samples=1000, seed=0):
    from tlog import lang
    rng = sampling.make_rng(seed)
    rep = Report("lang", seed)
    models = sampling.sample_models(2, radicand=2)
    for _ in range(samples):
        model = rng.choice(models)
        t = random_term(rng, model)
        text = lang.format_term(t)
        back = lang.parse_term(text)
        rep.record("term-roundtrip", back == t and lang.format_term(back) == text, text)
        x = sampling.random_element(rng, model)
        rep.record("element-roundtrip", lang.parse_element(lang.format_element(x), model) == x, x)
        env = lang.Env(model, {"x": x, "y": sampling.random_element(rng, model)})
        for name, lhs, rhs in _IDENTITIES:
            if name == "int-of-derivative" and not x:
                continue
            a, b = lang.evaluate(lhs, env), lang.evaluate(rhs, env)
            rep.record(name, lang.compare_values(a, b) == 0, (lhs, x))
        n = rng.randint(1, 9)
        env.bind("n_x", x.scale(n))
        rep.record("delta-inverts-multiple", lang.evaluate("d%d(n_x)" % n, env) == x, (n, x))
        v = lang.evaluate("x", env)
        chi = lang.evaluate("chi(x)", env)
        if v.sign() < 0:
            rep.record("chi-definition", chi == lang.evaluate("psi(x) - s(psi(x))", env), x)
        else:
            rep.record("chi-default-infinity", is_inf(chi), x)
    for name, ok in infinity_table():
        rep.record(name, ok)
    return rep


_IDENTITIES = (
    ("int-definition", "int(x)", "x - s(x)"),
    ("delta1-identity", "d1(x)", "x"),
    ("int-of-derivative", "int(x + psi(x))", "x"),
)


def infinity_table():
    """The default-value rules: -inf, g + inf, inf + g, inf + inf, psi(0), psi(inf) are inf."""
    from tlog import lang
    model = Model(PsiOrder(["c0"]))
    env = lang.Env(model, {"g": model.e(1, 3)})
    rows = [
        ("inf-negation", "-inf"), ("inf-right-sum", "g + inf"), ("inf-left-sum", "inf + g"),
        ("inf-plus-inf", "inf + inf"), ("psi-of-zero", "psi(0)"), ("psi-of-inf", "psi(inf)"),
        ("s-of-inf", "s(inf)"), ("p-of-inf", "p(inf)"), ("p-of-zero", "p(0)"), ("delta-of-inf", "d3(inf)"),
        ("inf-minus-g", "inf - g"), ("g-minus-inf", "g - inf"), ("int-of-inf", "int(inf)"), ("chi-of-inf", "chi(inf)"),
    ]
    out = [(name, is_inf(lang.evaluate(t, env))) for name, t in rows]
    out.append(("inf-is-maximum", lang.evaluate("g < inf", env) and not lang.evaluate("inf < g", env)))
    out.append(("inf-equals-inf", lang.evaluate("inf = inf", env) and not lang.evaluate("inf < inf", env)))
    return out


def random_term(rng, model, depth=3):
    """A random term in canonical (printer) form."""
    from tlog import lang
    r = rng.random()
    if depth <= 0 or r < 0.3:
        k = rng.random()
        if k < 0.1:
            return lang.Zero()
        if k < 0.15:
            return lang.Inf()
        if k < 0.3:
            return lang.Var(rng.choice(("x", "y", "z")))
        x = sampling.random_nonzero(rng, model, max_terms=2)
        return lang.parse_term(lang.format_element(x))
    if r < 0.5:
        name = rng.choice(lang.FUNCS)
        return lang.Fn(name, random_term(rng, model, depth - 1))
    if r < 0.6:
        return lang.Delta(rng.randint(1, 5), random_term(rng, model, depth - 1))
    if r < 0.7:
        return lang.Neg(random_term(rng, model, depth - 1))
    a, b = random_term(rng, model, depth - 1), random_term(rng, model, depth - 1)
    return lang.Add(a, b) if r < 0.85 else lang.Sub(a, b)


def suite_mutation(samples=200, seed=0, mutants=60):
    """Single-point mutations of psi or s must each be caught by the axiom suite."""
    rng = sampling.make_rng(seed)
    rep = Report("mutation", seed)
    models = sampling.sample_models(3)
    for i in range(mutants):
        model = models[i % len(models)]
        mc = MutantCouple.random(rng, model)
        sub = axiom_check(mc, samples=samples, seed=seed + i, probes=[mc.point], oracles=True)
        rep.record("mutant-detected", not sub.ok, mc.describe())
    return rep


class MutantCouple(Couple):
    """A couple whose psi or s is wrong at exactly one point."""

    def __init__(self, model, which, point, value):
        super().__init__(model)
        self.which = which
        self.point = point
        self.value = value

    @classmethod
    def random(cls, rng, model):
        while True:
            x = sampling.random_element(rng, model)
            if x:
                break
        which = rng.choice(("psi", "s"))
        right = psi(x) if which == "psi" else s(x)
        wrong = right
        while wrong == right:
            pos = sampling.random_position(rng, model.order, 4)
            wrong = model.unit(pos)
            if rng.random() < 0.3:
                wrong = wrong + model.w(0)
        return cls(model, which, x, wrong)

    def psi(self, x):
        if self.which == "psi" and x == self.point:
            return self.value
        return psi(x)

    def s(self, x):
        if self.which == "s" and x == self.point:
            return self.value
        return s(x)

    def describe(self):
        return "mutant %s at %s -> %s" % (self.which, self.point, self.value)


SUITES = {
    "axioms": suite_axioms,
    "order": suite_order,
    "trace": suite_trace,
    "shift": suite_shift,
    "precontraction": suite_precontraction,
    "lang": suite_lang,
    "mutation": suite_mutation,
}


def run_suite(name, samples, seed):
    try:
        f = SUITES[name]
    except KeyError:
        raise DomainError("unknown suite %r (known: %s)" % (name, ", ".join(sorted(SUITES)))) from None
    return f(samples=samples, seed=seed)
