"""Acceptance criteria, one test each, at the stated sizes and time limits.

Every test prints a single PASS/FAIL line (visible even without -s).
"""
import random
import time
from fractions import Fraction

import pytest

from tlog.couple import Model, is_inf, psi
from tlog.psi_order import PsiOrder, Omega, SCut
from tlog.scalars import Scalar
from tlog.sampling import random_element
from tlog.extensions import (
    SubmodelSpec, trace_set, classify_simple_extension, primitive_strip, in_acl, tournant_pair,
    same_type_over, harmonic_example, copy_chain_example, adjoin_pseudolimit, pc_check, pseudolimit_trace,
)
from tlog.suites import suite_axioms, suite_mutation, suite_trace, suite_shift, suite_lang, infinity_table

import _oracle as O

F = Fraction


@pytest.fixture
def verdict(capsys):
    def emit(number, title, limit, fn):
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as e:  # a crash is a failed criterion, reported like one
            ok, detail = False, "%s: %s" % (type(e).__name__, e)
        dt = time.perf_counter() - t0
        within = dt < limit
        status = "PASS" if ok and within else "FAIL"
        extra = detail
        if ok and not within:
            extra = "over the %gs limit" % limit
        with capsys.disabled():
            print("\n%s criterion %d: %s [%.2fs / %gs] %s" % (status, number, title, dt, limit, extra))
        assert ok, detail
        assert within, "took %.2fs, limit %gs" % (dt, limit)
    return emit


def test_criterion_01_example_one(verdict):
    def run():
        m = Model(radicand=2)
        S = SubmodelSpec(m, [], True)
        alpha = m.e(2, Scalar.sqrt(2))
        tr = trace_set(S, alpha)
        members = {p for p, a, b in tr.listing(8)}
        rep = classify_simple_extension(S, alpha)
        ok = (tr.case == "Case1" and members == {Omega(0), Omega(1), Omega(2)}
              and rep.terminal == "SpanPlusQAlpha" and rep.rho == [] and rep.steps == [])
        return ok, "%s; %s" % (tr.summary(), rep.summary())
    verdict(1, "trace of sqrt2*e2 over the rational prime span", 1.0, run)


def test_criterion_02_harmonic_pseudolimit(verdict):
    def run():
        spec = harmonic_example(24)
        m = spec.model
        bad = []
        for n0 in range(21):
            want = O.to_element(m, [1] * (n0 + 2))
            for n1 in range(n0 + 1, 21):
                if psi(spec.a(n0) - spec.a(n1)) != want:
                    bad.append((n0, n1))
        pc = pc_check(spec, 20)
        ext = adjoin_pseudolimit(spec)
        for n in range(21):
            if ext.psi_minus(spec.a(n)) != m.w(n + 1):
                bad.append(("lambda", n))
        rng = random.Random(2)
        outside = 0
        for _ in range(400):
            q = rng.choice((1, -1, 2, F(1, 3), F(-5, 2)))
            g = random_element(rng, m, max_terms=5)
            v = ext.psi(q, -g)
            if is_inf(v) or not v.is_unit():
                outside += 1
        tr = pseudolimit_trace(SubmodelSpec(m), ext)
        ok = not bad and pc.ok and outside == 0 and tr.case == "Case2"
        return ok, "pairs checked=210 mismatches=%d pc=%s samples outside Psi=%d trace %s" % (
            len(bad), pc.ok, outside, tr.case)
    verdict(2, "harmonic pc-sequence and its pseudolimit", 5.0, run)


def _example_three_instance(rng):
    """A 4-copy extension of a base with 0-2 copies and a primitive element over the base."""
    k = rng.randint(0, 2)
    base = PsiOrder(["b%d" % i for i in range(k)])
    rho = [SCut(j) for j in sorted(rng.randint(0, k) for _ in range(4))]
    order, _, ids = base.insert_copies(rho, ["n%d" % i for i in range(4)])
    model = Model(order)
    S = SubmodelSpec(model, list(base.copies))
    touched = [c for c in ids if rng.random() < 0.6] or [rng.choice(ids)]
    alpha = model.zero()
    for c in touched:
        part = model.zero()
        while not part:
            for _ in range(rng.randint(1, 3)):
                part = part + model.beta(c, rng.randint(-4, 4), rng.choice((1, -1, 2, F(1, 2), F(-3, 4))))
        alpha = alpha + part
    gamma = random_element(rng, model)
    gamma = S.coerce(gamma)
    alpha = alpha + gamma
    cut_of = dict(zip(ids, (c.j for c in rho)))
    return S, alpha, touched, cut_of


def test_criterion_03_primitive_elements(verdict):
    def run():
        rng = random.Random(3)
        bad = []
        for i in range(100):
            S, alpha, touched, cut_of = _example_three_instance(rng)
            got = primitive_strip(S, alpha)
            rep = classify_simple_extension(S, alpha)
            rho = dict(zip(rep.copies, (c.j for c in rep.rho)))
            if (set(got) != set(touched) or rep.terminal != "InSpan" or set(rep.copies) != set(touched)
                    or any(rho[c] != cut_of[c] for c in touched)):
                bad.append((i, alpha, got, rep.summary()))
        return not bad, "instances=100 mismatches=%d%s" % (len(bad), "" if not bad else " first=%s" % (bad[0],))
    verdict(3, "primitive_strip and classifier on 4-copy extensions", 10.0, run)


def test_criterion_04_copy_chain(verdict):
    def run():
        spec = copy_chain_example(10, max_n=8)
        m = spec.model
        bad = [(mm, n) for n in range(9) for mm in range(n)
               if psi(spec.a(n) - spec.a(mm)) != m.beta("c%d" % (mm + 1), 1)]
        ext = adjoin_pseudolimit(spec)
        rep = classify_simple_extension(SubmodelSpec(m), ext)
        js = [c.j for c in rep.cuts]
        cases = [st.trace.case for st in rep.steps]
        ok = (not bad and len(rep.steps) == 9 and all(c == "Case3" for c in cases)
              and all(a < b for a, b in zip(js, js[1:])) and rep.copies == ["c%d" % i for i in range(9)])
        return ok, "pairs mismatched=%d; %d Case3 steps, cuts %s, then %s" % (
            len(bad), len(cases), js, rep.terminal)
    verdict(4, "copy-chain pseudolimit in a 10-copy ambient", 10.0, run)


def test_criterion_05_steinitz(verdict):
    def run():
        m = Model(PsiOrder(["c0", "c1"]))
        S = SubmodelSpec(m)
        a = m.beta("c0", 0)
        b = a + m.beta("c1", 0)
        x, y = in_acl(S, [b], a), in_acl(S, [a], b)
        return x and not y, "a in acl(b)=%s, b in acl(a)=%s" % (x, y)
    verdict(5, "exchange fails for acl", 1.0, run)


def test_criterion_06_same_cut_different_types(verdict):
    def run():
        S = SubmodelSpec(Model())
        x, y = tournant_pair()
        x2, _ = tournant_pair()
        diff, same = same_type_over(S, x, y), same_type_over(S, x, x2)
        return (not diff) and same, "delta vs s(delta): %s, identical descriptors: %s" % (diff, same)
    verdict(6, "class-cut extensions with psi values delta and s(delta)", 1.0, run)


def test_criterion_07_axiom_suites(verdict):
    def run():
        rep = suite_axioms(samples=10000, seed=7)
        mut = suite_mutation(samples=200, seed=7, mutants=60)
        required = ["AC1", "AC2", "AC3", "HC", "AsymptoticIntegration", "psi-min-rule", "derivative-increasing",
                    "integral-inverts-derivative", "s-above-below-positive-derivatives",
                    "s-below-above-negative-derivatives", "s-monotone-left", "s-antitone-right",
                    "s-unique-fixed-point", "chi-monotone", "chi-shrinks-class", "chi-contraction-identity",
                    "psi-of-combination-sum-zero", "psi-of-combination-sum-nonzero", "s-of-combination-sum-one",
                    "s-of-combination-sum-not-one", "psi-of-difference-of-s", "s-via-top-copy",
                    "psi-set-least-element", "psi-set-positive", "psi-set-successor-set",
                    "psi-set-immediate-successor", "psi-set-successor-bijection"]
        counts = {n: rep.count(n) for n in required}
        thin = [n for n, c in counts.items() if c < 10000]
        m = mut.clauses["mutant-detected"]
        ok = rep.ok and mut.ok and not thin
        return ok, "clauses=%d min checks=%d (%s) failed=%s mutants detected=%d/%d thin=%s" % (
            len(required), min(counts.values()), min(counts, key=counts.get),
            [c.name for c in rep.failed()], m.checked - m.failures, m.checked, thin)
    verdict(7, "axiom suites on 10^4 samples and mutation detection", 60.0, run)


def test_criterion_08_order_oracle(verdict):
    def run():
        rng = random.Random(8)
        m = Model()
        bad = 0
        for _ in range(10000):
            r = [rng.choice((0, 0, 1, -1, F(rng.randint(-9, 9), rng.randint(1, 9)))) for _ in range(rng.randint(1, 8))]
            if O.to_element(m, r).sign() != O.lex_sign(r):
                bad += 1
        return bad == 0, "samples=10000 disagreements=%d" % bad
    verdict(8, "sign agrees with the lexicographic rule", 60.0, run)


def test_criterion_09_trace_soundness(verdict):
    def run():
        rep = suite_trace(samples=100, seed=9, points=1000)
        need = ["witness-reevaluates", "sweep-psi-inside-trace", "sweep-s-inside-trace", "trace-structure"]
        counts = {n: rep.count(n) for n in need}
        return rep.ok and all(counts.values()), "%s failed=%s" % (counts, [c.name for c in rep.failed()])
    verdict(9, "trace witnesses, sweep and structure on 100 triples", 60.0, run)


def test_criterion_10_shifts(verdict):
    def run():
        rep = suite_shift(samples=10000, seed=10, specs=50)
        need = {"base-contraction-identity": 1000, "shifted-successor-of-shifted-psi": 1000,
                "chi-agrees": 10000, "full-shift-fails-least-element-0": 1, "psi-differs-at-witness": 1,
                "psi-set-successor-bijection": 1, "AC1": 1}
        thin = {n: rep.count(n) for n, k in need.items() if rep.count(n) < k}
        return rep.ok and not thin, "specs=50 failed=%s thin=%s" % ([c.name for c in rep.failed()], thin)
    verdict(10, "shift suite, full-shift diagnosis and chi collision", 60.0, run)


def test_criterion_11_language(verdict):
    def run():
        rep = suite_lang(samples=1000, seed=11)
        table = dict(infinity_table())
        need = ["term-roundtrip", "int-definition", "delta1-identity", "delta-inverts-multiple"]
        counts = {n: rep.count(n) for n in need}
        ok = rep.ok and all(c >= 1000 for c in counts.values()) and len(table) == 16 and all(table.values())
        return ok, "%s infinity rows=%d failed=%s" % (counts, len(table), [c.name for c in rep.failed()])
    verdict(11, "round trips, definitional identities, infinity table", 60.0, run)
