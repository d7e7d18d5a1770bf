import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st, assume

from tlog.couple import Model, DomainError, psi, s
from tlog.psi_order import PsiOrder, Omega, Copy, SCut, AtPosition
from tlog.scalars import Scalar
from tlog.sampling import random_element
from tlog.extensions import (
    SubmodelSpec, trace_set, check_witness, structure_problems, classify_simple_extension, primitive_strip,
    submodel_contains, acl_generate, in_acl, same_cut, separate, same_type_over, adjoin_class_cut,
    tournant_pair, HypothesisError, PseudolimitSpec, PseudolimitExtension, StabilizationError,
    adjoin_pseudolimit, pc_check, pseudolimit_trace, harmonic_example, copy_chain_example,
    EmbeddingError, embed_universal,
)

from conftest import rationals

F = Fraction
ROOT2 = Scalar.sqrt(2)


def prime_span(model, rational=False):
    return SubmodelSpec(model, [], rational)


# membership and closure

def test_span_membership():
    m = Model(radicand=2)
    assert submodel_contains(prime_span(m), m.e(5))
    assert not submodel_contains(prime_span(m, rational=True), m.e(2, ROOT2))


def test_acl_of_two_copy_sum_adjoins_both_copies():
    m = Model(PsiOrder(["c0", "c1"]))
    gen = acl_generate(prime_span(m), [m.beta("c0", 0) + m.beta("c1", 0)])
    assert set(gen.spec.copies) == {"c0", "c1"}


def test_steinitz_exchange_fails():
    m = Model(PsiOrder(["c0", "c1"]))
    S = prime_span(m)
    a = m.beta("c0", 0)
    b = a + m.beta("c1", 0)
    assert in_acl(S, [b], a)
    assert not in_acl(S, [a], b)


# traces

def test_example_one_trace():
    m = Model(radicand=2)
    tr = trace_set(prime_span(m, rational=True), m.e(2, ROOT2))
    assert tr.case == "Case1"
    assert tr.max_element == m.w(2).unit_position() or tr.max_element == Omega(2)
    members = [p for p, a, b in tr.listing(6)]
    assert members == [Omega(0), Omega(1), Omega(2)]
    for p, a, b in tr.listing(6):
        for kind, flag in (("psi", a), ("s", b)):
            if flag:
                assert check_witness(tr, kind, p)


def _sweep_values(model, S_elems, alpha, qs):
    seen = set()
    for q in qs:
        for g in S_elems:
            x = alpha.scale(q) - g
            if x:
                seen.add(psi(x).unit_position())
                seen.add(s(x).unit_position())
    return seen


def test_single_unit_trace_against_brute_force():
    m = Model(PsiOrder(["c0"]))
    S = prime_span(m)
    alpha = m.beta("c0", 0)
    tr = trace_set(S, alpha)
    assert tr.case == "Case3" and tr.external == Copy("c0", 1)
    # grid of (q, g): g a small combination of s0..s^5 0
    coeffs = (-1, 0, 1, 2)
    grid = [m.zero()]
    for i in range(5):
        for j in range(i + 1, 6):
            for a in coeffs:
                for b in coeffs:
                    grid.append(m.w(i, a) + m.w(j, b))
    seen = _sweep_values(m, grid, alpha, (1, -1, 2, F(1, 2)))
    window = {Omega(n) for n in range(5)} | {Copy("c0", 1)}
    listed = {p for p, a, b in tr.listing(4)} | {tr.external}
    assert seen & window == listed & window
    assert all(tr.contains(m.unit(p)) for p in seen)


def test_harmonic_pseudolimit_trace_is_all_of_psi():
    spec = harmonic_example(20)
    ext = adjoin_pseudolimit(spec)
    tr = pseudolimit_trace(prime_span(spec.model), ext)
    assert tr.case == "Case2"
    assert tr.summary() == "Case2: T = all of Psi_S"


@given(st.integers(0, 3), st.integers(0, 1000))
def test_trace_structure_on_random_triples(m, seed):
    rng = random.Random(seed)
    model = Model(PsiOrder(["c%d" % i for i in range(m)]), rng.choice((None, 2)))
    S = SubmodelSpec(model, [c for c in model.copies if rng.random() < 0.5], rng.random() < 0.5)
    alpha = random_element(rng, model, max_terms=4, irrational=0.4)
    assume(not S.contains(alpha))
    tr = trace_set(S, alpha)
    assert structure_problems(tr, 3) == []
    for p, a, b in tr.listing(3):
        for kind, flag in (("psi", a), ("s", b)):
            if flag:
                assert check_witness(tr, kind, p)


# classification

def test_example_one_classification():
    m = Model(radicand=2)
    rep = classify_simple_extension(prime_span(m, rational=True), m.e(2, ROOT2))
    assert rep.terminal == "SpanPlusQAlpha" and rep.rho == []


def test_copy_difference_adjoins_one_copy():
    m = Model(PsiOrder(["c0"]))
    rep = classify_simple_extension(prime_span(m), m.beta("c0", 1) - m.beta("c0", 0))
    assert rep.terminal == "InSpan" and rep.copies == ["c0"]


def test_copy_chain_classification():
    spec = copy_chain_example(3)
    ext = adjoin_pseudolimit(spec)
    rep = classify_simple_extension(prime_span(spec.model), ext)
    assert rep.copies == ["c0", "c1", "c2"]
    assert all(st_.trace.case == "Case3" for st_ in rep.steps)
    assert [c.j for c in rep.cuts] == [0, 1, 2]


def test_primitive_strip_examples():
    m = Model(PsiOrder(["c0", "c1", "c2"]))
    S = prime_span(m)
    a = sum((m.beta("c%d" % j, 1) - m.beta("c%d" % j, 0) for j in range(2)), m.zero())
    assert sorted(primitive_strip(S, a)) == ["c0", "c1"]
    assert primitive_strip(S, m.beta("c0", 0)) == ["c0"]
    assert primitive_strip(S, m.e(3, 5) + m.beta("c1", 2)) == ["c1"]


def test_primitive_strip_rejects_span_elements():
    m = Model(PsiOrder(["c0"]))
    with pytest.raises(DomainError):
        primitive_strip(prime_span(m), m.e(2))


@given(st.integers(0, 10 ** 6))
def test_classifier_final_span_and_cut_order(seed):
    rng = random.Random(seed)
    model = Model(PsiOrder(["c%d" % i for i in range(3)]))
    S = SubmodelSpec(model, [c for c in model.copies if rng.random() < 0.4])
    alpha = random_element(rng, model, max_terms=5)
    rep = classify_simple_extension(S, alpha)
    assert rep.final.contains(alpha) == (rep.terminal == "InSpan")
    js = [c.j for c in rep.cuts]
    assert js == sorted(js)
    if rep.terminal != "InSpan":
        assert trace_set(rep.final, alpha).case in ("Case1", "Case2")


# cuts and types

def _group_closed(S, x):
    return not S.contains(x) and trace_set(S, x).case != "Case3"


@given(st.integers(0, 10 ** 6))
def test_same_cut_agrees_with_separator(seed):
    rng = random.Random(seed)
    model = Model(PsiOrder(["c0"]), 2)
    S = SubmodelSpec(model, ["c0"] if rng.random() < 0.5 else [], True)
    a = random_element(rng, model, irrational=0.6)
    b = a + random_element(rng, model, irrational=0.6)
    assume(_group_closed(S, a) and _group_closed(S, b))
    g = separate(S, a, b)
    if same_cut(S, a, b):
        assert g is None
        # no element of a small grid of the span separates them either
        lo, hi = sorted((a, b))
        for n in range(6):
            for c in (-2, -1, F(-1, 2), F(1, 2), 1, 2):
                h = lo + model.w(n, c)
                if S.contains(h):
                    assert not (lo < h < hi)
    else:
        assert g is not None and S.contains(g)
        lo, hi = sorted((a, b))
        assert lo < g < hi


def test_same_type_examples():
    m = Model(radicand=2)
    S = prime_span(m, rational=True)
    a = m.e(2, ROOT2)
    assert same_type_over(S, a, a)
    x, y = tournant_pair()
    assert not same_type_over(SubmodelSpec(Model()), x, y)
    x2, _ = tournant_pair()
    assert same_type_over(SubmodelSpec(Model()), x, x2)


def test_class_cut_hypotheses():
    m = Model()
    S = SubmodelSpec(m)
    with pytest.raises(HypothesisError):
        adjoin_class_cut(S, AtPosition(Omega(1), "right"), m.e(0, 2))
    with pytest.raises(HypothesisError):
        adjoin_class_cut(S, AtPosition(Omega(1), "right"), m.w(3))


@given(st.integers(0, 10 ** 6), rationals.filter(bool))
def test_class_cut_sign_is_dominated(seed, q):
    rng = random.Random(seed)
    m = Model()
    ext = adjoin_class_cut(SubmodelSpec(m), AtPosition(Omega(1), "right"), m.w(1))
    g = random_element(rng, m)
    assume(g and psi(g) <= m.w(1))
    assert ext.element(g, q).sign() == g.sign()
    # the generator alone: its sign is that of q
    assert ext.element(m.zero(), q).sign() == (1 if q > 0 else -1)


# pseudolimits

def test_harmonic_pc_values():
    spec = harmonic_example(20)
    rep = pc_check(spec, 20)
    assert rep.ok
    m = spec.model
    for (r, t), v in rep.values.items():
        assert v == sum((m.e(i) for i in range(r + 2)), m.zero())


def test_pc_check_rejects_constant_increments():
    m = Model()
    spec = PseudolimitSpec(m, lambda n: m.w(0, n), lambda n: m.w(0), 1, 6)
    assert not pc_check(spec, 6).ok
    with pytest.raises(DomainError):
        adjoin_pseudolimit(spec)


def test_stabilization_failure_is_reported():
    spec = harmonic_example(10)
    ext = PseudolimitExtension(spec)
    with pytest.raises(StabilizationError):
        ext.psi(1, -harmonic_example(40).a(30))


@given(rationals.filter(bool), st.integers(0, 10 ** 6))
def test_pseudolimit_values_stable_under_bound(q, seed):
    rng = random.Random(seed)
    spec = harmonic_example(12)
    g = random_element(rng, spec.model)
    e1, e2 = PseudolimitExtension(spec), PseudolimitExtension(spec.with_bound(24))
    try:
        v1 = e1.psi(q, g)
    except StabilizationError:
        return
    assert v1 == e2.psi(q, g)
    assert e1.sign(q, g) == e2.sign(q, g)


def test_chain_increments():
    spec = copy_chain_example(10, max_n=8)
    m = spec.model
    for mm in range(9):
        for n in range(mm + 1, 9):
            assert psi(spec.a(n) - spec.a(mm)) == m.beta("c%d" % (mm + 1), 1)


# embeddings

def test_universal_embedding():
    base = Model()
    target = Model(PsiOrder(["c0", "c1"]))
    src, ids, emb = embed_universal(base, [SCut(0)], target, {"c0": Copy("c1", 3)})
    assert emb.verify(100, seed=1) == []
    assert emb(src.beta(ids[0], 0)) == target.beta("c1", 3)
    _, _, emb2 = embed_universal(base, [SCut(0)], target, {"c0": Copy("c1", 4)})
    assert emb2(src.beta(ids[0], 0)) != emb(src.beta(ids[0], 0))


def test_embedding_rejects_bad_families():
    base = Model(PsiOrder(["c0"]))
    target = Model(PsiOrder(["c1", "c0", "c2"]))
    with pytest.raises(EmbeddingError) as ei:
        embed_universal(base, [SCut(0)], target, {"n": Copy("c2", 0)}, fresh=["n"])
    assert ei.value.clause == "cut"
    with pytest.raises(EmbeddingError) as ei:
        embed_universal(base, [SCut(0)], target, {"n": Omega(50)}, fresh=["n"])
    assert ei.value.clause == "cut"
    with pytest.raises(EmbeddingError) as ei:
        embed_universal(base, [SCut(0)], target, {"n": lambda k: Copy("c1", 2 * k)}, fresh=["n"])
    assert ei.value.clause == "successor"
    _, _, emb = embed_universal(base, [SCut(0)], target, {"n": Copy("c1", 0)}, fresh=["n"])
    assert emb.verify(100) == []
