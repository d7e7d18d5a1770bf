import random

import pytest
from hypothesis import given, strategies as st

from tlog.couple import Model, INF, is_inf, DomainError
from tlog.psi_order import PsiOrder
from tlog import lang
from tlog.lang import (parse_term, parse_formula, format_term, format_node, format_element, parse_element,
                       evaluate, Env, ParseError, Fn, Delta, Lt, desugar, eval_term)
from tlog.suites import random_term, infinity_table

from conftest import elements

M1 = Model(PsiOrder(["c0"]), 2)


def test_parse_examples():
    t = parse_term("psi(e0 + e1)")
    assert isinstance(t, Fn) and t.name == "psi"
    d = parse_term("d2(e0)")
    assert isinstance(d, Delta) and d.n == 2
    assert isinstance(parse_formula("s(0) < e0 + e0"), Lt)


def test_eval_examples():
    env = Env(Model())
    assert evaluate("psi(e0 + e1)", env) == Model().e(0)
    assert evaluate("p(0)", env) is INF
    assert evaluate("s(0) < e0 + e0", env) is True


def test_sugar_is_marked():
    assert parse_term("int(e0)").sugar and parse_term("chi(e0)").sugar
    assert not parse_term("psi(e0)").sugar


def test_delta_zero_rejected():
    with pytest.raises(ParseError):
        parse_term("d0(e0)")


def test_error_positions():
    with pytest.raises(ParseError) as ei:
        parse_term("psi(e0 + )")
    assert ei.value.pos == 9


def test_unbound_variable():
    with pytest.raises(DomainError):
        evaluate("x + e0", Env(Model()))


def test_quadratic_literals():
    x = parse_element("sqrt(2)*e2 - 1/3*b[c0,-1]", M1)
    assert parse_element(format_element(x), M1) == x
    assert parse_element("sqrt2*e2", M1) == x + M1.beta("c0", -1, lang.mpq(1, 3))


def test_infinity_table_matches_defaults():
    rows = dict(infinity_table())
    assert len(rows) == 16 and all(rows.values())
    env = Env(Model())
    for text in ("-inf", "e0 + inf", "inf + e0", "inf + inf", "psi(0)", "psi(inf)"):
        assert is_inf(evaluate(text, env)), text
    assert evaluate("e0 < inf", env) and not evaluate("inf < inf", env) and evaluate("inf = inf", env)


@given(st.integers(0, 10 ** 6))
def test_term_round_trip(seed):
    rng = random.Random(seed)
    t = random_term(rng, M1)
    text = format_term(t)
    assert parse_term(text) == t
    assert format_term(parse_term(text)) == text


@given(st.integers(0, 10 ** 6))
def test_formula_round_trip(seed):
    rng = random.Random(seed)
    a, b, c = (format_term(random_term(rng, M1, 2)) for _ in range(3))
    f = parse_formula("not (%s < %s) or %s = %s and %s < %s" % (a, b, b, c, a, c))
    assert parse_formula(format_node(f)) == f


@given(elements())
def test_element_round_trip(x):
    assert parse_element(format_element(x), x.model) == x


@given(elements(), st.integers(1, 9))
def test_definitional_identities(x, n):
    env = Env(x.model, {"x": x, "nx": x.scale(n)})
    assert evaluate("int(x) = x - s(x)", env)
    assert evaluate("d1(x) = x", env)
    assert evaluate("d%d(nx)" % n, env) == x
    c = evaluate("chi(x)", env)
    if x.sign() < 0:
        assert c == evaluate("psi(x) - s(psi(x))", env)
    else:
        assert is_inf(c)


@given(st.integers(0, 10 ** 6), elements(model=M1))
def test_desugared_terms_agree(seed, x):
    rng = random.Random(seed)
    t = random_term(rng, M1)
    if "chi" in format_term(t):
        return
    env = Env(M1, {"x": x, "y": x, "z": x})
    assert lang.compare_values(eval_term(t, env), eval_term(desugar(t), env)) == 0
