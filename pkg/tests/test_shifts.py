import random

import pytest
from hypothesis import given, settings, strategies as st

from tlog.couple import Model, Couple, psi, s, chi, INF
from tlog.psi_order import PsiOrder, SCut
from tlog.shifts import (ShiftSpec, ShiftError, ShiftedCouple, shift_check, PrecontractionView,
                         precontraction_chi, precontraction_check, default_collision_shift, chi_collision_demo)
from tlog.suites import random_shift

from conftest import elements

TWO = Model(PsiOrder(["c0", "c1"]))


def test_collision_shift_passes_checks():
    rep = shift_check(default_collision_shift(), samples=300, seed=2)
    assert rep.ok, rep.failed()


def test_full_shift_breaks_least_element():
    m = Model()
    rep = shift_check(ShiftSpec(m, SCut.full(), -m.w(0)), samples=100, seed=0)
    bad = [c for c in rep.clauses.values() if c.name == "psi-set-positive" and c.failures]
    assert bad and "least element is 0" in str(bad[0].example)


def test_eps_outside_cut_rejected():
    with pytest.raises(ShiftError):
        ShiftSpec(TWO, SCut(1), TWO.beta("c0", 0) - TWO.beta("c0", 1))
    with pytest.raises(ShiftError):
        ShiftSpec(TWO, SCut(1), TWO.zero())


def test_precontraction_of_e0():
    m = Model()
    view = PrecontractionView(Couple(m))
    assert precontraction_chi(view, m.e(0)) == m.e(1)
    assert precontraction_chi(view, -m.e(0)) == -m.e(1)
    assert precontraction_chi(view, m.zero()) == m.zero()


def test_collision_demo():
    rep = chi_collision_demo(samples=2000, seed=4)
    assert rep.ok
    names = {c.name for c in rep.clauses.values()}
    assert {"chi-agrees", "psi-differs-at-witness"} <= names


def test_mutated_precontraction_detected():
    m = TWO
    x0 = m.beta("c0", 0) - m.beta("c0", 2)
    base = PrecontractionView(Couple(m))

    def bad(x):
        return base.chi(x) + m.w(0) if x == x0 else base.chi(x)

    rep = precontraction_check(PrecontractionView(Couple(m), bad), samples=50, seed=0, probes=[x0])
    assert not rep.ok


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_random_shift_specs_pass(seed):
    spec = random_shift(random.Random(seed))
    rep = shift_check(spec, samples=30, seed=seed)
    assert rep.ok, rep.failed()


@given(elements(model=TWO))
def test_contraction_invariant_under_shift(x):
    sc = ShiftedCouple(default_collision_shift(TWO))
    if x.sign() < 0:
        assert sc.chi(x) == chi(x)
        assert chi(x) + sc.psi(chi(x)) == sc.psi(x)


@given(elements(model=TWO))
def test_shifted_successor_solves_its_equation(x):
    sc = ShiftedCouple(default_collision_shift(TWO))
    b = sc.s(x)
    assert sc.psi(x - b) == b


@given(elements(model=TWO))
def test_shifted_psi_definition(x):
    spec = default_collision_shift(TWO)
    sc = ShiftedCouple(spec)
    if not x:
        assert sc.psi(x) is INF
        return
    v = psi(x)
    inB = TWO.order.in_scut(v.unit_position(), spec.B)
    assert sc.psi(x) == (v + spec.eps if inB else v)
    if inB:
        assert sc.s(sc.psi(x)) == s(v) + spec.eps


@given(elements(model=TWO))
def test_precontraction_is_odd(x):
    view = PrecontractionView(ShiftedCouple(default_collision_shift(TWO)))
    assert view.chi(-x) == -view.chi(x)
