import os
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st, HealthCheck

from tlog.couple import Model
from tlog.psi_order import PsiOrder, Omega, Copy
from tlog.scalars import Scalar

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

MODELS = [Model(), Model(PsiOrder(["c0"])), Model(PsiOrder(["c0", "c1"])), Model(PsiOrder(["c0", "c1", "c2"]), 2)]

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
nonzero_rationals = rationals.filter(bool)


@st.composite
def scalars(draw, d=2):
    a = draw(rationals)
    b = draw(rationals) if d else 0
    return Scalar(a, b, d if b else None)


@st.composite
def positions(draw, model, window=5):
    cs = model.copies
    if cs and draw(st.booleans()):
        return Copy(draw(st.sampled_from(cs)), draw(st.integers(-window, window)))
    return Omega(draw(st.integers(0, 2 * window)))


@st.composite
def elements(draw, model=None, max_terms=4, irrational=True):
    model = model if model is not None else draw(st.sampled_from(MODELS))
    n = draw(st.integers(0, max_terms))
    pairs = []
    for _ in range(n):
        pos = draw(positions(model))
        if model.radicand and irrational and draw(st.booleans()):
            c = draw(scalars(model.radicand))
        else:
            c = draw(rationals)
        pairs.append((pos, c))
    x = model.from_terms(pairs)
    # pin the coefficient sum to 0 or 1 often, where psi and s branch
    if x.terms and draw(st.integers(0, 2)) < 2:
        target = draw(st.sampled_from((0, 1)))
        lead = model.order.position(x.terms[-1][0])
        x = x + model.unit(lead, Fraction(target) - x.total())
    return x


@st.composite
def omega_vectors(draw, length=8):
    """e-basis coordinates (r_0, ..., r_{n-1}) as Fractions."""
    n = draw(st.integers(1, length))
    return [draw(st.one_of(st.just(Fraction(0)), st.just(Fraction(1)), rationals)) for _ in range(n)]


@pytest.fixture
def prime():
    return Model()


@pytest.fixture
def two_copies():
    return Model(PsiOrder(["c0", "c1"]))
