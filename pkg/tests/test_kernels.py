import os
import subprocess
import sys

import pytest
from hypothesis import given

from tlog import _purekernels as pure
from tlog import kernels

from conftest import elements

core = pytest.importorskip("tlog._core")


@given(elements(), elements())
def test_backends_agree(x, y):
    u, v = x.terms, y.terms
    for name in ("vec_add", "vec_sub", "vec_cmp"):
        assert getattr(pure, name)(u, v) == getattr(core, name)(u, v)
    for name in ("vec_neg", "vec_sign", "vec_total", "s_key"):
        assert getattr(pure, name)(u) == getattr(core, name)(u)
    if u:
        assert pure.psi_key(u) == core.psi_key(u)
    assert pure.vec_scale(u, 3) == core.vec_scale(u, 3)


def test_compiled_backend_selected_by_default():
    assert kernels.BACKEND == "compiled"


def test_fallback_selected_by_environment():
    env = dict(os.environ, TLOG_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import tlog; print(tlog.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_fallback_passes_axioms():
    code = ("from tlog.axioms import axiom_check; from tlog.couple import Couple, Model; "
            "from tlog.psi_order import PsiOrder; "
            "r = axiom_check(Couple(Model(PsiOrder(['c0','c1']))), samples=200, seed=1); print(r.ok)")
    env = dict(os.environ, TLOG_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "True"
