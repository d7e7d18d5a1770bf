"""Kernel selection: the compiled extension when it imports, else plain Python.

Set TLOG_PURE=1 to force the fallback.
"""
import os

COMPILED = False

if os.environ.get("TLOG_PURE") != "1":
    try:
        from tlog._core import (
            vec_add, vec_neg, vec_sub, vec_scale, vec_total, vec_sign, psi_key, s_key, vec_cmp,
        )
        COMPILED = True
    except ImportError:
        pass

if not COMPILED:
    from tlog._purekernels import (  # noqa: F401
        vec_add, vec_neg, vec_sub, vec_scale, vec_total, vec_sign, psi_key, s_key, vec_cmp,
    )

BACKEND = "compiled" if COMPILED else "python"
