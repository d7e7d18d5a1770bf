"""Sparse-vector kernels in plain Python.

A vector is a tuple of (key, coeff) pairs sorted by key with no zero
coefficients.  Keys order positions of Psi; coefficients are gmpy2 rationals
or quadratic Scalars.  These functions mirror the compiled ones in _core.
"""
from tlog.scalars import Scalar, csign

_Scalar = Scalar


def _norm(c):
    if type(c) is _Scalar and not c.b:
        return c.a
    return c


def vec_add(u, v):
    if not u:
        return v
    if not v:
        return u
    out = []
    i = j = 0
    nu, nv = len(u), len(v)
    while i < nu and j < nv:
        ku, cu = u[i]
        kv, cv = v[j]
        if ku < kv:
            out.append(u[i])
            i += 1
        elif kv < ku:
            out.append(v[j])
            j += 1
        else:
            c = _norm(cu + cv)
            if c:
                out.append((ku, c))
            i += 1
            j += 1
    if i < nu:
        out.extend(u[i:])
    if j < nv:
        out.extend(v[j:])
    return tuple(out)


def vec_neg(u):
    return tuple((k, -c) for k, c in u)


def vec_sub(u, v):
    if not v:
        return u
    return vec_add(u, vec_neg(v))


def vec_scale(u, c):
    if not c:
        return ()
    return tuple((k, _norm(x * c)) for k, x in u)


def vec_total(u):
    """Sum of the coefficients."""
    t = 0
    for _, c in u:
        t = t + c
    return _norm(t)


def vec_sign(u):
    """Sign of the element: sign of the coefficient sum, or minus the sign of the
    least coefficient when the sum vanishes."""
    if not u:
        return 0
    s = csign(vec_total(u))
    if s:
        return s
    return -csign(u[0][1])


def psi_key(u):
    """Key of the Psi position that psi(u) is the unit of; None for psi(0)."""
    if not u:
        return None
    if vec_total(u):
        return 0
    return u[0][0] + 1


def s_key(u):
    """Key of the Psi position that s(u) is the unit of."""
    if u and vec_total(u) == 1:
        return u[0][0] + 1
    return 0


def vec_cmp(u, v):
    return vec_sign(vec_sub(u, v))
