# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse-vector kernels; same contract as tlog._purekernels."""
from tlog.scalars import Scalar

cdef object _Scalar = Scalar


cdef inline object _norm(object c):
    if type(c) is _Scalar and not c.b:
        return c.a
    return c


cdef inline int _csign(object c):
    if type(c) is _Scalar:
        return c.sign()
    if c > 0:
        return 1
    if c < 0:
        return -1
    return 0


def vec_add(tuple u, tuple v):
    cdef Py_ssize_t i = 0, j = 0
    cdef Py_ssize_t nu = len(u), nv = len(v)
    cdef tuple pu, pv
    cdef object ku, kv, c
    if nu == 0:
        return v
    if nv == 0:
        return u
    out = []
    while i < nu and j < nv:
        pu = <tuple>u[i]
        pv = <tuple>v[j]
        ku = pu[0]
        kv = pv[0]
        if ku < kv:
            out.append(pu)
            i += 1
        elif kv < ku:
            out.append(pv)
            j += 1
        else:
            c = _norm(pu[1] + pv[1])
            if c:
                out.append((ku, c))
            i += 1
            j += 1
    while i < nu:
        out.append(u[i])
        i += 1
    while j < nv:
        out.append(v[j])
        j += 1
    return tuple(out)


def vec_neg(tuple u):
    return tuple([(p[0], -p[1]) for p in u])


def vec_sub(tuple u, tuple v):
    if len(v) == 0:
        return u
    return vec_add(u, vec_neg(v))


def vec_scale(tuple u, object c):
    if not c:
        return ()
    return tuple([(p[0], _norm(p[1] * c)) for p in u])


cpdef object vec_total(tuple u):
    cdef object t = 0
    cdef tuple p
    for p in u:
        t = t + p[1]
    return _norm(t)


def vec_sign(tuple u):
    cdef int s
    if len(u) == 0:
        return 0
    s = _csign(vec_total(u))
    if s:
        return s
    return -_csign((<tuple>u[0])[1])


def psi_key(tuple u):
    if len(u) == 0:
        return None
    if vec_total(u):
        return 0
    return (<tuple>u[0])[0] + 1


def s_key(tuple u):
    if len(u) and vec_total(u) == 1:
        return (<tuple>u[0])[0] + 1
    return 0


def vec_cmp(tuple u, tuple v):
    return vec_sign(vec_sub(u, v))
