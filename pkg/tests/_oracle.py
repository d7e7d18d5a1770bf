"""Independent reference implementations on the omega part, written from the
coordinate formulas in the e-basis (r_0, r_1, ...).  They share no code with
the package: conversion to positions uses unit(w_n) = e_0 + ... + e_n."""
from fractions import Fraction

from tlog.psi_order import Omega


def trim(r):
    r = [x if hasattr(x, "sign") else Fraction(x) for x in r]
    while r and r[-1] == 0:
        r.pop()
    return r


def lex_sign(r):
    for x in r:
        if x:
            return 1 if x > 0 else -1
    return 0


def ones(n):
    return [Fraction(1)] * n


def psi(r):
    """(0,..,0, r_n != 0, ...) -> (1, ..., 1) with n+1 ones; None for zero."""
    for n, x in enumerate(r):
        if x:
            return ones(n + 1)
    return None


def _first_not_one(r):
    n = 0
    while n < len(r) and r[n] == 1:
        n += 1
    return n


def s(r):
    return ones(_first_not_one(r) + 1)


def integral(r):
    n = _first_not_one(r)
    out = [Fraction(0)] * n + [(r[n] if n < len(r) else Fraction(0)) - 1] + list(r[n + 1:])
    return trim(out)


def chi(r):
    """Defined for negative r: (0,..,0, r_n < 0, ...) -> n+1 zeros then -1."""
    for n, x in enumerate(r):
        if x:
            assert x < 0
            return [Fraction(0)] * (n + 1) + [Fraction(-1)]
    raise ValueError("chi needs a negative element")


def to_element(model, r):
    """Position-basis element: coefficient of w_n is r_n - r_{n+1}."""
    r = trim(r)
    pairs = []
    for n in range(len(r)):
        nxt = r[n + 1] if n + 1 < len(r) else 0
        if r[n] - nxt:
            pairs.append((Omega(n), r[n] - nxt))
    return model.from_terms(pairs)
