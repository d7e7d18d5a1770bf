"""Submodels spanned by the omega part and whole copies, and trace sets over them.

A submodel S of an ambient model M is spanned by the omega ladder and a set
of whole copies of Z, optionally with rational coefficients only.  Its Psi set
Psi_S is the set of units at positions of S.

For alpha outside span(S) the trace T_S(alpha) is the set of values
psi(q alpha - g) and s(q alpha - g) for rational q != 0 and g in span(S).
It is infinite, so it is computed symbolically from the part of alpha that no
g can cancel.
"""
from dataclasses import dataclass

from tlog.couple import Model, Element, DomainError, psi, s, is_inf
from tlog.psi_order import Copy, PsiOrder, SCut, OMEGA_LIMIT
from tlog.scalars import Scalar, mpq, norm, is_rational, format_scalar

_HALF = 1 << 63


def _rank_of_key(k):
    return -1 if k < OMEGA_LIMIT else (k >> 64) - 1


def _class_floor(r):
    """Smallest key of the class with ambient rank r (omega is rank -1)."""
    return 0 if r < 0 else (r + 1) << 64


class SubmodelSpec:
    """span over F_S of the omega part and the copies in ``copies``."""

    __slots__ = ("model", "copies", "rational", "_ranks")

    def __init__(self, model, copies=(), rational=False):
        copies = frozenset(copies)
        for c in copies:
            model.order.rank(c)
        self.model = model
        self.copies = copies
        self.rational = bool(rational) and model.radicand is not None
        self._ranks = frozenset(model.order.rank(c) for c in copies)

    def __eq__(self, other):
        return (isinstance(other, SubmodelSpec) and self.model == other.model
                and self.copies == other.copies and self.rational == other.rational)

    def __hash__(self):
        return hash((self.model, self.copies, self.rational))

    def __repr__(self):
        f = ", rational" if self.rational else ""
        return "SubmodelSpec(%s%s)" % (self.copy_list(), f)

    def copy_list(self):
        """S copies in ambient order."""
        return [c for c in self.model.order.copies if c in self.copies]

    def describe(self):
        cs = self.copy_list()
        body = "omega" + "".join(" + " + c for c in cs)
        return body + (" over Q" if self.rational else "")

    # positions and coefficients

    def key_in(self, k):
        return k < OMEGA_LIMIT or ((k >> 64) - 1) in self._ranks

    def rank_in(self, r):
        return r < 0 or r in self._ranks

    def pos_in(self, pos):
        return self.key_in(self.model.order.key(pos))

    def field_has(self, c):
        return is_rational(c) or not self.rational

    def contains(self, x):
        if is_inf(x):
            return False
        return all(self.key_in(k) and self.field_has(c) for k, c in x.terms)

    def in_psi(self, x):
        return not is_inf(x) and x.is_unit() and self.key_in(x.terms[0][0])

    def split(self, x):
        """(cancellable part in span(S), uncancellable remainder u)."""
        keep, rest = [], []
        for k, c in x.terms:
            if not self.key_in(k):
                rest.append((k, c))
            elif self.field_has(c):
                keep.append((k, c))
            else:
                if c.a:
                    keep.append((k, c.a))
                rest.append((k, norm(Scalar(0, c.b, c.d))))
        return Element(self.model, tuple(keep)), Element(self.model, tuple(rest))

    def coerce(self, x):
        """Nearest element of span(S): drop outside terms and irrational parts."""
        out = []
        for k, c in x.terms:
            if self.key_in(k):
                if not self.field_has(c):
                    c = c.a
                if c:
                    out.append((k, c))
        return Element(self.model, tuple(out))

    # growing

    def adjoin(self, cid):
        return SubmodelSpec(self.model, self.copies | {cid}, self.rational)

    def scut_below(self, cid):
        """The s-cut of Psi_S at which the outside copy ``cid`` sits, as SCut over S's order."""
        r = self.model.order.rank(cid)
        return SCut(sum(1 for q in self._ranks if q < r))

    def as_model(self):
        """The submodel as a model in its own right (same copy ids)."""
        return Model(PsiOrder(self.copy_list()), None if self.rational else self.model.radicand)

    def to_own(self, x):
        """Re-express an element of span(S) in :meth:`as_model`."""
        if not self.contains(x):
            raise DomainError("%s is not in the span of %s" % (x, self.describe()))
        return self.as_model().embed(x)

    def from_own(self, x):
        return self.model.embed(x)


class DownSet:
    """A downward closed subset of Psi_S: keys <= K (closed) or < K (open).

    Open sets are normalized so that they have no largest element, which
    means they are unions of whole classes of S and K is the floor of the
    class just above the top one.
    """

    __slots__ = ("spec", "K", "closed")

    def __init__(self, spec, K, closed):
        self.spec = spec
        self.K = K
        self.closed = closed

    @classmethod
    def at_most(cls, spec, key):
        return cls(spec, key, True)

    @classmethod
    def below(cls, spec, key):
        """Psi_S strictly below the position with this key, normalized."""
        if key < OMEGA_LIMIT:
            if key == 0:
                raise DomainError("empty down set")
            return cls(spec, key - 1, True)
        r = _rank_of_key(key)
        low = key & (OMEGA_LIMIT - 1)
        if spec.rank_in(r) and low > 0:
            return cls(spec, key - 1, True)
        top = max([q for q in spec._ranks if q < r], default=-1)
        return cls(spec, _class_floor(top + 1), False)

    def __eq__(self, other):
        return isinstance(other, DownSet) and (self.K, self.closed) == (other.K, other.closed)

    def __repr__(self):
        return "DownSet(%s%s)" % ("<=" if self.closed else "<", self.K)

    def contains_key(self, k):
        if not self.spec.key_in(k):
            return False
        return k <= self.K if self.closed else k < self.K

    def above_all(self, k):
        """Is the position with key k above every member?"""
        return k > self.K if self.closed else k >= self.K

    def union(self, other):
        if self.closed == other.closed:
            return self if self.K >= other.K else other
        a, b = (self, other) if self.closed else (other, self)  # a closed, b open
        return a if a.K >= b.K else b

    def cut_below(self, key):
        """This set intersected with the positions strictly below ``key``."""
        if self.above_all(key):
            return self
        return DownSet.below(self.spec, key)

    def max_position(self):
        if not self.closed:
            return None
        return self.spec.model.order.position(self.K)

    def scut(self):
        """For open sets: the s-cut Psi_S minus this set, as SCut over S's order."""
        if self.closed:
            return None
        top = (self.K >> 64) - 2
        return SCut(sum(1 for q in self.spec._ranks if q <= top))

    def describe(self):
        order = self.spec.model.order
        if self.closed:
            return "[s0, %s]" % order.position(self.K)
        sc = self.scut()
        cl = self.spec.copy_list()
        if sc.j == len(cl):
            return "all of Psi_S"
        return "Psi_S below copy %s" % cl[sc.j]


def _unit(model, pos, c=1):
    return model.unit(pos, c)


def _fmt_pos(pos):
    from tlog.lang import format_position_power
    return format_position_power(pos)


@dataclass
class TraceResult:
    """The trace of alpha over S.

    psi_down / s_down: the psi-part and s-part inside Psi_S.  external: the
    position outside Psi_S that may belong to the trace, with flags saying
    which part contains it.  case is "Case1", "Case2" or "Case3".
    """
    spec: object
    alpha: object
    psi_down: DownSet
    s_down: DownSet
    external: object = None
    psi_ext: bool = False
    s_ext: bool = False
    case: str = ""
    witness_fn: object = None
    info: dict = None

    def __post_init__(self):
        if self.info is None:
            self.info = {}
        ext = self.external is not None and (self.psi_ext or self.s_ext)
        if not ext:
            self.external = None
            self.psi_ext = self.s_ext = False
        D = self.down
        if ext:
            self.case = "Case3"
        elif D.closed:
            self.case = "Case1"
        else:
            self.case = "Case2"

    @property
    def down(self):
        return self.psi_down.union(self.s_down)

    @property
    def max_element(self):
        if self.case != "Case1":
            return None
        return self.down.max_position()

    @property
    def cut(self):
        """Case2/Case3: the s-cut B of Psi_S (SCut over S's order)."""
        if self.case == "Case1":
            return None
        return self.down.scut()

    def _key(self, v):
        model = self.spec.model
        if is_inf(v) or v.model != model or not v.is_unit():
            return None
        return v.terms[0][0]

    def in_psi_part(self, v):
        k = self._key(v)
        if k is None:
            return False
        if self.spec.key_in(k):
            return self.psi_down.contains_key(k)
        return self.psi_ext and self.model_order().position(k) == self.external

    def in_s_part(self, v):
        k = self._key(v)
        if k is None:
            return False
        if self.spec.key_in(k):
            return self.s_down.contains_key(k)
        return self.s_ext and self.model_order().position(k) == self.external

    def contains(self, v):
        return self.in_psi_part(v) or self.in_s_part(v)

    def model_order(self):
        return self.spec.model.order

    def witness(self, kind, pos):
        """(q, g) with psi(q alpha - g) (kind "psi") or s(q alpha - g) (kind "s") at pos."""
        return self.witness_fn(kind, pos)

    def window(self, width=4):
        """Positions of Psi_S near the interesting region, plus the external one."""
        order = self.model_order()
        spec = self.spec
        keys = set(range(0, width + 2))
        for ds in (self.psi_down, self.s_down):
            if not ds.closed:
                continue
            k = ds.K
            for d in range(-width, width + 1):
                kk = k + d
                if kk >= 0 and spec.key_in(kk):
                    keys.add(kk)
        for c in spec.copy_list():
            base = order.key(Copy(c, 0))
            keys.update(base + d for d in range(-width, width + 1))
        out = sorted(k for k in keys if spec.key_in(k))
        pos = [order.position(k) for k in out]
        if self.external is not None:
            pos.append(self.external)
            pos.sort(key=order.key)
        return pos

    def listing(self, width=4):
        """[(position, in psi-part, in s-part)] over :meth:`window`, members only."""
        model = self.spec.model
        rows = []
        for p in self.window(width):
            u = _unit(model, p)
            a, b = self.in_psi_part(u), self.in_s_part(u)
            if a or b:
                rows.append((p, a, b))
        return rows

    def summary(self):
        """Short description in the s^n 0 notation."""
        if self.case == "Case1":
            return "Case1: T = [s0, %s]" % _fmt_pos(self.max_element)
        if self.case == "Case2":
            return "Case2: T = %s" % self.down.describe()
        return "Case3: T = %s plus %s" % (self.down.describe(), _fmt_pos(self.external))

    def to_text(self, width=4):
        """Line format: one header, then `value part q g` lines, re-verifiable by evaluation."""
        from tlog.lang import format_element
        lines = ["trace case=%s over=%s alpha=%s" % (self.case, self.spec.describe(), _fmt_alpha(self.alpha))]
        lines.append("summary %s" % self.summary())
        if self.case == "Case1" and self.down.K < OMEGA_LIMIT:
            order = self.model_order()
            names = [_fmt_pos(order.position(k)) for k in range(self.down.K + 1)]
            lines.append("members {%s}" % ", ".join(names))
        for p, a, b in self.listing(width):
            for kind, flag in (("psi", a), ("s", b)):
                if flag:
                    q, g = self.witness(kind, p)
                    lines.append("member %s %s q=%s g=%s" % (_fmt_pos(p), kind, format_scalar(q), format_element(g)))
        return "\n".join(lines)


def _fmt_alpha(a):
    return str(a) if isinstance(a, Element) else getattr(a, "name", repr(a))


def trace_set(spec, alpha, require_outside=True):
    """The trace of an ambient element alpha over the submodel ``spec``."""
    model = spec.model
    if alpha.model != model:
        raise DomainError("alpha lives in a different model")
    if spec.contains(alpha):
        if require_outside:
            raise DomainError("alpha lies in the span of %s" % spec.describe())
        return None
    order = model.order
    cancel, u = spec.split(alpha)
    k1 = u.terms[0][0]
    pi1 = order.position(k1)
    Qu = u.total()
    in_S1 = spec.key_in(k1)
    if not in_S1:
        # least S-position above pi1: succ in omega or the bottom of a higher S copy
        r1 = _rank_of_key(k1)
        higher = sorted(q for q in spec._ranks if q > r1)
        R_min = order.position(_class_floor(higher[0]) + _HALF) if higher else None
    else:
        R_min = pi1
    R = R_min is not None
    inF = spec.field_has(Qu)
    q_rat_nz = is_rational(Qu) and Qu != 0

    below = DownSet(spec, k1, True) if in_S1 else DownSet.below(spec, k1)
    s0set = DownSet(spec, 0, True)
    top_psi = (R and inF) or Qu == 0
    top_s = (R and inF) or (not R and q_rat_nz)
    psi_down = below if inF else s0set
    s_down = below if inF else s0set
    ext = None
    psi_ext = s_ext = False
    if in_S1:
        if top_psi:
            psi_down = psi_down.union(DownSet(spec, k1 + 1, True))
        if top_s:
            s_down = s_down.union(DownSet(spec, k1 + 1, True))
    else:
        ext = order.succ(pi1)
        psi_ext, s_ext = top_psi, top_s

    one = mpq(1)

    def witness(kind, pos):
        key = order.key(pos)
        v = _unit(model, pos)
        if kind == "psi":
            ok = (psi_down.contains_key(key) if spec.key_in(key) else (psi_ext and pos == ext))
        else:
            ok = (s_down.contains_key(key) if spec.key_in(key) else (s_ext and pos == ext))
        if not ok:
            raise DomainError("%s is not in the %s-part of the trace" % (pos, kind))
        q = one
        if key == 0:
            if kind == "psi":
                g = model.zero() if Qu != 0 else model.w(0)
            else:
                g = model.zero() if Qu != 1 else model.w(0)
        elif key == k1 + 1:
            if kind == "psi":
                g = model.zero() if Qu == 0 else _unit(model, R_min, -Qu)
            elif R:
                g = model.zero() if Qu == 1 else _unit(model, R_min, 1 - Qu)
            else:
                q, g = 1 / Qu, model.zero()
        else:
            prev = order.pred(pos)
            if kind == "psi":
                g = _unit(model, prev, -Qu) if Qu != 0 else _unit(model, prev) - v
            else:
                g = _unit(model, prev, 1 - Qu) if Qu != 1 else _unit(model, prev) - v
        # x = q u + g, so the subtracted element is q (alpha - u) - g
        return q, cancel.scale(q) - g

    return TraceResult(spec, alpha, psi_down, s_down, ext, psi_ext, s_ext, witness_fn=witness,
                       info={"pi1": pi1, "Qu": Qu, "u": u, "R": R_min})


def check_witness(tr, kind, pos):
    """Re-evaluate a witness: returns True when it reproduces the claimed value."""
    q, g = tr.witness(kind, pos)
    if not tr.spec.contains(g):
        return False
    if not isinstance(tr.alpha, Element):
        return tr.alpha.apply(kind, q, g) == _unit(tr.spec.model, pos)
    x = tr.alpha.scale(q) - g
    f = psi if kind == "psi" else s
    return f(x) == _unit(tr.spec.model, pos)


def structure_problems(tr, width=4):
    """Structural facts every trace must satisfy; returns a list of violations."""
    out = []
    model = tr.spec.model
    rows = tr.window(width)
    inside = [p for p in rows if tr.spec.pos_in(p)]
    for name, member in (("psi", tr.in_psi_part), ("s", tr.in_s_part)):
        flags = [member(_unit(model, p)) for p in inside]
        # downward closed: members form a prefix of the sorted window
        if any(b and not a for a, b in zip(flags, flags[1:])):
            out.append("%s-part is not downward closed in Psi_S" % name)
    for p in inside:
        u = _unit(model, p)
        if tr.in_psi_part(u) != tr.in_s_part(u):
            out.append("psi-part and s-part disagree inside Psi_S at %s" % p)
    diff = [p for p in rows if tr.in_psi_part(_unit(model, p)) != tr.in_s_part(_unit(model, p))]
    if len(diff) > 1:
        out.append("psi-part and s-part differ in %d places" % len(diff))
    outside = [p for p in rows if not tr.spec.pos_in(p) and tr.contains(_unit(model, p))]
    if len(outside) > 1:
        out.append("several trace elements outside Psi_S: %s" % outside)
    order = model.order
    for b in outside:
        kb = order.key(b)
        for p in inside:
            m = tr.contains(_unit(model, p))
            if m and order.key(p) > kb or (not m and order.key(p) < kb):
                out.append("outside element %s does not realize the cut at %s" % (b, p))
                break
    if not tr.contains(model.w(0)):
        out.append("s0 missing")
    return out
