"""Pseudolimits of pc-sequences, computed lazily from a generator.

The limit lambda is never materialized.  Questions about q*lambda + g are
answered by walking the sequence until the answer stops depending on the
unknown tail: with d = alpha_N - g', the value psi(lambda - g') is psi(d)
when psi(d) < v_N, v_N when psi(d) > v_N or d = 0, and undecided otherwise.
"""
from dataclasses import dataclass, field

from tlog.couple import Model, DomainError, psi, s, is_inf
from tlog.psi_order import Copy, SCut
from tlog.scalars import mpq, is_rational
from tlog.submodel import DownSet, TraceResult, trace_set, _class_floor, _rank_of_key


class StabilizationError(DomainError):
    """The sequence did not decide a value within the configured bound."""


@dataclass
class PseudolimitSpec:
    """A pc-sequence with its prescribed increments.

    alpha(N) -> Element, v(N) -> unit Element or None (None: above every
    position of the ambient), sigma(N) -> sign of lambda - alpha_N.
    Indices run over start..max_n.
    """
    model: Model
    alpha: object
    v: object
    sigma: object = 1
    max_n: int = 32
    start: int = 0
    name: str = "lambda"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def a(self, n):
        key = ("a", n)
        if key not in self._cache:
            x = self.alpha(n)
            if x.model != self.model:
                x = self.model.embed(x)
            self._cache[key] = x
        return self._cache[key]

    def vv(self, n):
        key = ("v", n)
        if key not in self._cache:
            x = self.v(n)
            if x is not None:
                if x.model != self.model:
                    x = self.model.embed(x)
                if not x.is_unit():
                    raise DomainError("increment v_%d is not a Psi element" % n)
            self._cache[key] = x
        return self._cache[key]

    def sg(self, n):
        return self.sigma(n) if callable(self.sigma) else self.sigma

    def indices(self):
        return range(self.start, self.max_n + 1)

    def with_bound(self, max_n):
        return PseudolimitSpec(self.model, self.alpha, self.v, self.sigma, max_n, self.start, self.name)


def _vkey(v):
    return None if v is None else v.terms[0][0]


def _below_v(key, vkey):
    return vkey is None or key < vkey


class PseudolimitExtension:
    """The structure generated over the ambient by a pseudolimit of ``spec``."""

    def __init__(self, spec):
        self.spec = spec
        self.model = spec.model
        self.name = spec.name
        self._top = None

    # the resolution loop

    def _resolve(self, spec, gp):
        """(N, d) deciding lambda - gp: d is None when lambda - alpha_N dominates."""
        for n in spec.indices():
            d = spec.a(n) - gp
            if not d:
                if spec.vv(n) is None:
                    break
                return n, None
            pk = psi(d).terms[0][0]
            vk = _vkey(spec.vv(n))
            if vk is None or pk < vk:
                return n, d
            if pk > vk:
                return n, None
        raise StabilizationError("%s: no decision for %s within index %d" % (self.name, gp, spec.max_n))

    def psi_minus(self, gp, spec=None):
        """psi(lambda - gp)."""
        spec = spec or self.spec
        n, d = self._resolve(spec, gp)
        return psi(d) if d is not None else spec.vv(n)

    def sign_minus(self, gp, spec=None):
        spec = spec or self.spec
        n, d = self._resolve(spec, gp)
        return d.sign() if d is not None else spec.sg(n)

    # q lambda + g

    def _check(self, q, g):
        if not is_rational(q):
            raise DomainError("the coefficient of the limit must be rational")
        if g.model != self.model:
            g = self.model.embed(g)
        return mpq(q), g

    def sign(self, q, g):
        q, g = self._check(q, g)
        if not q:
            return g.sign()
        sg = self.sign_minus(-g / q)
        return sg if q > 0 else -sg

    def psi(self, q, g):
        q, g = self._check(q, g)
        if not q:
            return psi(g)
        return self.psi_minus(-g / q)

    def _top_copy(self):
        """Ambient with one extra copy above everything, and its bottom unit."""
        if self._top is None:
            order = self.model.order
            new, _, ids = order.insert_copies([SCut(order.m)])
            big = self.model.with_order(new)
            sp = self.spec
            lifted = PseudolimitSpec(big, lambda n: big.embed(sp.a(n)),
                                     lambda n: None if sp.vv(n) is None else big.embed(sp.vv(n)),
                                     sp.sigma, sp.max_n, sp.start, sp.name)
            self._top = (big, big.beta(ids[0], 0), lifted)
        return self._top

    def s(self, q, g):
        """s(q lambda + g) = psi(q lambda + g - t) for t above all psi values."""
        q, g = self._check(q, g)
        if not q:
            return s(g)
        big, t, lifted = self._top_copy()
        gp = (t - big.embed(g)) / q
        v = self.psi_minus(gp, lifted)
        if v.terms[0][0] >= _class_floor(self.model.order.m):
            raise DomainError("s value escaped the ambient")
        return self.model.unit(big.order.position(v.terms[0][0]))

    def apply(self, kind, q, g):
        """psi or s of q lambda - g."""
        return self.psi(q, -g) if kind == "psi" else self.s(q, -g)

    def describe(self):
        return "pseudolimit %s of a pc-sequence in %r" % (self.name, self.model)


def adjoin_pseudolimit(spec, check=8):
    """Validate a prefix and return the extension; rejects non-pc prefixes."""
    if check:
        rep = pc_check(spec, min(check, spec.max_n))
        if not rep.ok:
            raise DomainError("not a pc-sequence: %s" % rep.failures[0])
    return PseudolimitExtension(spec)


@dataclass
class PcReport:
    n: int
    values: dict
    failures: list

    @property
    def ok(self):
        return not self.failures

    def lines(self):
        from tlog.lang import format_element
        out = ["pc-check n=%d %s" % (self.n, "ok" if self.ok else "FAILED")]
        for (r, t), v in sorted(self.values.items()):
            out.append("psi(a%d - a%d) = %s" % (r, t, format_element(v)))
        out.extend("failure %s" % f for f in self.failures)
        return out


def pc_check(spec, n):
    """Check the pc inequality on indices start..n and the increments v_r."""
    idx = list(range(spec.start, n + 1))
    values = {}
    fails = []
    for i, r in enumerate(idx):
        for t in idx[i + 1:]:
            values[(r, t)] = psi(spec.a(r) - spec.a(t))
    for i, r in enumerate(idx):
        for j in range(i + 1, len(idx)):
            for k in range(j + 1, len(idx)):
                a, b = values[(r, idx[j])], values[(idx[j], idx[k])]
                if is_inf(a) or is_inf(b) or not a < b:
                    fails.append("psi(a%d-a%d) < psi(a%d-a%d) fails" % (r, idx[j], idx[j], idx[k]))
    for (r, t), val in values.items():
        v = spec.vv(r)
        if v is not None and val != v:
            fails.append("psi(a%d-a%d) = %s differs from v_%d = %s" % (r, t, val, r, v))
    prev = None
    for r in idx:
        v = spec.vv(r)
        if prev is not None and v is not None and not prev < v:
            fails.append("increments not strictly increasing at %d" % r)
        prev = v
    return PcReport(n, values, fails)


# the trace of a pseudolimit

def pseudolimit_trace(sub, ext):
    """Trace of lambda over the submodel ``sub`` (which must live in the ambient).

    Union over N of the trace of alpha_N cut below v_N, where alpha_N in the
    span contributes all of Psi_S below v_N.  When the last index still moves
    the bound, the set is extended to the whole class of v_max (truncation).
    """
    spec = ext.spec
    model = sub.model
    if model != spec.model:
        raise DomainError("submodel and pseudolimit live in different models")
    psi_down = s_down = DownSet(sub, 0, True)
    external = None
    psi_ext = s_ext = False
    binding = False
    parts = []
    for n in spec.indices():
        a, v = spec.a(n), spec.vv(n)
        vk = _vkey(v)
        if sub.contains(a):
            tr = None
            if vk is None:
                top = max(sub._ranks, default=-1)
                D = DownSet(sub, _class_floor(top + 1), False)
            else:
                D = DownSet.below(sub, vk)
            pd, sd = D, D
            binding = vk is not None
        else:
            tr = trace_set(sub, a)
            pd, sd = tr.psi_down, tr.s_down
            binding = False
            if vk is not None:
                cpd, csd = pd.cut_below(vk), sd.cut_below(vk)
                binding = cpd != pd or csd != sd
                pd, sd = cpd, csd
            if tr.external is not None and _below_v(model.order.key(tr.external), vk):
                if external is not None and external != tr.external:
                    raise DomainError("two external trace elements: %s and %s" % (external, tr.external))
                external = tr.external
                psi_ext = psi_ext or tr.psi_ext
                s_ext = s_ext or tr.s_ext
        parts.append((n, tr, pd, sd))
        psi_down, s_down = psi_down.union(pd), s_down.union(sd)
    truncated = False
    if binding:
        v = spec.vv(spec.max_n)
        r = _rank_of_key(v.terms[0][0])
        top = max([q for q in sub._ranks if q <= r], default=-1)
        whole = DownSet(sub, _class_floor(top + 1), False)
        psi_down, s_down = psi_down.union(whole), s_down.union(whole)
        truncated = True

    def witness(kind, pos):
        key = model.order.key(pos)
        for n, tr, pd, sd in parts:
            v = spec.vv(n)
            vk = _vkey(v)
            if not _below_v(key, vk):
                continue
            if tr is None:
                if not (pd if kind == "psi" else sd).contains_key(key):
                    continue
                a = spec.a(n)
                u = model.unit(pos)
                if key == 0:
                    g = model.w(0) if kind == "psi" else model.zero()
                else:
                    prev = model.unit(model.order.pred(pos))
                    g = prev - u if kind == "psi" else prev
                # lambda - (a - g) = (lambda - a) + g and psi of g is below v_N
                return mpq(1), a - g
            try:
                return tr.witness(kind, pos)
            except DomainError:
                continue
        raise DomainError("%s is not reached by the %s-part within index %d" % (pos, kind, spec.max_n))

    info = {"truncated": truncated, "max_n": spec.max_n}
    return TraceResult(sub, ext, psi_down, s_down, external, psi_ext, s_ext, witness_fn=witness, info=info)


# the worked families

def harmonic_example(max_n=24):
    """alpha_N = sum_{i<=N} e_i/(1+i) in the prime model; v_N = s^{N+2}0."""
    model = Model()

    def alpha(n):
        return model.from_vector([mpq(1, 1 + i) for i in range(n + 1)])

    return PseudolimitSpec(model, alpha, lambda n: model.w(n + 1), 1, max_n, 0, "harmonic")


def copy_chain_example(m=10, max_n=None):
    """alpha_n = sum_{j<=n} (b[c_j,1] - b[c_j,0]) in an ambient with m copies.

    v_n = b[c_{n+1},1]; the last index has no next copy, so v is None there.
    """
    from tlog.psi_order import PsiOrder
    if m < 1:
        raise DomainError("the copy chain needs at least one copy")
    ids = ["c%d" % j for j in range(m)]
    model = Model(PsiOrder(ids))
    last = m - 1 if max_n is None else min(max_n, m - 1)

    def alpha(n):
        return model.from_terms([(Copy(ids[j], k), c) for j in range(n + 1) for k, c in ((1, 1), (0, -1))])

    def v(n):
        return model.beta(ids[n + 1], 1) if n + 1 < m else None

    return PseudolimitSpec(model, alpha, v, 1, last, 0, "chain")
