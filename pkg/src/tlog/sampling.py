"""Random elements for property checks.  All draws go through one random.Random."""
import random
from functools import cmp_to_key

from tlog.couple import Model
from tlog.psi_order import Omega, Copy, PsiOrder
from tlog.scalars import Scalar, mpq, norm

_SMALL = [mpq(n, d) for n in range(-4, 5) if n for d in (1, 2, 3, 7)]


def make_rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_coeff(rng, model=None, irrational=0.2):
    c = rng.choice(_SMALL)
    if model is not None and model.radicand is not None and rng.random() < irrational:
        return norm(Scalar(rng.choice(_SMALL), rng.choice(_SMALL), model.radicand))
    return c


def random_position(rng, order, window=6):
    m = order.m
    if m == 0 or rng.random() < 0.4:
        return Omega(rng.randrange(window))
    cid = order.copies[rng.randrange(m)]
    return Copy(cid, rng.randint(-window, window))


def random_element(rng, model, max_terms=4, window=6, bias=True, irrational=0.2):
    """A random element; with ``bias`` the coefficient sum is often pinned to 0 or 1,
    since those sums are where psi and s change behaviour."""
    n = rng.randint(0, max_terms)
    pos = sorted({random_position(rng, model.order, window) for _ in range(n)}, key=model.order.key)
    pairs = [(p, random_coeff(rng, model, irrational)) for p in pos]
    x = model.from_terms(pairs)
    if bias and x.terms:
        r = rng.random()
        if r < 0.6:
            target = mpq(0) if r < 0.35 else mpq(1)
            fix = target - x.total()
            lead = x.model.order.position(x.terms[-1][0])
            x = x + model.unit(lead, fix)
    return x


def random_nonzero(rng, model, **kw):
    while True:
        x = random_element(rng, model, **kw)
        if x:
            return x


def random_omega_element(rng, model, length=6):
    """A random omega-supported element given by its e-basis vector."""
    vec = [rng.choice(_SMALL) if rng.random() < 0.5 else mpq(0) for _ in range(rng.randint(1, length))]
    return model.from_vector(vec), vec


def random_psi_combination(rng, couple, max_terms=8, window=6, total=None):
    """Distinct Psi elements a_1 < ... < a_n of the couple and rational coefficients.

    ``total`` forces the coefficient sum (when n > 1); otherwise it is pinned
    to 0 or 1 most of the time.
    """
    model = couple.model
    order = model.order
    n = rng.randint(1, max_terms)
    pts = set()
    for _ in range(4 * n):
        # psi(u_succ(pi) - u_pi) is the Psi element just above pi
        pos = random_position(rng, order, window)
        pts.add(couple.psi(model.unit(order.succ(pos)) - model.unit(pos)))
        if len(pts) >= n:
            break
    pts = sorted(pts, key=_sort_key)
    coeffs = [rng.choice(_SMALL) for _ in pts]
    if total is None:
        r = rng.random()
        total = None if r >= 0.6 else (0 if r < 0.3 else 1)
    if total is not None and len(pts) > 1:
        last = mpq(total) - sum(coeffs[:-1], mpq(0))
        if last:
            coeffs[-1] = last
    return pts, coeffs


_sort_key = cmp_to_key(lambda a, b: a._cmp(b))


def sort_elements(xs):
    return sorted(xs, key=_sort_key)


def random_pair(rng, model, **kw):
    """Two elements, often related so that sums and differences are interesting."""
    x = random_element(rng, model, **kw)
    r = rng.random()
    if r < 0.5:
        y = random_element(rng, model, **kw)
    elif r < 0.7:
        y = x.scale(rng.choice(_SMALL)) + random_element(rng, model, max_terms=1, **kw)
    elif r < 0.85:
        y = -x + random_element(rng, model, max_terms=2, **kw)
    else:
        y = x + random_element(rng, model, max_terms=1, **kw)
    return x, y


def sample_models(max_copies=4, radicand=None):
    """The prime model and models with 1..max_copies copies."""
    out = []
    for m in range(max_copies + 1):
        out.append(Model(PsiOrder(["c%d" % i for i in range(m)]), radicand))
    return out
