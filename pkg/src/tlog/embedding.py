"""Embeddings out of a model with inserted copies (the universal property).

The source is base order + copies inserted at s-cuts rho.  An embedding into a
target is fixed by the base map and, for each new copy, the image of its
unit at k = 0; the image of b[c,k] must then be the k-th successor of it.
"""
import random

from tlog.couple import DomainError, psi, s
from tlog.psi_order import Omega, Copy


class EmbeddingError(DomainError):
    def __init__(self, clause, msg):
        super().__init__("%s: %s" % (clause, msg))
        self.clause = clause


class Embedding:
    def __init__(self, source, target, posmap):
        self.source = source
        self.target = target
        self._posmap = posmap

    def position(self, pos):
        return self._posmap(pos)

    def __call__(self, x):
        return self.target.from_terms([(self._posmap(p), c) for p, c in x.items()])

    def verify(self, samples=200, seed=0):
        """Order, sign, psi and s preservation on random elements; returns failure messages."""
        from tlog.sampling import random_element
        rng = random.Random(seed)
        out = []
        for _ in range(samples):
            x = random_element(rng, self.source)
            y = random_element(rng, self.source)
            fx, fy = self(x), self(y)
            if (x < y) != (fx < fy) or x.sign() != fx.sign():
                out.append("order not preserved at %s, %s" % (x, y))
            if x and psi(fx) != self(psi(x)):
                out.append("psi not preserved at %s" % x)
            if s(fx) != self(s(x)):
                out.append("s not preserved at %s" % x)
        return out


def _default_base_map(base_model, target):
    tord = target.order
    for c in base_model.copies:
        if not tord.has_copy(c):
            raise EmbeddingError("base", "copy %s of the base is missing in the target" % c)
    ranks = [tord.rank(c) for c in base_model.copies]
    if ranks != sorted(ranks):
        raise EmbeddingError("base", "base copies appear out of order in the target")
    return lambda pos: pos


def embed_universal(base_model, rho, target, family, base_map=None, fresh=None):
    """The embedding of base + copies at rho into ``target`` given by ``family``.

    family maps each new copy id either to a target position (image of
    b[c,0]) or to a callable k -> target position.  base_map sends base
    positions to target positions and defaults to the identity on ids.
    Returns (source model, new ids, Embedding).
    """
    border = base_model.order
    new_order, _, ids = border.insert_copies(list(rho), fresh)
    source = base_model.with_order(new_order)
    bmap = base_map or _default_base_map(base_model, target)
    tord = target.order
    if isinstance(family, dict):
        fam = family
    else:
        fam = {c: family(c) if callable(family) else family[i] for i, c in enumerate(ids)}
    missing = [c for c in ids if c not in fam]
    if missing:
        raise EmbeddingError("family", "no image for new copies %s" % missing)

    def new_image(cid, k):
        f = fam[cid]
        if callable(f):
            return tord.validate(f(k))
        f = tord.validate(f)
        if isinstance(f, Omega):
            if f.n + k < 0:
                raise EmbeddingError("successor", "image of b[%s,%d] falls below s0" % (cid, k))
            return Omega(f.n + k)
        return Copy(f.id, f.k + k)

    def posmap(pos):
        if isinstance(pos, Copy) and pos.id in fam:
            return new_image(pos.id, pos.k)
        return tord.validate(bmap(pos))

    # successor: image(k+1) is the successor of image(k)
    probe = range(-16, 17)
    for c in ids:
        for k in probe:
            if new_image(c, k + 1) != tord.succ(new_image(c, k)):
                raise EmbeddingError("successor", "image of b[%s,%d] is not the successor of the image of b[%s,%d]"
                                     % (c, k + 1, c, k))
    # cut: the image class sits above the images of base classes below the cut, below the rest
    base_classes = [-1] + [tord.s_class(bmap(Copy(c, 0))) for c in base_model.copies]
    images = {}
    for i, c in enumerate(ids):
        img = new_image(c, 0)
        r = tord.s_class(img)
        if r == -1 or r in base_classes:
            raise EmbeddingError("cut", "new copy %s lands in the class of a base position (%s)" % (c, img))
        cut = rho[i]
        below = base_classes[: cut.j + 1]
        above = base_classes[cut.j + 1:]
        if any(q > r for q in below) or any(q < r for q in above):
            raise EmbeddingError("cut", "image %s of copy %s does not realize s-cut %d" % (img, c, cut.j))
        images[c] = r
    # inter-copy order: new copies keep their order and classes
    rs = [images[c] for c in ids]
    if any(a >= b for a, b in zip(rs, rs[1:])):
        raise EmbeddingError("order", "new copies are not sent to increasing distinct classes: %s" % rs)
    return source, ids, Embedding(source, target, posmap)
