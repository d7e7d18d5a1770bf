"""The index set of Psi: an omega ladder followed by finitely many copies of Z.

Positions carry stable copy identifiers; the order of copies is a separate
sequence, so inserting copies never renames an existing position.

Internally every position also has an integer *key* whose natural order is
the position order.  Keys are only meaningful relative to one PsiOrder.
"""
from dataclasses import dataclass
import re

OMEGA_LIMIT = 1 << 64
_HALF = 1 << 63


class OrderError(ValueError):
    pass


@dataclass(frozen=True)
class Omega:
    """The Psi element s^{n+1}0."""
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise OrderError("Omega index must be natural")

    def __str__(self):
        return "w%d" % self.n


@dataclass(frozen=True)
class Copy:
    """The k-th element of the copy of Z named ``id``."""
    id: str
    k: int

    def __str__(self):
        return "b[%s,%d]" % (self.id, self.k)


_POS_RE = re.compile(r"^\s*(?:w(\d+)|b\[\s*([A-Za-z_][A-Za-z0-9_]*)\s*,\s*([+-]?\d+)\s*\])\s*$")


def parse_position(text):
    m = _POS_RE.match(text)
    if not m:
        raise OrderError("cannot parse position %r" % text)
    if m.group(1) is not None:
        return Omega(int(m.group(1)))
    return Copy(m.group(2), int(m.group(3)))


@dataclass(frozen=True)
class SCut:
    """An s-cut: the tail of copies starting at copy index ``j``.

    ``j == m`` is the empty cut (top of Psi).  ``j == -1`` stands for all of
    Psi; it is never listed by :meth:`PsiOrder.scuts` but shifts accept it.
    """
    j: int

    @classmethod
    def full(cls):
        return cls(-1)

    @property
    def is_full(self):
        return self.j == -1


@dataclass(frozen=True)
class AtPosition:
    pos: object
    side: str  # "left" or "right"


@dataclass(frozen=True)
class BetweenOmegaAndCopies:
    pass


@dataclass(frozen=True)
class BetweenCopies:
    i: str
    j: str


@dataclass(frozen=True)
class AboveAll:
    pass


class PsiOrder:
    """omega followed by copies of Z in the order of ``copies``."""

    __slots__ = ("copies", "_rank", "_hash")

    def __init__(self, copies=()):
        copies = tuple(copies)
        if len(set(copies)) != len(copies):
            raise OrderError("copy identifiers must be distinct")
        for c in copies:
            if not isinstance(c, str) or not re.match(r"^[A-Za-z_][A-Za-z0-9_]*$", c):
                raise OrderError("bad copy identifier %r" % (c,))
        self.copies = copies
        self._rank = {c: i for i, c in enumerate(copies)}
        self._hash = hash(copies)

    @property
    def m(self):
        return len(self.copies)

    def __eq__(self, other):
        return isinstance(other, PsiOrder) and self.copies == other.copies

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "PsiOrder(%r)" % (list(self.copies),)

    def rank(self, cid):
        try:
            return self._rank[cid]
        except KeyError:
            raise OrderError("unknown copy %r" % (cid,)) from None

    def has_copy(self, cid):
        return cid in self._rank

    # keys

    def key(self, pos):
        if isinstance(pos, Omega):
            if pos.n >= OMEGA_LIMIT:
                raise OrderError("Omega index too large")
            return pos.n
        return ((self.rank(pos.id) + 1) << 64) | (pos.k + _HALF)

    def position(self, key):
        if key < OMEGA_LIMIT:
            return Omega(key)
        return Copy(self.copies[(key >> 64) - 1], (key & (OMEGA_LIMIT - 1)) - _HALF)

    def validate(self, pos):
        if isinstance(pos, Copy):
            self.rank(pos.id)
        elif not isinstance(pos, Omega):
            raise OrderError("not a position: %r" % (pos,))
        return pos

    # order

    def compare(self, p, q):
        a, b = self.key(p), self.key(q)
        return (a > b) - (a < b)

    def succ(self, pos):
        self.validate(pos)
        if isinstance(pos, Omega):
            return Omega(pos.n + 1)
        return Copy(pos.id, pos.k + 1)

    def pred(self, pos):
        """Predecessor, or None at Omega(0)."""
        self.validate(pos)
        if isinstance(pos, Omega):
            return Omega(pos.n - 1) if pos.n else None
        return Copy(pos.id, pos.k - 1)

    def step(self, pos, direction):
        if direction == "succ":
            return self.succ(pos)
        if direction == "pred":
            return self.pred(pos)
        raise OrderError("direction must be succ or pred")

    def s_class(self, pos):
        """-1 for the omega ladder, otherwise the rank of the copy."""
        self.validate(pos)
        return -1 if isinstance(pos, Omega) else self.rank(pos.id)

    def s_class_relation(self, p, q):
        a, b = self.s_class(p), self.s_class(q)
        if a == b:
            return "same"
        return "<<" if a < b else ">>"

    # s-cuts

    def scuts(self):
        """All s-cuts except Psi itself, ordered by reverse inclusion."""
        return [SCut(j) for j in range(self.m + 1)]

    def check_scut(self, cut, allow_full=False):
        if not isinstance(cut, SCut):
            raise OrderError("not an s-cut: %r" % (cut,))
        lo = -1 if allow_full else 0
        if not lo <= cut.j <= self.m:
            raise OrderError("s-cut index %d out of range for %d copies" % (cut.j, self.m))
        return cut

    def in_scut(self, pos, cut):
        """Membership of a position in the tail set B."""
        if cut.is_full:
            return True
        return isinstance(pos, Copy) and self.rank(pos.id) >= cut.j

    def key_in_scut(self, key, cut):
        if cut.j == -1:
            return True
        return key >= ((cut.j + 1) << 64)

    def scut_of_copy(self, cid):
        """The s-cut made of the copies strictly above ``cid``."""
        return SCut(self.rank(cid) + 1)

    def insert_copies(self, rho, fresh=None):
        """Add one new copy of Z per entry of ``rho`` (a nondecreasing list of s-cuts).

        A copy for cut j lands just below old copy j (at the top when j == m);
        copies sharing a cut keep list order.  Returns (new order, relabel, new ids),
        where relabel is the identity on old positions.
        """
        rho = [self.check_scut(c) for c in rho]
        for a, b in zip(rho, rho[1:]):
            if b.j < a.j:
                raise OrderError("cut list must be nondecreasing")
        new_ids = []
        taken = set(self.copies)
        counter = 0
        for i in range(len(rho)):
            if fresh is not None:
                cid = fresh[i]
                if cid in taken:
                    raise OrderError("copy id %r already used" % cid)
            else:
                while "c%d" % counter in taken:
                    counter += 1
                cid = "c%d" % counter
            taken.add(cid)
            new_ids.append(cid)
        out = []
        it = 0
        for j in range(self.m + 1):
            while it < len(rho) and rho[it].j == j:
                out.append(new_ids[it])
                it += 1
            if j < self.m:
                out.append(self.copies[j])
        new = PsiOrder(out)

        def relabel(pos):
            return self.validate(pos)

        return new, relabel, new_ids

    # cut descriptors over Psi (used for class cuts)

    def normalize_cut(self, cut):
        """Canonical form of a cut in Psi: ('after', pos) or ('before_copy', rank).

        ('after', pos) means the lower side is Psi^{<=pos}; ('before_copy', j)
        means the lower side is omega plus copies of rank < j.  ('before_all',)
        is the cut below s0.
        """
        if isinstance(cut, AtPosition):
            self.validate(cut.pos)
            if cut.side == "right":
                return ("after", cut.pos)
            if cut.side != "left":
                raise OrderError("side must be left or right")
            if isinstance(cut.pos, Copy):
                return ("after", self.pred(cut.pos))
            if cut.pos.n == 0:
                return ("before_all",)
            return ("after", Omega(cut.pos.n - 1))
        if isinstance(cut, BetweenOmegaAndCopies):
            return ("before_copy", 0)
        if isinstance(cut, BetweenCopies):
            i, j = self.rank(cut.i), self.rank(cut.j)
            if j != i + 1:
                raise OrderError("BetweenCopies needs adjacent copies")
            return ("before_copy", j)
        if isinstance(cut, AboveAll):
            return ("before_copy", self.m)
        raise OrderError("not a cut descriptor: %r" % (cut,))

    def key_below_cut(self, key, ncut):
        """Is the position with this key on the lower side of a normalized cut?"""
        if ncut[0] == "before_all":
            return False
        if ncut[0] == "after":
            return key <= self.key(ncut[1])
        return key < ((ncut[1] + 1) << 64)
