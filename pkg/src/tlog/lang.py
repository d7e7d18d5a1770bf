"""Terms and quantifier-free formulas of the language of T_log.

Grammar::

    formula := disj
    disj    := conj ('or' conj)*
    conj    := neg ('and' neg)*
    neg     := 'not' neg | '(' formula ')' | term ('<' | '=') term
    term    := unary (('+' | '-') unary)*
    unary   := '-' unary | atom
    atom    := 'inf' | '0' | IDENT | literal | FUNC '(' term ')' | 'd' NAT '(' term ')'
             | '(' term ')'
    literal := [scalar '*'] basisref
    basisref:= 'e' NAT | 'w' NAT | 'b[' ID ',' INT ']'
    FUNC    := 'psi' | 's' | 'p' | 'int' | 'chi'

``int`` and ``chi`` are sugar: they are not symbols of the language and are
marked as such in the tree.
"""
from dataclasses import dataclass
import re

from tlog.couple import INF, is_inf, Couple, DomainError, Element
from tlog.psi_order import Omega, OMEGA_LIMIT
from tlog.scalars import Scalar, format_scalar, parse_scalar, mpq, ScalarError


class ParseError(ValueError):
    def __init__(self, msg, pos=None, text=None):
        self.pos = pos
        self.text = text
        if pos is not None:
            msg = "%s at column %d" % (msg, pos + 1)
        super().__init__(msg)


# element formatting


def _coef_prefix(c):
    """Text for a coefficient in front of a basis symbol, sign excluded."""
    if type(c) is Scalar:
        if c.a:
            return "(%s)*" % format_scalar(c)
        if abs(c.b) == 1:
            return "sqrt(%d)*" % c.d
        return "%s*" % format_scalar(Scalar(0, abs(c.b), c.d))
    a = abs(c)
    if a == 1:
        return ""
    return "%s*" % format_scalar(a)


def _coef_negative(c):
    if type(c) is Scalar:
        return c.b < 0 if not c.a else False
    return c < 0


def format_element(x):
    """Canonical text.  The omega part is written in the e-basis, copies as b[id,k]."""
    if is_inf(x):
        return "inf"
    from tlog.couple import to_vector
    omega = tuple((k, c) for k, c in x.terms if k < OMEGA_LIMIT)
    rest = [(k, c) for k, c in x.terms if k >= OMEGA_LIMIT]
    parts = []
    if omega:
        vec = to_vector(Element(x.model, omega))
        for n, r in enumerate(vec):
            if r:
                parts.append((r, "e%d" % n))
    order = x.model.order
    for k, c in rest:
        parts.append((c, str(order.position(k))))
    if not parts:
        return "0"
    out = []
    for i, (c, sym) in enumerate(parts):
        neg = _coef_negative(c)
        cc = -c if neg else c
        body = _coef_prefix(cc) + sym
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def format_position_power(pos):
    """Write an omega position as s^n 0, copies as b[id,k]."""
    if isinstance(pos, Omega):
        n = pos.n + 1
        return "s0" if n == 1 else "s^%d 0" % n
    return str(pos)


# tokens

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<bref>b\[\s*[A-Za-z_][A-Za-z0-9_]*\s*,\s*[+-]?\d+\s*\])
  | (?P<sqrt>sqrt\s*\(\s*\d+\s*\)|sqrt\d+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*()<=,])
""", re.VERBOSE)

KEYWORDS = {"inf", "psi", "s", "p", "int", "chi", "not", "and", "or", "sqrt"}
FUNCS = ("psi", "s", "p", "int", "chi")
_EREF = re.compile(r"^([ew])(\d+)$")
_DELTA = re.compile(r"^d(\d+)$")


@dataclass(frozen=True)
class Tok:
    kind: str
    text: str
    pos: int


def tokenize(text):
    out = []
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if not m:
            raise ParseError("unexpected character %r" % text[i], i, text)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Tok(kind, m.group(kind), i))
        i = m.end()
    out.append(Tok("end", "", len(text)))
    return out


# syntax tree

@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Inf:
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Lit:
    """coefficient times a basis symbol; ref is ('e', n), ('w', n) or ('b', id, k)."""
    coeff: object
    ref: tuple


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Fn:
    name: str  # psi, s, p, int, chi
    arg: object

    @property
    def sugar(self):
        return self.name in ("int", "chi")


@dataclass(frozen=True)
class Delta:
    n: int
    arg: object


@dataclass(frozen=True)
class Lt:
    left: object
    right: object


@dataclass(frozen=True)
class Eq:
    left: object
    right: object


@dataclass(frozen=True)
class Not:
    arg: object


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


TERM_NODES = (Zero, Inf, Var, Lit, Add, Sub, Neg, Fn, Delta)
FORMULA_NODES = (Lt, Eq, Not, And, Or)


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self, off=0):
        return self.toks[min(self.i + off, len(self.toks) - 1)]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text):
        t = self.next()
        if t.text != text:
            raise ParseError("expected %r, found %r" % (text, t.text or "end of input"), t.pos, self.text)
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.pos, self.text)

    # formulas

    def formula(self):
        left = self.conj()
        while self.peek().text == "or":
            self.next()
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.negation()
        while self.peek().text == "and":
            self.next()
            left = And(left, self.negation())
        return left

    def negation(self):
        t = self.peek()
        if t.text == "not":
            self.next()
            return Not(self.negation())
        if t.text == "(":
            save = self.i
            try:
                self.next()
                f = self.formula()
                self.expect(")")
                return f
            except ParseError:
                self.i = save
        left = self.term()
        op = self.next()
        if op.text == "<":
            return Lt(left, self.term())
        if op.text == "=":
            return Eq(left, self.term())
        raise ParseError("expected '<' or '=', found %r" % (op.text or "end of input"), op.pos, self.text)

    # terms

    def term(self):
        left = self.unary()
        while self.peek().text in ("+", "-"):
            op = self.next().text
            right = self.unary()
            left = Add(left, right) if op == "+" else Sub(left, right)
        return left

    def unary(self):
        if self.peek().text == "-":
            self.next()
            return Neg(self.unary())
        return self.atom()

    def _scalar_then_ref(self):
        """Parse `scalar '*' basisref` starting at a number, sqrt or '('."""
        start = self.peek().pos
        # collect the scalar text up to the '*' that precedes a basis symbol
        j = self.i
        depth = 0
        while True:
            t = self.toks[j]
            if t.kind == "end":
                return None
            if t.text == "(":
                depth += 1
            elif t.text == ")":
                depth -= 1
                if depth < 0:
                    return None
            elif t.text == "*" and depth == 0:
                nxt = self.toks[j + 1]
                if nxt.kind == "bref" or (nxt.kind == "ident" and _EREF.match(nxt.text)):
                    break
            elif t.kind not in ("num", "sqrt", "op") or t.text in ("<", "=", ","):
                return None
            j += 1
        stext = self.text[start:self.toks[j].pos].strip()
        if stext.startswith("(") and stext.endswith(")"):
            stext = stext[1:-1]
        try:
            c = parse_scalar(stext)
        except ScalarError:
            return None
        self.i = j + 1
        return Lit(c, self._ref(self.next()))

    def _ref(self, t):
        if t.kind == "bref":
            inner = t.text[2:-1]
            cid, k = inner.split(",")
            return ("b", cid.strip(), int(k))
        m = _EREF.match(t.text)
        if t.kind == "ident" and m:
            return (m.group(1), int(m.group(2)))
        raise ParseError("expected a basis symbol, found %r" % t.text, t.pos, self.text)

    def atom(self):
        t = self.peek()
        if t.kind in ("num", "sqrt") or t.text == "(":
            lit = self._scalar_then_ref()
            if lit is not None:
                return lit
            if t.kind == "num" and t.text == "0":
                self.next()
                return Zero()
            if t.text == "(":
                self.next()
                inner = self.term()
                self.expect(")")
                return inner
            self.fail("expected a term")
        if t.kind == "bref":
            self.next()
            return Lit(mpq(1), self._ref(t))
        if t.kind == "ident":
            name = t.text
            if name == "inf":
                self.next()
                return Inf()
            if _EREF.match(name):
                self.next()
                return Lit(mpq(1), self._ref(t))
            if name in FUNCS and self.peek(1).text == "(":
                self.next()
                self.expect("(")
                arg = self.term()
                self.expect(")")
                return Fn(name, arg)
            m = _DELTA.match(name)
            if m and self.peek(1).text == "(":
                n = int(m.group(1))
                if n < 1:
                    self.fail("delta index must be at least 1", t)
                self.next()
                self.expect("(")
                arg = self.term()
                self.expect(")")
                return Delta(n, arg)
            if name in KEYWORDS:
                self.fail("unexpected keyword %r" % name, t)
            self.next()
            return Var(name)
        self.fail("expected a term, found %r" % (t.text or "end of input"), t)

    def done(self):
        t = self.peek()
        if t.kind != "end":
            raise ParseError("unexpected %r" % t.text, t.pos, self.text)


def parse_term(text):
    ps = _Parser(text)
    t = ps.term()
    ps.done()
    return t


def parse_formula(text):
    ps = _Parser(text)
    f = ps.formula()
    ps.done()
    return f


def parse_any(text):
    """A formula if the text has a comparison, otherwise a term."""
    try:
        return parse_term(text)
    except ParseError as e1:
        try:
            return parse_formula(text)
        except ParseError:
            raise e1


def is_formula(node):
    return isinstance(node, FORMULA_NODES)


# printing

def _fmt_lit(n):
    ref = n.ref
    sym = "b[%s,%d]" % (ref[1], ref[2]) if ref[0] == "b" else "%s%d" % ref
    c = n.coeff
    if type(c) is not Scalar and c == 1:
        return sym
    if type(c) is Scalar and c.a:
        return "(%s)*%s" % (format_scalar(c), sym)
    txt = format_scalar(c)
    if txt.startswith("-"):
        return "(%s)*%s" % (txt, sym)
    return "%s*%s" % (txt, sym)


def format_term(n):
    if isinstance(n, Zero):
        return "0"
    if isinstance(n, Inf):
        return "inf"
    if isinstance(n, Var):
        return n.name
    if isinstance(n, Lit):
        return _fmt_lit(n)
    if isinstance(n, Add):
        return "%s + %s" % (format_term(n.left), _fmt_right(n.right))
    if isinstance(n, Sub):
        return "%s - %s" % (format_term(n.left), _fmt_right(n.right))
    if isinstance(n, Neg):
        return "-%s" % _fmt_right(n.arg)
    if isinstance(n, Fn):
        return "%s(%s)" % (n.name, format_term(n.arg))
    if isinstance(n, Delta):
        return "d%d(%s)" % (n.n, format_term(n.arg))
    raise TypeError("not a term: %r" % (n,))


def _fmt_right(n):
    txt = format_term(n)
    if isinstance(n, (Add, Sub, Neg)):
        return "(%s)" % txt
    return txt


def format_formula(f):
    if isinstance(f, Lt):
        return "%s < %s" % (format_term(f.left), format_term(f.right))
    if isinstance(f, Eq):
        return "%s = %s" % (format_term(f.left), format_term(f.right))
    if isinstance(f, Not):
        return "not %s" % _fmt_fatom(f.arg)
    if isinstance(f, And):
        return "%s and %s" % (_fmt_conj_side(f.left, left=True), _fmt_conj_side(f.right, left=False))
    if isinstance(f, Or):
        right = format_formula(f.right)
        if isinstance(f.right, Or):
            right = "(%s)" % right
        return "%s or %s" % (format_formula(f.left), right)
    raise TypeError("not a formula: %r" % (f,))


def _fmt_fatom(f):
    if isinstance(f, (And, Or)):
        return "(%s)" % format_formula(f)
    return format_formula(f)


def _fmt_conj_side(f, left):
    if isinstance(f, Or) or (not left and isinstance(f, And)):
        return "(%s)" % format_formula(f)
    return format_formula(f)


def format_node(n):
    return format_formula(n) if is_formula(n) else format_term(n)


# evaluation

class Env:
    """Variable bindings plus the couple the symbols are read in."""

    def __init__(self, couple, bindings=None):
        if not isinstance(couple, Couple):
            couple = Couple(couple)
        self.couple = couple
        self.model = couple.model
        self.bindings = dict(bindings or {})

    def bind(self, name, value):
        self.bindings[name] = value


def lit_value(model, n):
    ref = n.ref
    if ref[0] == "e":
        return model.e(ref[1], n.coeff)
    if ref[0] == "w":
        return model.w(ref[1], n.coeff)
    return model.beta(ref[1], ref[2], n.coeff)


def eval_term(n, env):
    c = env.couple
    if isinstance(n, Zero):
        return env.model.zero()
    if isinstance(n, Inf):
        return INF
    if isinstance(n, Var):
        try:
            return env.bindings[n.name]
        except KeyError:
            raise DomainError("unbound variable %r" % n.name) from None
    if isinstance(n, Lit):
        return lit_value(env.model, n)
    if isinstance(n, Add):
        return eval_term(n.left, env) + eval_term(n.right, env)
    if isinstance(n, Sub):
        a = eval_term(n.left, env)
        b = eval_term(n.right, env)
        if is_inf(a) or is_inf(b):
            return INF
        return a - b
    if isinstance(n, Neg):
        return -eval_term(n.arg, env)
    if isinstance(n, Fn):
        v = eval_term(n.arg, env)
        if is_inf(v):
            return INF
        if n.name == "psi":
            return c.psi(v)
        if n.name == "s":
            return c.s(v)
        if n.name == "p":
            return c.p(v)
        if n.name == "int":
            return c.integral(v)
        return c.chi(v)
    if isinstance(n, Delta):
        v = eval_term(n.arg, env)
        if is_inf(v):
            return INF
        return v / n.n
    raise TypeError("not a term: %r" % (n,))


def compare_values(a, b):
    """Order on Gamma_inf: infinity is the maximum and equals itself."""
    if is_inf(a):
        return 0 if is_inf(b) else 1
    if is_inf(b):
        return -1
    return a._cmp(b)


def eval_formula(f, env):
    if isinstance(f, Lt):
        return compare_values(eval_term(f.left, env), eval_term(f.right, env)) < 0
    if isinstance(f, Eq):
        return compare_values(eval_term(f.left, env), eval_term(f.right, env)) == 0
    if isinstance(f, Not):
        return not eval_formula(f.arg, env)
    if isinstance(f, And):
        return eval_formula(f.left, env) and eval_formula(f.right, env)
    if isinstance(f, Or):
        return eval_formula(f.left, env) or eval_formula(f.right, env)
    raise TypeError("not a formula: %r" % (f,))


def evaluate(text, env):
    node = parse_any(text)
    if is_formula(node):
        return eval_formula(node, env)
    return eval_term(node, env)


def parse_element(text, model):
    """Read an element literal such as ``3/2*e0 - e3 + 2*b[c0,1]`` in a model."""
    node = parse_term(text)
    v = eval_term(node, Env(model))
    return v


def desugar(n):
    """Replace int and chi by their definitions in psi and s.

    The chi rewrite agrees with chi only on negative arguments; the infinity
    default elsewhere has no term definition.
    """
    if isinstance(n, (Zero, Inf, Var, Lit)):
        return n
    if isinstance(n, Add):
        return Add(desugar(n.left), desugar(n.right))
    if isinstance(n, Sub):
        return Sub(desugar(n.left), desugar(n.right))
    if isinstance(n, Neg):
        return Neg(desugar(n.arg))
    if isinstance(n, Delta):
        return Delta(n.n, desugar(n.arg))
    if isinstance(n, Fn):
        a = desugar(n.arg)
        if n.name == "int":
            return Sub(a, Fn("s", a))
        if n.name == "chi":
            # only the value on the negative cone; callers handle the default
            return Sub(Fn("psi", a), Fn("s", Fn("psi", a)))
        return Fn(n.name, a)
    raise TypeError("not a term: %r" % (n,))
