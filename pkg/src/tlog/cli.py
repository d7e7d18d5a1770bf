"""Command-line workbench: ``tlog <command> ...`` or ``python3 -m tlog``.

Exit status: 0 on success, 1 when the mathematics rejects the request,
2 on usage errors (bad flags, unknown names).
"""
import argparse
import json
import os
import re
import sys

from tlog.couple import Model, Couple, DomainError, is_inf
from tlog.psi_order import PsiOrder, SCut, OrderError
from tlog.scalars import ScalarError, format_scalar
from tlog.lang import ParseError, Env, evaluate, parse_element, format_element

DEFAULT_WORKSPACE = "tlog_workspace.json"
BUILTIN_MODELS = {"prime": ([], None), "prime-sqrt2": ([], 2)}
_MATH_ERRORS = (DomainError, ParseError, ScalarError, OrderError)


class UsageError(Exception):
    pass


# workspace

class Workspace:
    """Named models, elements and shifts, stored as JSON with elements in literal syntax."""

    def __init__(self, path=None):
        self.path = path
        self.models = {}
        self.elements = {}
        self.shifts = {}

    @classmethod
    def load(cls, path):
        ws = cls(path)
        if path and os.path.exists(path):
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
            ws.models = data.get("models", {})
            ws.elements = data.get("elements", {})
            ws.shifts = data.get("shifts", {})
        return ws

    def to_json(self):
        return json.dumps({"models": self.models, "elements": self.elements, "shifts": self.shifts},
                          indent=2, sort_keys=True)

    def save(self):
        if self.path:
            with open(self.path, "w", encoding="utf-8") as fh:
                fh.write(self.to_json() + "\n")

    def model(self, name):
        if name in self.models:
            d = self.models[name]
            return Model(PsiOrder(d["copies"]), d.get("sqrt"))
        if name in BUILTIN_MODELS:
            cs, r = BUILTIN_MODELS[name]
            return Model(PsiOrder(cs), r)
        raise UsageError("unknown model %r" % name)

    def put_model(self, name, model):
        self.models[name] = {"copies": list(model.copies), "sqrt": model.radicand}

    def element(self, name):
        if name not in self.elements:
            raise UsageError("unknown element %r" % name)
        d = self.elements[name]
        return parse_element(d["literal"], self.model(d["model"]))

    def put_element(self, name, model_name, x):
        self.elements[name] = {"model": model_name, "literal": format_element(x)}

    def shift(self, name):
        from tlog.shifts import ShiftSpec
        if name not in self.shifts:
            raise UsageError("unknown shift %r" % name)
        d = self.shifts[name]
        model = self.model(d["model"])
        return ShiftSpec(model, SCut(d["cut"]), parse_element(d["eps"], model))

    def bindings(self, model):
        out = {}
        for name in self.elements:
            x = self.element(name)
            if x.model == model:
                out[name] = x
        return out


def infer_model(text):
    """A model big enough for a literal: copies sorted by name (c2 before c10), radicand if any."""
    found = set(re.findall(r"b\[\s*([A-Za-z_][A-Za-z0-9_]*)\s*,", text))
    copies = sorted(found, key=lambda c: [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", c)])
    rad = None
    m = re.search(r"sqrt\s*\(?\s*(\d+)", text)
    if m:
        rad = int(m.group(1))
    return Model(PsiOrder(copies), rad)


def resolve_model(ws, name, *texts):
    if name:
        return ws.model(name)
    return infer_model(" ".join(t for t in texts if t))


def parse_sub(model, text):
    """Submodel syntax: omega[+c0+c1...][/Q]; 'prime' means omega, 'all' every copy."""
    from tlog.submodel import SubmodelSpec
    text = (text or "omega").replace(" ", "")
    rational = False
    if text.endswith("/Q"):
        rational = True
        text = text[:-2]
    parts = [t for t in text.split("+") if t]
    if not parts or parts[0] not in ("omega", "prime", "all"):
        raise UsageError("submodel must start with omega, prime or all: %r" % text)
    copies = list(model.copies) if parts[0] == "all" else parts[1:]
    for c in copies:
        if not model.order.has_copy(c):
            raise UsageError("submodel copy %r is not in the model" % c)
    return SubmodelSpec(model, copies, rational)


# output

class Out:
    def __init__(self, fmt, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, plain, pairs):
        if self.fmt == "machine":
            for k, v in pairs:
                self.stream.write("%s=%s\n" % (k, v))
        else:
            self.stream.write(plain.rstrip("\n") + "\n")


def _val(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if is_inf(v):
        return "inf"
    return format_element(v) if hasattr(v, "terms") else str(v)


# commands

def cmd_model(args, ws, out):
    if args.action == "new":
        copies = [c for c in (args.copies or "").split(",") if c]
        model = Model(PsiOrder(copies), args.sqrt)
        ws.put_model(args.name, model)
        ws.save()
    elif args.action == "extend":
        model = ws.model(args.name)
        cuts = [SCut(int(j)) for j in args.cuts.split(",") if j != ""]
        fresh = [c for c in args.ids.split(",")] if args.ids else None
        order, _, ids = model.order.insert_copies(cuts, fresh)
        model = model.with_order(order)
        ws.put_model(args.as_ or args.name, model)
        ws.save()
    else:
        model = ws.model(args.name)
    field = "none" if model.radicand is None else "Q(sqrt(%d))" % model.radicand
    plain = "model %s: omega + [%s], coefficients %s" % (args.name if args.action != "extend" else (args.as_ or args.name),
                                                          ", ".join(model.copies), "Q" if model.radicand is None else field)
    out.emit(plain, [("model", args.as_ if getattr(args, "as_", None) else args.name),
                     ("copies", ",".join(model.copies)), ("field", field)])
    return 0


def cmd_let(args, ws, out):
    model_name = args.model or "prime"
    model = ws.model(model_name)
    x = parse_element(args.literal, model)
    ws.put_element(args.name, model_name, x)
    ws.save()
    out.emit("%s = %s" % (args.name, format_element(x)), [("name", args.name), ("value", format_element(x))])
    return 0


def _couple(ws, args, model):
    if getattr(args, "shift", None):
        from tlog.shifts import ShiftedCouple
        spec = ws.shift(args.shift)
        return ShiftedCouple(spec)
    return Couple(model)


def _bindings(ws, args, model):
    env = ws.bindings(model)
    for b in getattr(args, "bind", None) or []:
        if "=" not in b:
            raise UsageError("--bind expects name=literal")
        k, v = b.split("=", 1)
        env[k.strip()] = parse_element(v, model)
    return env


def cmd_eval(args, ws, out):
    if args.shift:
        model = ws.shift(args.shift).model
    else:
        model = resolve_model(ws, args.model, args.expr, *(args.bind or []))
    env = Env(_couple(ws, args, model), _bindings(ws, args, model))
    v = evaluate(args.expr, env)
    out.emit(_val(v), [("value", _val(v))])
    return 0


def cmd_sign(args, ws, out):
    model = resolve_model(ws, args.model, args.literal)
    x = parse_element(args.literal, model)
    sg = x.sign()
    out.emit(str(sg), [("sign", sg)])
    return 0


def _alpha(ws, args):
    model = resolve_model(ws, args.model, args.alpha)
    return model, parse_element(args.alpha, model)


def cmd_trace(args, ws, out):
    from tlog.submodel import trace_set, _fmt_pos
    model, alpha = _alpha(ws, args)
    sub = parse_sub(model, args.sub)
    tr = trace_set(sub, alpha)
    pairs = [("case", tr.case), ("summary", tr.summary())]
    for p, a, b in tr.listing(args.width):
        for kind, flag in (("psi", a), ("s", b)):
            if flag:
                q, g = tr.witness(kind, p)
                pairs.append(("member", "%s %s q=%s g=%s" % (_fmt_pos(p), kind, format_scalar(q), format_element(g))))
    out.emit(tr.to_text(args.width), pairs)
    return 0


def cmd_classify(args, ws, out):
    from tlog.classify import classify_simple_extension
    if args.example:
        from tlog.pseudolimit import harmonic_example, copy_chain_example, adjoin_pseudolimit
        if args.example == "harmonic":
            spec = harmonic_example(args.max_n or 24)
        else:
            spec = copy_chain_example(args.copies or 10, args.max_n)
        alpha = adjoin_pseudolimit(spec)
        sub = parse_sub(spec.model, args.sub)
    else:
        if not args.alpha:
            raise UsageError("classify needs --alpha or --example")
        model, alpha = _alpha(ws, args)
        sub = parse_sub(model, args.sub)
    rep = classify_simple_extension(sub, alpha)
    pairs = [("terminal", rep.terminal), ("copies", ",".join(rep.copies)),
             ("rho", ",".join(str(c.j) for c in rep.rho)), ("step_cuts", ",".join(str(c.j) for c in rep.cuts)),
             ("final", rep.final.describe())]
    text = rep.to_text(args.width) if args.verbose else rep.summary() + "\nfinal " + rep.final.describe()
    out.emit(text, pairs)
    return 0


def cmd_primitive(args, ws, out):
    from tlog.classify import primitive_strip
    model, alpha = _alpha(ws, args)
    sub = parse_sub(model, args.sub)
    cs = primitive_strip(sub, alpha)
    out.emit("copies: %s" % ", ".join(cs), [("copies", ",".join(cs))])
    return 0


def _shift_spec(ws, args):
    from tlog.shifts import ShiftSpec
    if args.name and not args.eps:
        return ws.shift(args.name)
    if not args.eps:
        raise UsageError("a shift needs --eps (and --cut)")
    model = resolve_model(ws, args.model, args.eps)
    cut = SCut.full() if args.cut in (None, "full", "Psi") else SCut(int(args.cut))
    return ShiftSpec(model, cut, parse_element(args.eps, model))


def cmd_shift(args, ws, out):
    from tlog.shifts import ShiftedCouple, shift_check
    spec = _shift_spec(ws, args)
    if args.save:
        mname = args.model or "shift_%s_model" % args.save
        if not args.model:
            ws.put_model(mname, spec.model)
        ws.shifts[args.save] = {"model": mname, "cut": spec.B.j, "eps": format_element(spec.eps)}
        ws.save()
    sc = ShiftedCouple(spec)
    pairs = [("shift", spec.describe())]
    lines = ["shift %s" % spec.describe()]
    for lit in args.at or []:
        x = parse_element(lit, spec.model)
        v, w = sc.psi(x), sc.s(x)
        lines.append("at %s: psi~ = %s, s~ = %s" % (format_element(x), _val(v), _val(w)))
        pairs.append(("psi~(%s)" % format_element(x), _val(v)))
        pairs.append(("s~(%s)" % format_element(x), _val(w)))
    code = 0
    if args.check:
        rep = shift_check(spec, args.samples, args.seed, t0=True)
        lines.extend(rep.lines())
        pairs.append(("ok", _val(rep.ok)))
        pairs.extend(("clause", ln) for ln in rep.lines()[1:])
    out.emit("\n".join(lines), pairs)
    return code


def cmd_precontraction(args, ws, out):
    from tlog.shifts import PrecontractionView, ShiftedCouple, precontraction_check, chi_collision_demo
    if args.demo:
        rep = chi_collision_demo(samples=args.samples, seed=args.seed)
        out.emit(str(rep), [("ok", _val(rep.ok))] + [("clause", ln) for ln in rep.lines()[1:]])
        return 0
    if args.eps:
        couple = ShiftedCouple(_shift_spec(ws, args))
    else:
        model = resolve_model(ws, args.model, *(args.chi or []))
        couple = Couple(model)
    view = PrecontractionView(couple)
    lines, pairs = [], []
    for lit in args.chi or []:
        x = parse_element(lit, couple.model)
        v = view.chi(x)
        lines.append("chi_PG(%s) = %s" % (format_element(x), _val(v)))
        pairs.append(("chi_PG(%s)" % format_element(x), _val(v)))
    if args.check:
        rep = precontraction_check(view, args.samples, args.seed)
        lines.extend(rep.lines())
        pairs.append(("ok", _val(rep.ok)))
    out.emit("\n".join(lines) or "nothing to do (use --chi, --check or --demo)", pairs)
    return 0


def cmd_check(args, ws, out):
    from tlog.suites import run_suite, SUITES
    if args.suite not in SUITES:
        raise UsageError("unknown suite %r (known: %s)" % (args.suite, ", ".join(sorted(SUITES))))
    rep = run_suite(args.suite, args.samples, args.seed)
    pairs = [("suite", args.suite), ("seed", args.seed), ("samples", args.samples), ("ok", _val(rep.ok))]
    pairs.extend(("clause", ln) for ln in rep.lines()[1:])
    out.emit(str(rep), pairs)
    return 0 if rep.ok else 1


def render_psi(model, width=4):
    """ASCII sticks: the omega ladder, then each copy of Z, then the sup marker."""
    sticks, labels = [], []

    def put(stick, label):
        w = max(len(stick), len(label)) + 1
        sticks.append(stick.ljust(w))
        labels.append(label.ljust(w))

    for n in range(width + 1):
        put("|", "w%d" % n)
    put("...", "")
    for c in model.copies:
        put("...", "")
        for k in range(-width // 2, width // 2 + 1):
            put("|", "%s:%d" % (c, k))
        put("...", "")
    put(":", "sup")
    head = "Psi of %s (left to right; omega ladder, then copies of Z)" % (
        "the prime model" if not model.copies else "omega + " + " + ".join(model.copies))
    return "\n".join([head, "".join(sticks).rstrip(), "".join(labels).rstrip()])


def cmd_render(args, ws, out):
    if args.what != "psi":
        raise UsageError("only 'render psi' is available")
    model = ws.model(args.model) if args.model else Model()
    text = render_psi(model, args.width)
    out.emit(text, [("line", ln) for ln in text.splitlines()])
    return 0


def cmd_repl(args, ws, out, stdin=None):
    """Read lines: `let x = literal`, `model NAME`, `quit`, or a term / formula."""
    stdin = stdin or sys.stdin
    model_name = args.model or "prime"
    model = ws.model(model_name)
    env = Env(Couple(model), ws.bindings(model))
    interactive = stdin.isatty() if hasattr(stdin, "isatty") else False
    while True:
        if interactive:
            out.stream.write("tlog> ")
            out.stream.flush()
        line = stdin.readline()
        if not line:
            break
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line in ("quit", "exit"):
            break
        try:
            if line.startswith("let "):
                name, _, lit = line[4:].partition("=")
                x = evaluate(lit.strip(), env)
                env.bind(name.strip(), x)
                out.emit("%s = %s" % (name.strip(), _val(x)), [(name.strip(), _val(x))])
            elif line.startswith("model "):
                model_name = line.split(None, 1)[1].strip()
                model = ws.model(model_name)
                env = Env(Couple(model), ws.bindings(model))
                out.emit("model %s" % model_name, [("model", model_name)])
            else:
                v = evaluate(line, env)
                out.emit(_val(v), [("value", _val(v))])
        except _MATH_ERRORS + (UsageError,) as e:
            sys.stderr.write("error: %s\n" % e)
    return 0


# argument parsing

def build_parser():
    ap = argparse.ArgumentParser(prog="tlog", description="Exact computation in finitely presented models.")
    ap.add_argument("--workspace", default=os.environ.get("TLOG_WORKSPACE", DEFAULT_WORKSPACE))
    ap.add_argument("--format", choices=("plain", "machine"), default="plain")
    sp = ap.add_subparsers(dest="command", required=True)

    p = sp.add_parser("model", help="create, extend or show a model")
    p.add_argument("action", choices=("new", "extend", "show"))
    p.add_argument("name")
    p.add_argument("--copies", help="comma separated copy ids, in order")
    p.add_argument("--sqrt", type=int, help="adjoin sqrt(d) to the coefficients")
    p.add_argument("--cuts", default="", help="extend: comma separated s-cut indices")
    p.add_argument("--ids", help="extend: ids for the new copies")
    p.add_argument("--as", dest="as_", help="extend: store under a new name")
    p.set_defaults(func=cmd_model)

    p = sp.add_parser("let", help="store a named element")
    p.add_argument("name")
    p.add_argument("literal")
    p.add_argument("--model")
    p.set_defaults(func=cmd_let)

    p = sp.add_parser("eval", help="evaluate a term or quantifier-free formula")
    p.add_argument("expr")
    p.add_argument("--model")
    p.add_argument("--shift", help="evaluate in a stored shifted couple")
    p.add_argument("--bind", action="append", help="name=literal")
    p.set_defaults(func=cmd_eval)

    p = sp.add_parser("sign", help="sign of an element")
    p.add_argument("literal")
    p.add_argument("--model")
    p.set_defaults(func=cmd_sign)

    for name, func, help_ in (("trace", cmd_trace, "trace set of alpha over a submodel"),
                              ("classify", cmd_classify, "classify the simple extension generated by alpha"),
                              ("primitive", cmd_primitive, "recover the copies of a primitive element")):
        p = sp.add_parser(name, help=help_)
        p.add_argument("--alpha")
        p.add_argument("--model")
        p.add_argument("--sub", default="omega", help="omega[+c0+...][/Q]")
        p.add_argument("--width", type=int, default=3)
        if name == "classify":
            p.add_argument("--example", choices=("harmonic", "chain"))
            p.add_argument("--copies", type=int)
            p.add_argument("--max-n", type=int)
            p.add_argument("--verbose", action="store_true")
        p.set_defaults(func=func)

    p = sp.add_parser("shift", help="a (B, eps)-shift of psi")
    p.add_argument("name", nargs="?", help="stored shift to use")
    p.add_argument("--model")
    p.add_argument("--cut", help="s-cut index, or 'full' for all of Psi")
    p.add_argument("--eps")
    p.add_argument("--at", action="append", help="print psi~ and s~ at this element")
    p.add_argument("--check", action="store_true")
    p.add_argument("--save", help="store the shift under this name")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_shift)

    p = sp.add_parser("precontraction", help="the precontraction map chi_PG")
    p.add_argument("--model")
    p.add_argument("--name", help="stored shift")
    p.add_argument("--cut")
    p.add_argument("--eps")
    p.add_argument("--chi", action="append")
    p.add_argument("--check", action="store_true")
    p.add_argument("--demo", action="store_true")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_precontraction)

    p = sp.add_parser("check", help="run a randomized suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check)

    p = sp.add_parser("repl", help="read-eval-print loop")
    p.add_argument("--model")
    p.set_defaults(func=cmd_repl)

    p = sp.add_parser("render", help="ASCII pictures")
    p.add_argument("what", choices=("psi",))
    p.add_argument("--model")
    p.add_argument("--width", type=int, default=4)
    p.set_defaults(func=cmd_render)
    return ap


def run(argv=None, stdout=None, stderr=None):
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    ws = Workspace.load(args.workspace)
    out = Out(args.format, stdout)
    try:
        return args.func(args, ws, out)
    except UsageError as e:
        stderr.write("usage error: %s\n" % e)
        return 2
    except _MATH_ERRORS as e:
        stderr.write("error: %s\n" % e)
        return 1


def main():
    sys.exit(run())
