import io
import json
import subprocess
import sys

import pytest

from tlog.cli import run, Workspace, render_psi
from tlog.couple import Model
from tlog.psi_order import PsiOrder


def call(argv, ws=None, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if ws is not None:
        argv = ["--workspace", str(ws)] + argv
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def ws(tmp_path):
    return tmp_path / "ws.json"


def test_eval_prints_e0(ws):
    assert call(["eval", "psi(e0+e1)"], ws) == (0, "e0\n", "")


def test_trace_example_one(ws):
    code, out, _ = call(["trace", "--sub", "omega/Q", "--alpha", "sqrt2*e2"], ws)
    assert code == 0
    assert "members {s0, s^2 0, s^3 0}" in out
    assert out.count("member s") == 6


def test_machine_format(ws):
    code, out, _ = call(["--format", "machine", "sign", "--", "-e0+b[c0,0]"], ws)
    assert code == 0 and out == "sign=1\n"


def test_exit_codes(ws):
    assert call(["eval", "psi(e0"], ws)[0] == 1
    assert call(["shift", "--cut", "0", "--eps", "e1"], ws)[0] == 1
    assert call(["eval", "psi(x)", "--model", "nosuch"], ws)[0] == 2
    assert call(["frobnicate"], ws)[0] == 2
    assert call(["check", "--suite", "nosuch"], ws)[0] == 2


def test_check_is_deterministic(ws):
    a = call(["check", "--suite", "axioms", "--samples", "300", "--seed", "7"], ws)
    b = call(["check", "--suite", "axioms", "--samples", "300", "--seed", "7"], ws)
    assert a == b and a[0] == 0 and "seed=7" in a[1]


def test_check_deterministic_across_processes(tmp_path):
    outs = []
    for _ in range(2):
        r = subprocess.run([sys.executable, "-m", "tlog", "check", "--suite", "trace", "--samples", "5",
                            "--seed", "3"], capture_output=True, cwd=tmp_path)
        outs.append(r.stdout)
    assert outs[0] == outs[1] and outs[0]


def test_workspace_round_trip(ws):
    assert call(["model", "new", "m", "--copies", "c0,c1", "--sqrt", "2"], ws)[0] == 0
    assert call(["let", "x", "sqrt(2)*b[c0,1] - 1/3*e4", "--model", "m"], ws)[0] == 0
    assert call(["model", "extend", "m", "--cuts", "1", "--ids", "n", "--as", "m2"], ws)[0] == 0
    text = ws.read_text()
    w = Workspace.load(str(ws))
    assert w.to_json() + "\n" == text
    assert set(json.loads(text)) == {"models", "elements", "shifts"}
    x = w.element("x")
    assert x.model == Model(PsiOrder(["c0", "c1"]), 2)
    assert w.model("m2").copies == ("c0", "n", "c1")
    from tlog.lang import format_element
    assert call(["eval", "x", "--model", "m"], ws)[1] == format_element(x) + "\n"
    assert call(["eval", "s(x)", "--model", "m"], ws)[1] == "e0\n"


def test_stored_shift(ws):
    call(["model", "new", "m", "--copies", "c0,c1"], ws)
    code, out, _ = call(["shift", "--model", "m", "--cut", "1", "--eps", "b[c1,0]-b[c1,5]", "--save", "sh"], ws)
    assert code == 0
    assert call(["eval", "psi(b[c1,0]-b[c1,1])", "--shift", "sh"], ws)[1] == "b[c1,0] + b[c1,1] - b[c1,5]\n"


def test_classify_and_primitive(ws):
    code, out, _ = call(["--format", "machine", "classify", "--alpha", "b[c1,0]-b[c0,0]"], ws)
    assert "terminal=InSpan" in out and "copies=c0,c1" in out
    code, out, _ = call(["primitive", "--alpha", "5*e3+b[c1,2]", "--model", "three"], ws)
    assert code == 2
    call(["model", "new", "three", "--copies", "c0,c1,c2"], ws)
    assert call(["primitive", "--alpha", "5*e3+b[c1,2]", "--model", "three"], ws)[1] == "copies: c1\n"
    code, out, _ = call(["classify", "--example", "chain", "--copies", "3"], ws)
    assert out.startswith("SpanPlusQAlpha after adjoining [c0@0, c1@0, c2@0]")


def test_precontraction_output(ws):
    code, out, _ = call(["precontraction", "--chi=-e0", "--chi", "e0"], ws)
    assert out == "chi_PG(-e0) = -e1\nchi_PG(e0) = e1\n"


def test_render_ladder_and_extension(ws):
    text = render_psi(Model(), 4)
    labels = text.splitlines()[2].split()
    assert labels[:5] == ["w0", "w1", "w2", "w3", "w4"] and labels[-1] == "sup"
    call(["model", "new", "m", "--copies", "c0"], ws)
    call(["model", "extend", "m", "--cuts", "0,1", "--ids", "a,b"], ws)
    _, out, _ = call(["render", "psi", "--model", "m", "--width", "2"], ws)
    labels = out.splitlines()[2].split()
    firsts = [l.split(":")[0] for l in labels if ":" in l]
    order = [c for i, c in enumerate(firsts) if c not in firsts[:i]]
    assert order == ["a", "c0", "b"]


def test_repl(ws, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("let y = e0 + e1\npsi(y)\ns(0) < e0 + e0\nquit\n"))
    code, out, _ = call(["repl"], ws)
    assert code == 0
    assert out.splitlines() == ["y = e0 + e1", "e0", "true"]
