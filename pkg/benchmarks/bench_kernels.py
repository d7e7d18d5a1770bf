"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--n 2000] [--repeat 5]

Both backends run on the same random term vectors; results are checked equal
before timing.
"""
import argparse
import random
import timeit

from tlog import _purekernels as pure
from tlog.couple import Model
from tlog.psi_order import PsiOrder
from tlog.sampling import random_element

try:
    from tlog import _core as core
except ImportError:
    core = None

KERNELS = ("vec_add", "vec_sub", "vec_neg", "vec_sign", "vec_total", "psi_key", "s_key", "vec_cmp", "vec_scale")


def workload(n, seed=0):
    rng = random.Random(seed)
    models = [Model(PsiOrder(["c0", "c1", "c2"])), Model(PsiOrder(["c0"]), 2)]
    pairs = []
    for i in range(n):
        m = models[i % 2]
        x = random_element(rng, m, max_terms=8)
        y = random_element(rng, m, max_terms=8)
        pairs.append((x.terms, y.terms))
    return pairs


def calls(mod, name, pairs):
    f = getattr(mod, name)
    if name in ("vec_add", "vec_sub", "vec_cmp"):
        return lambda: [f(u, v) for u, v in pairs]
    if name == "vec_scale":
        return lambda: [f(u, 3) for u, _ in pairs]
    if name in ("psi_key", "s_key"):
        return lambda: [f(u) for u, _ in pairs if u]
    return lambda: [f(u) for u, _ in pairs]


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    pairs = workload(args.n)
    if core is None:
        print("compiled extension not built; only the fallback is available")
    print("%-10s %12s %12s %8s" % ("kernel", "python ms", "compiled ms", "speedup"))
    for name in KERNELS:
        tp = min(timeit.repeat(calls(pure, name, pairs), number=1, repeat=args.repeat)) * 1e3
        if core is None:
            print("%-10s %12.2f %12s %8s" % (name, tp, "-", "-"))
            continue
        if calls(pure, name, pairs)() != calls(core, name, pairs)():
            raise SystemExit("backends disagree on %s" % name)
        tc = min(timeit.repeat(calls(core, name, pairs), number=1, repeat=args.repeat)) * 1e3
        print("%-10s %12.2f %12.2f %7.1fx" % (name, tp, tc, tp / tc))


if __name__ == "__main__":
    main()
