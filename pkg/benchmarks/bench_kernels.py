#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the two hot kernels (exact RREF and matrix multiply) on random
rational matrices, then a realistic end-to-end workload (full invariant
profiles of shifted products of a generated triple) under each backend.

Run from the repository root after building the extension in place:

    python benchmarks/bench_kernels.py [--sizes 6 10 16] [--repeat 40]
"""

import argparse
import importlib
import os
import random
import sys
import time
from fractions import Fraction


def _rand_flat(rng, size, bound=9):
    return [Fraction(rng.randint(-bound, bound), rng.randint(1, 7))
            for _ in range(size)]


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(impls, sizes, repeat):
    rng = random.Random(1234)
    rows = []
    for n in sizes:
        data = _rand_flat(rng, n * n)
        a = _rand_flat(rng, n * n)
        b = _rand_flat(rng, n * n)
        row = {"op": f"rref {n}x{n}"}
        results = {}
        for name, impl in impls.items():
            row[name] = _time(lambda: impl.rref(n, n, list(data)), repeat)
            results[name] = impl.rref(n, n, list(data))
        assert len({repr(v) for v in results.values()}) == 1, "backends disagree"
        rows.append(row)
        row = {"op": f"matmul {n}x{n}"}
        results = {}
        for name, impl in impls.items():
            row[name] = _time(lambda: impl.matmul(n, n, n, a, b), repeat)
            results[name] = impl.matmul(n, n, n, a, b)
        assert len({repr(v) for v in results.values()}) == 1, "backends disagree"
        rows.append(row)
    return rows


def bench_workload(repeat):
    """Full invariant profiles of AC - lam and BA - lam under each backend."""
    rows = []
    timings = {}
    for name, env in (("python", "1"), ("cython", "")):
        os.environ["RATSPEC_PURE"] = env
        for mod in [m for m in list(sys.modules) if m.startswith("ratspec")]:
            del sys.modules[mod]
        kernels = importlib.import_module("ratspec.kernels")
        if kernels.BACKEND != name:
            continue  # extension not built
        from ratspec.genlab import GenSpec, generate
        from ratspec.invariants import profile

        t = generate(GenSpec(template="aba_eq_aca", block_dim=6, seed=5))

        def work():
            for lam in (Fraction(1), Fraction(2), Fraction(1, 2)):
                profile(t.ac.shifted(lam))
                profile(t.ba.shifted(lam))

        timings[name] = _time(work, max(1, repeat // 10))
    os.environ.pop("RATSPEC_PURE", None)
    if timings:
        rows.append({"op": "profile workload", **timings})
    return rows


def render(rows, names):
    width = max(len(r["op"]) for r in rows) + 2
    header = "op".ljust(width) + "".join(f"{n:>12}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for r in rows:
        line = r["op"].ljust(width)
        for n in names:
            line += f"{r[n] * 1e3:>10.3f}ms" if n in r else f"{'n/a':>12}"
        if len(names) == 2 and all(n in r for n in names):
            line += f"{r[names[0]] / r[names[1]]:>9.2f}x"
        print(line)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[6, 10, 16])
    parser.add_argument("--repeat", type=int, default=30)
    args = parser.parse_args()

    from ratspec import _kernels_py
    impls = {"python": _kernels_py}
    try:
        from ratspec import _kernels
        impls["cython"] = _kernels
    except ImportError:
        print("note: compiled kernels not built; timing pure Python only\n")

    rows = bench_kernels(impls, args.sizes, args.repeat)
    rows += bench_workload(args.repeat)
    render(rows, list(impls))


if __name__ == "__main__":
    main()
