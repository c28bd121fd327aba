"""Compiled vs pure-Python kernels.

Micro-benchmarks call both kernel modules directly; the end-to-end rows
run a fixed workload in a subprocess per backend (SKEWINTERP_PURE=1 forces
the fallback).

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from skewinterp import _kernels_py as pure

try:
    from skewinterp import _kernels as compiled
except ImportError:
    compiled = None

WORKLOAD = """
import random, time
from skewinterp import randgen as rg, solve_atsp, solve_tsp, TwoSidedData, lrcm
from skewinterp.poly import eval_tangential, two_sided_eval
rng = random.Random(0)
t0 = time.perf_counter()
for _ in range(30):
    n, k = 3, 3
    A, v = rg.controllable_pair(rng, n)
    u, B = rg.observable_pair(rng, k)
    f0 = rg.poly(rng, n + k - 1, 5)
    b, d = eval_tangential(v, f0, A, "left"), eval_tangential(u, f0, B, "right")
    solve_tsp(TwoSidedData(A, v, u, B, b=b, d=d))
    solve_atsp(TwoSidedData(A, v, u, B, b=b, d=d, S=two_sided_eval(v, f0, u, A, B)))
for _ in range(30):
    lrcm([rg.poly(rng, 3, 5, monic=True) for _ in range(3)])
print(time.perf_counter() - t0)
"""


def rand_q(rng):
    return pure.qnorm(*(rng.randint(-99, 99) for _ in range(4)), rng.randint(1, 99))


def micro(mod, repeat):
    rng = random.Random(1)
    xs = [rand_q(rng) for _ in range(64)]
    ys = [rand_q(rng) for _ in range(64)]
    rows = [[Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(16)] for _ in range(12)]
    cases = {
        "qmul x64": lambda: [mod.qmul(x, y) for x, y in zip(xs, ys)],
        "qadd x64": lambda: [mod.qadd(x, y) for x, y in zip(xs, ys)],
        "qdot len 64": lambda: mod.qdot(xs, ys),
        "rref 12x16": lambda: mod.rref(rows, 16),
    }
    return {name: min(timeit.repeat(fn, number=50, repeat=repeat)) / 50 for name, fn in cases.items()}


def end_to_end(pure_flag):
    env = dict(os.environ, SKEWINTERP_PURE="1" if pure_flag else "0")
    out = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if compiled is None:
        sys.exit("compiled kernels not built; run `pip install -e . --no-build-isolation`")
    p, c = micro(pure, args.repeat), micro(compiled, args.repeat)
    print(f"{'kernel':<14}{'python (us)':>14}{'cython (us)':>14}{'speedup':>10}")
    for name in p:
        print(f"{name:<14}{p[name] * 1e6:>14.1f}{c[name] * 1e6:>14.1f}{p[name] / c[name]:>9.2f}x")
    tp, tc = end_to_end(True), end_to_end(False)
    print(f"{'end-to-end':<14}{tp * 1e3:>12.0f}ms{tc * 1e3:>12.0f}ms{tp / tc:>9.2f}x")


if __name__ == "__main__":
    main()
