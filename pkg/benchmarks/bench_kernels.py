"""Compare the compiled and pure-Python coefficient kernels.

Run with ``python3 benchmarks/bench_kernels.py``.  The first table times each
kernel in isolation on small (machine-word) and large integers; the second
runs a short end-to-end workload in subprocesses with ``HOLODIFF_PURE`` unset
and set, so the backend is chosen exactly as in normal use.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from holodiff.arith import _kernels_py as pure

try:
    from holodiff.arith import _ckernels as compiled
except ImportError:
    compiled = None


def _vec(rng, n, bits):
    return [rng.randrange(-(1 << bits), 1 << bits) for _ in range(n)]


def kernel_cases(rng, n, bits):
    a, b = _vec(rng, n, bits), _vec(rng, n, bits)
    b[-1] = b[-1] or 1
    u = _vec(rng, n, bits)
    u[0] = 1
    return {
        "conv": lambda k: k.conv(a, b),
        "conv_trunc": lambda k: k.conv_trunc(a, b, n),
        "axpy": lambda k: k.axpy(3, a, -5, b),
        "content": lambda k: k.content(a),
        "taylor_shift": lambda k: k.taylor_shift(a, 3),
        "pseudo_divmod": lambda k: k.pseudo_divmod(a + a, b),
        "inv_series": lambda k: k.inv_series(u, n),
    }


def time_call(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 4
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


WORKLOAD = """
import random, time
from fractions import Fraction
from holodiff.arith import Poly, PolyMatrix, RatFunc, kernels, laurent_expand, smith_normal_form
from holodiff.factorization import factor_rational

rng = random.Random(1)
t = time.perf_counter()
z = Poly.z()
for _ in range(20):
    f = RatFunc(Poly([rng.randint(-9, 9) for _ in range(6)]), Poly([1] + [rng.randint(-9, 9) for _ in range(5)]))
    laurent_expand(f, Fraction(1, 2), 1000)
for _ in range(10):
    M = PolyMatrix([[Poly([rng.randint(-5, 5) for _ in range(4)]) for _ in range(3)] for _ in range(3)])
    smith_normal_form(M)
B = [[RatFunc(Poly([1, 2, 1]), Poly([1, -1, 0, 1])), RatFunc(Poly([1]), z * (z - 1))],
     [RatFunc(Poly([3, 1])), RatFunc(Poly([2, 0, 1]), Poly([1, 1]))]]
factor_rational(B, 128, 0)
print(kernels.BACKEND, time.perf_counter() - t)
"""


def workload(pure_flag):
    env = dict(os.environ)
    if pure_flag:
        env["HOLODIFF_PURE"] = "1"
    else:
        env.pop("HOLODIFF_PURE", None)
    out = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, check=True,
                         capture_output=True, text=True).stdout.split()
    return out[0], float(out[1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=64, help="coefficient vector length")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if compiled is None:
        print("compiled kernels are not built; only the pure-Python backend is available")
    rng = random.Random(0)
    print(f"{'kernel':<15}{'bits':>6}{'python (us)':>14}{'cython (us)':>14}{'speedup':>10}")
    for bits in (20, 200):
        cases = kernel_cases(rng, args.size, bits)
        for name, call in cases.items():
            tp = time_call(lambda: call(pure), args.repeat) * 1e6
            if compiled is None:
                print(f"{name:<15}{bits:>6}{tp:>14.1f}{'-':>14}{'-':>10}")
                continue
            tc = time_call(lambda: call(compiled), args.repeat) * 1e6
            print(f"{name:<15}{bits:>6}{tp:>14.1f}{tc:>14.1f}{tp / tc:>9.1f}x")
    print()
    for flag in (False, True):
        backend, seconds = workload(flag)
        print(f"end-to-end workload, {backend:>6} kernels: {seconds:.2f} s")


if __name__ == "__main__":
    main()
