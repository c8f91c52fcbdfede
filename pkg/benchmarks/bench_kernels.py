"""Compare the GMP extension with the pure-Python kernels.

Kernel timings call both modules directly on the same random integer
data. The end-to-end timing runs one LP through the whole reduction chain
in a subprocess per backend (selected with MINNORM_BACKEND).

    python3 benchmarks/bench_kernels.py [--sizes 8 16 24] [--digits 50 500 3000]
"""
import argparse
import os
import random
import subprocess
import sys
import time

from minnorm import _kernels_py

try:
    from minnorm import _kernels as _kernels_gmp
except ImportError:
    _kernels_gmp = None

E2E = (
    "import time;"
    "from minnorm.reductions import LPInstance, solve_lp;"
    "from minnorm.kernels import BACKEND;"
    "lp = LPInstance([[1, 0], [0, 1], [-1, 0], [0, -1]], [1, 1, 0, 0], [1, 1]);"
    "t = time.perf_counter(); solve_lp(lp);"
    "print(BACKEND, time.perf_counter() - t)"
)


def _rand_matrix(rng, n, digits):
    hi = 10 ** digits
    return [[rng.randrange(-hi, hi) for _ in range(n)] for _ in range(n)]


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def bench_kernels(sizes, digits, repeat):
    rng = random.Random(0)
    print(f"{'op':<6} {'n':>4} {'digits':>7} {'python s':>10} {'gmp s':>10} {'speedup':>8}")
    for n in sizes:
        for dg in digits:
            m = _rand_matrix(rng, n, dg)
            rhs = [row[0] for row in m]
            cases = [
                ("gram", lambda k: k.gram(m)),
                ("solve", lambda k: k.solve(m, rhs)),
                ("rank", lambda k: k.rank(m)),
            ]
            for name, call in cases:
                tp = _best(lambda: call(_kernels_py), repeat)
                if _kernels_gmp is None:
                    print(f"{name:<6} {n:>4} {dg:>7} {tp:>10.4f} {'-':>10} {'-':>8}")
                    continue
                tg = _best(lambda: call(_kernels_gmp), repeat)
                print(f"{name:<6} {n:>4} {dg:>7} {tp:>10.4f} {tg:>10.4f} {tp / tg:>7.1f}x")


def bench_end_to_end():
    for backend in ("gmp", "python"):
        env = dict(os.environ, MINNORM_BACKEND=backend)
        out = subprocess.run([sys.executable, "-c", E2E], env=env,
                             capture_output=True, text=True, check=True).stdout.split()
        print(f"unit-box LP through the chain: backend={out[0]:<6} {float(out[1]):.2f}s")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 24])
    ap.add_argument("--digits", type=int, nargs="+", default=[50, 500, 3000])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-e2e", action="store_true")
    args = ap.parse_args()
    bench_kernels(args.sizes, args.digits, args.repeat)
    if not args.skip_e2e:
        bench_end_to_end()


if __name__ == "__main__":
    main()
