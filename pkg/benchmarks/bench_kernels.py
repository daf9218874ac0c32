"""Compare the compiled and numpy kernel backends.

Usage: python3 benchmarks/bench_kernels.py [--repeat R]
"""

import argparse
import time

import numpy as np

from ldinterp._backend import available_backends, get_kernels
from ldinterp.analysis import lebesgue_constant
from ldinterp.nodes import LissajousParams

CASES = [(10, 1), (20, 21), (40, 1), (30, 151), (50, 351)]


def best_of(func, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = func()
        times.append(time.perf_counter() - t0)
    return min(times), value


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    backends = available_backends()
    print(f"backends: {', '.join(backends)}")

    print("\nLebesgue constant, 201x201 grid plus node lines")
    print(f"{'n':>4} {'p':>4} " + " ".join(f"{b:>12}" for b in backends) + "   speedup  max |diff|")
    for n, p in CASES:
        params = LissajousParams(n, p)
        res = {b: best_of(lambda b=b: lebesgue_constant(params, backend=b).value, args.repeat) for b in backends}
        times = " ".join(f"{res[b][0]:11.4f}s" for b in backends)
        speed = res["python"][0] / res[backends[0]][0]
        diff = max(abs(res[b][1] - res["python"][1]) for b in backends)
        print(f"{n:>4} {p:>4} {times} {speed:9.2f}x  {diff:.1e}")

    print("\nClenshaw series evaluation, 10^5 points")
    rng = np.random.default_rng(0)
    x, y = rng.uniform(-1, 1, (2, 100_000))
    for shape in [(8, 8), (40, 41), (120, 60)]:
        c = rng.standard_normal(shape)
        res = {b: best_of(lambda b=b: get_kernels(b).clenshaw2d(c, x, y), args.repeat) for b in backends}
        times = " ".join(f"{res[b][0]:11.4f}s" for b in backends)
        diff = max(float(np.max(np.abs(res[b][1] - res["python"][1]))) for b in backends)
        print(f"{str(shape):>9} {times} {res['python'][0] / res[backends[0]][0]:9.2f}x  {diff:.1e}")


if __name__ == "__main__":
    main()
