"""Compare the compiled and pure-Python kernels on identical inputs.

    python benchmarks/bench_kernels.py [--repeat 3]

Every timed call is also checked for identical output across backends.
"""
import argparse
import time

import numpy as np

from jointcount import _accel
from jointcount.generators import _spanning_directions


def _best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def cases(rng):
    for k in (40, 80, 160):
        dirs = [tuple(d) for d in _spanning_directions(k, k, max(8, 2 * k))]
        yield f"spanning triples, k={k}", lambda b, d=dirs: _accel.count_spanning_triples(d, backend=b)
    for n, s in ((10_000, 16), (100_000, 64)):
        vals = rng.standard_normal(n)
        labels = rng.integers(0, s, n)
        halves = (np.bincount(labels, minlength=s) + 1) // 2
        yield (f"sign discrepancy, n={n}",
               lambda b, v=vals, lab=labels, h=halves: _accel.sign_discrepancy(v, lab, h, 0.0, backend=b)[0])
        signs = np.where(vals > 0, 1, -1)
        order = rng.permutation(n)
        yield (f"circle sweep, n={n}",
               lambda b, o=order, sg=signs, lab=labels, h=halves: tuple(_accel.sweep_discrepancy(o, sg, lab, h, backend=b)[::997]))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _accel._compiled is None:
        print("compiled kernels unavailable; only the Python backend can run")
    rng = np.random.default_rng(0)
    print(f"{'kernel':32s} {'python (s)':>12s} {'cython (s)':>12s} {'speedup':>9s}")
    for name, fn in cases(rng):
        tp, out_p = _best_of(lambda: fn("python"), args.repeat)
        if _accel._compiled is None:
            print(f"{name:32s} {tp:12.5f} {'-':>12s} {'-':>9s}")
            continue
        tc, out_c = _best_of(lambda: fn("cython"), args.repeat)
        assert out_p == out_c, f"backends disagree on {name}"
        print(f"{name:32s} {tp:12.5f} {tc:12.5f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
