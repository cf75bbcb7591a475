"""Benchmark the compiled GF(q) polynomial kernels against the pure-Python
fallback, on the raw kernel operations and on a Tate-algorithm workload.

Run:  python benchmarks/bench_kernels.py
"""

import random
import statistics
import time

from padic_deform import kernels
from padic_deform.curves import covariants, tate_algorithm
from padic_deform.errors import SingularEquation
from padic_deform.gf import GF
from padic_deform.localfield import laurent_field


def _time(fn, repeat=5):
    best = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best.append(time.perf_counter() - t0)
    return min(best), statistics.median(best)


def bench_raw(impls):
    print("raw kernels (seconds, min of 5)")
    header = f"{'op':24}{'q':>5}{'len':>6}" + "".join(f"{m.BACKEND:>12}" for m in impls)
    print(header)
    rng = random.Random(0)
    for q_spec in ((2, 1), (5, 1), (3, 2), (5, 2)):
        field = GF(*q_spec)
        mul_t, add_t, neg_t, inv_t = field.tables
        for size in (16, 64, 256):
            a = [rng.randrange(field.q) for _ in range(size)]
            b = [rng.randrange(field.q) for _ in range(size)]
            a[0] = 1
            row = f"{'poly_mul x200':24}{field.q:>5}{size:>6}"
            for impl in impls:
                t, _ = _time(lambda m=impl: [m.poly_mul(a, b, -1, field.q, mul_t, add_t)
                                             for _ in range(200)])
                row += f"{t:>12.4f}"
            print(row)
            row = f"{'series_inv x200':24}{field.q:>5}{size:>6}"
            for impl in impls:
                t, _ = _time(lambda m=impl: [m.series_inv(a, size, field.q, mul_t,
                                                          add_t, neg_t, inv_t)
                                             for _ in range(200)])
                row += f"{t:>12.4f}"
            print(row)


def bench_tate(impls):
    print("\nTate's algorithm over F_25((t)), 40 random curves (seconds)")
    field = laurent_field(5, 2, prec=96)

    def workload():
        rng = random.Random(7)
        done = 0
        while done < 40:
            coeffs = [field.from_coeff_map({i: rng.randrange(25) for i in range(6)})
                      for _ in range(5)]
            try:
                eq = covariants(*coeffs)
            except SingularEquation:
                continue
            tate_algorithm(eq)
            done += 1

    for impl in impls:
        kernels.poly_mul = impl.poly_mul
        kernels.series_inv = impl.series_inv
        t, _ = _time(workload, repeat=3)
        print(f"  {impl.BACKEND:>10}: {t:.3f}")
    # restore the default selection
    kernels.poly_mul = impls[-1].poly_mul
    kernels.series_inv = impls[-1].series_inv


def main():
    impls = kernels.implementations()
    names = ", ".join(m.BACKEND for m in impls)
    print(f"available kernel backends: {names} (selected: {kernels.BACKEND})\n")
    bench_raw(impls)
    bench_tate(impls)


if __name__ == "__main__":
    main()
