"""Compare the compiled kernels against the pure-Python reference.

Runs the three hot loops on realistic sizes (series precision 64-256 over
exact rationals) and a small end-to-end trivialization, with both backends.

    python benchmarks/bench_kernels.py
"""

import os
import subprocess
import sys
import time
from fractions import Fraction


def bench_kernels(tag):
    from semilaurent import kernels
    from semilaurent.rng import SplitMix64

    rng = SplitMix64(0)
    sizes = (64, 128, 256)
    print(f"[{tag}] kernel implementation: {kernels.IMPLEMENTATION}")
    for n in sizes:
        a = [Fraction(rng.randint(-99, 99), rng.randint(1, 9)) for _ in range(n)]
        b = [Fraction(rng.randint(-99, 99), rng.randint(1, 9)) for _ in range(n)]
        t0 = time.perf_counter()
        reps = max(1, 20000 // n)
        for _ in range(reps):
            kernels.convolve_trunc(a, b, n, Fraction(0))
        dt = (time.perf_counter() - t0) / reps
        t0 = time.perf_counter()
        for _ in range(reps):
            kernels.invert_unit_trunc(a if a[0] else [Fraction(1)] + a[1:], n, Fraction(1))
        dt2 = (time.perf_counter() - t0) / reps
        print(f"[{tag}] n={n:4d}  convolve {dt * 1e3:8.3f} ms   invert {dt2 * 1e3:8.3f} ms")


def bench_pipeline(tag):
    from semilaurent.cocycles import Semigroup
    from semilaurent.corpus import round_trip_case
    from semilaurent.localsolve import trivialize
    from semilaurent.scalars import FieldDescriptor

    q = FieldDescriptor.rationals()
    s = Semigroup([2, 3])
    t0 = time.perf_counter()
    for seed in range(6):
        _, _, c = round_trip_case(s, q, 2, seed, 64)
        trivialize(c, target_prec=64, seed=seed)
    dt = time.perf_counter() - t0
    print(f"[{tag}] 6 trivializations (N=2, prec 64): {dt:6.2f} s")


def main():
    if os.environ.get("SEMILAURENT_PURE") == "1":
        tag = "pure-python"
        bench_kernels(tag)
        bench_pipeline(tag)
        return
    # run self twice: compiled (default) then pure fallback in a subprocess
    bench_kernels("compiled")
    bench_pipeline("compiled")
    sys.stdout.flush()
    env = dict(os.environ, SEMILAURENT_PURE="1")
    subprocess.run([sys.executable, __file__], env=env, check=True)


if __name__ == "__main__":
    main()
