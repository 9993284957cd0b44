"""Benchmark the compiled kernels against the pure-Python fallback.

Run: python3 benchmarks/bench_kernels.py
"""

from __future__ import annotations

import random
import string
import time

import numpy as np

from biradscheck._kernels import HAVE_NATIVE, _pyfallback

if HAVE_NATIVE:
    from biradscheck._kernels import _native


def timeit(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - started)
    return best


def bench_levenshtein(rng):
    words = [
        "".join(rng.choice(string.ascii_lowercase) for _ in range(rng.randint(4, 14)))
        for _ in range(400)
    ]
    pairs = [(rng.choice(words), rng.choice(words)) for _ in range(20_000)]

    def run(impl):
        def inner():
            for a, b in pairs:
                impl.levenshtein(a, b)

        return inner

    return "levenshtein (20k word pairs)", run


def bench_assignment(rng):
    matrices = [
        np.ascontiguousarray(-np.random.default_rng(seed).random((12, 12)))
        for seed in range(400)
    ]

    def run(impl):
        def inner():
            for m in matrices:
                impl.solve_assignment(m)

        return inner

    return "assignment (400 solves, 12x12)", run


def main():
    rng = random.Random(1)
    rows = []
    for make in (bench_levenshtein, bench_assignment):
        label, run = make(rng)
        pure = timeit(run(_pyfallback))
        if HAVE_NATIVE:
            native = timeit(run(_native))
            rows.append((label, pure, native, pure / native))
        else:
            rows.append((label, pure, None, None))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'pure (s)':>10}  {'native (s)':>10}  {'speedup':>8}")
    for label, pure, native, speedup in rows:
        if native is None:
            print(f"{label:<{width}}  {pure:>10.3f}  {'n/a':>10}  {'n/a':>8}")
        else:
            print(f"{label:<{width}}  {pure:>10.3f}  {native:>10.3f}  {speedup:>7.1f}x")
    if not HAVE_NATIVE:
        print("\ncompiled extension not built; showing fallback timings only")


if __name__ == "__main__":
    main()
