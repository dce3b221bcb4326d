#!/usr/bin/env python3
"""Micro-benchmarks for the transform hot kernels.

Compares the compiled extension (rankmra._speedups) with the pure numpy
fallback (rankmra._kernels_py) on the three kernels the transform dispatches
through: row ranking, the high-pass scatter used above the gather cutoff, and
the synthesis window accumulation. Each case is checked for agreement between
the two implementations before the timings are reported; when the extension
is not built only the numpy column is shown.

Usage:
    python3 benchmarks/bench_kernels.py [--repeats N] [--seed S]
"""

from __future__ import annotations

import argparse
import math
from itertools import combinations
from time import perf_counter

import numpy as np

from rankmra import _kernels_py, _perm

try:
    from rankmra import _speedups
except ImportError:
    _speedups = None


def best_of(repeats: int, fn) -> float:
    best = math.inf
    for _ in range(repeats):
        start = perf_counter()
        fn()
        best = min(best, perf_counter() - start)
    return best


def rank_rows_case(rng, k, m):
    words = np.ascontiguousarray(np.argsort(rng.random((m, k)), axis=1).astype(np.int64))

    def run(impl):
        return impl.rank_rows(words)

    return f"rank_rows k={k} m={m}", run


def scatter_case(rng, j, sources):
    row = rng.normal(size=math.factorial(j))
    pinv = _perm.inverse_perms(j)
    pwords = _perm.perms(j)
    ranks = np.ascontiguousarray(
        rng.choice(math.factorial(j), size=sources, replace=False).astype(np.int64)
    )
    vals = rng.normal(size=sources)

    def run(impl):
        out = np.zeros(math.factorial(j))
        impl.scatter_rowwise(out, row, pinv, pwords, ranks, vals)
        return out

    return f"scatter_rowwise j={j} sources={sources}", run


def window_case(rng, k):
    length = max(2, k - 2)
    pwords = _perm.perms(k)
    vals = rng.normal(size=(math.comb(k, length), math.factorial(length)))
    slot_by_mask = np.zeros(1 << k, dtype=np.int64)
    for slot, b in enumerate(combinations(range(k), length)):
        slot_by_mask[sum(1 << pos for pos in b)] = slot
    weight = 1.0 / math.factorial(k - length + 1)

    def run(impl):
        out = np.zeros(math.factorial(k))
        impl.window_accumulate(out, pwords, 0, length - 1, slot_by_mask, vals, weight)
        return out

    return f"window_accumulate k={k} len={length}", run


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5, help="timing repeats (best-of)")
    parser.add_argument("--seed", type=int, default=7, help="input generator seed")
    args = parser.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    cases = [
        rank_rows_case(rng, 7, 20000),
        rank_rows_case(rng, 8, 40320),
        scatter_case(rng, 7, 32),
        scatter_case(rng, 8, 8),
        window_case(rng, 5),
        window_case(rng, 6),
        window_case(rng, 7),
        window_case(rng, 8),
    ]

    if _speedups is None:
        print("compiled extension not built; timing the numpy fallback only")
    width = max(len(label) for label, _ in cases)
    header = f"{'kernel':<{width}}  {'numpy':>11}  {'compiled':>11}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, run in cases:
        if _speedups is not None:
            dev = np.abs(
                np.asarray(run(_speedups), dtype=float)
                - np.asarray(run(_kernels_py), dtype=float)
            ).max()
            if dev > 1e-9:
                raise SystemExit(f"{label}: backends disagree by {dev:.3e}")
        base = best_of(args.repeats, lambda: run(_kernels_py))
        line = f"{label:<{width}}  {base * 1e3:9.3f}ms"
        if _speedups is not None:
            fast = best_of(args.repeats, lambda: run(_speedups))
            line += f"  {fast * 1e3:9.3f}ms  {base / fast:7.1f}x"
        else:
            line += f"  {'-':>11}  {'-':>8}"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
