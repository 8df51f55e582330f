"""Benchmark the compiled elimination kernels against the pure-Python twin.

Runs Smith and Hermite reductions over two matrix families: dense random
matrices with small entries (the law-suite workload) and sparse
block-structured cochain differentials (the cohomology workload).

    python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import time

from upic import _kernels_py

try:
    from upic import _kernels as compiled
except ImportError:
    compiled = None

from upic.cohomology import cochain_differential
from upic.groups import FiniteGroup
from upic.modules import regular_module


def dense_cases(rng):
    out = []
    for size in (10, 20, 30):
        m = [[rng.randint(-9, 9) for _ in range(size)] for _ in range(size)]
        out.append((f"dense {size}x{size}", m))
    return out


def cochain_cases():
    out = []
    for n, p in ((4, 2), (6, 2)):
        g = FiniteGroup.cyclic(n)
        d = cochain_differential(g, regular_module(g), p).to_dense()
        out.append((f"cochain d{p} |G|={n} ({d.rows}x{d.cols})", d.data))
    return out


def time_call(fn, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    rng = random.Random(0)
    cases = dense_cases(rng) + cochain_cases()

    backends = [("pure", _kernels_py)]
    if compiled is not None:
        backends.append(("compiled", compiled))
    else:
        print("compiled backend unavailable; showing pure timings only")

    header = f"{'case':36} {'op':4} " + " ".join(f"{name:>10}" for name, _ in backends)
    if len(backends) == 2:
        header += f" {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for label, rows in cases:
        m, n = len(rows), len(rows[0]) if rows else 0
        for op_name, call in (
            ("snf", lambda k: k.snf(rows, m, n, True)),
            ("hnf", lambda k: k.hnf_cols(rows, m, n)),
        ):
            times = [time_call(lambda k=kmod: call(k), args.repeat) for _, kmod in backends]
            line = f"{label:36} {op_name:4} " + " ".join(f"{t * 1000:9.2f}ms" for t in times)
            if len(times) == 2 and times[1] > 0:
                line += f" {times[0] / times[1]:8.1f}x"
            print(line)

    if compiled is not None:
        sample = [[rng.randint(-9, 9) for _ in range(12)] for _ in range(9)]
        assert compiled.snf(sample, 9, 12, True) == _kernels_py.snf(sample, 9, 12, True)
        assert compiled.hnf_cols(sample, 9, 12) == _kernels_py.hnf_cols(sample, 9, 12)
        print("\nbackends agree on a sample input")


if __name__ == "__main__":
    main()
