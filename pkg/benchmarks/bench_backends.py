"""Compare the compiled and pure-Python term-map kernels.

Two views: raw kernel calls on synthetic operands (both backends in one
process), and an end-to-end identity-suite run per backend in separate
processes, selected with HFIB_BACKEND.

Run:  python3 benchmarks/bench_backends.py [--repeat N]
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

from hfib import _kernels_py

try:
    from hfib import _kernels_c
except ImportError:
    _kernels_c = None


def make_operand(size: int, stride: int, offset: int) -> dict[int, int]:
    # deterministic spread of packed exponent keys with mixed-sign coeffs
    return {offset + i * stride: (-1) ** i * (3 + i % 17) for i in range(size)}


def time_call(fn, *args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_raw(repeat: int) -> None:
    a = make_operand(400, 1 << 21 | 3, 1)
    b = make_operand(300, 1 << 21 | 7, 2)
    small = make_operand(12, 1 << 21 | 5, 1)
    cases = [
        ("kadd 400+300", "kadd", (a, b)),
        ("kmul 400x300", "kmul", (a, b)),
        ("kpow 12-term ^6", "kpow", (small, 6)),
    ]
    backends = [("python", _kernels_py)]
    if _kernels_c is not None:
        backends.append(("c", _kernels_c))
    print("raw kernels (best of {} runs)".format(repeat))
    print(f"{'case':<18}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    for label, fn_name, args in cases:
        row = [time_call(getattr(mod, fn_name), *args, repeat=repeat) for _, mod in backends]
        speedup = row[0] / row[-1] if len(row) > 1 and row[-1] else float("nan")
        cells = "".join(f"{t * 1e3:>10.2f}ms" for t in row)
        print(f"{label:<18}{cells}{speedup:>9.1f}x" if len(row) > 1 else f"{label:<18}{cells}")


def bench_end_to_end(repeat: int) -> None:
    workload = (
        "from hfib.operators import verify_operators; "
        "assert all(r.passed for r in verify_operators())"
    )
    names = ["python"] + (["c"] if _kernels_c is not None else [])
    print()
    print("end-to-end operator suites (best of {} fresh processes)".format(repeat))
    for name in names:
        env = dict(os.environ, HFIB_BACKEND=name)
        best = float("inf")
        for _ in range(repeat):
            start = time.perf_counter()
            subprocess.run(
                [sys.executable, "-c", workload], env=env, check=True, capture_output=True
            )
            best = min(best, time.perf_counter() - start)
        print(f"  HFIB_BACKEND={name:<8} {best:.3f}s")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _kernels_c is None:
        print("compiled backend not built; showing pure-Python numbers only")
    bench_raw(args.repeat)
    bench_end_to_end(max(2, args.repeat // 2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
