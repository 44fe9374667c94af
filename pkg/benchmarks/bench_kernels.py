"""Compare the compiled and pure-Python search kernels.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import timeit

from mover_eater import _kernels_py

try:
    from mover_eater import _kernels as _compiled
except ImportError:
    _compiled = None

BUDGET = 50_000_000

# (label, kernel name, args). Goals (0,0),(4,0); equilibrium Eater.
CASES = [
    ("mover paths, d=5, slack 2", "mover_search", (2, 3, 0, 0, 0, 0, 4, 0, 1, 7, 0, BUDGET)),
    ("mover paths, d=7, slack 2", "mover_search", (2, 5, 0, 0, 0, 0, 4, 0, 1, 9, 0, BUDGET)),
    ("mover paths, d=8, slack 4", "mover_search", (2, 6, 0, 0, 0, 0, 4, 0, 1, 12, 0, BUDGET)),
    ("eater prefixes, n_a=7", "eater_prefix_search", (0, 0, [1] * 7 + [2, 2], [1] * 7 + [3, 3], BUDGET)),
    ("eater prefixes, n_a=10", "eater_prefix_search", (0, 0, [1] * 10 + [2, 2], [1] * 10 + [3, 3], BUDGET)),
]


def best_time(fn, args, repeat: int) -> float:
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    opts = ap.parse_args()
    if _compiled is None:
        print("compiled kernels not built; only the Python backend is timed")
    print(f"{'case':32} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for label, name, args in CASES:
        py = best_time(getattr(_kernels_py, name), args, opts.repeat)
        if _compiled is None:
            print(f"{label:32} {py:10.4f} {'-':>10} {'-':>8}")
            continue
        fast_fn = getattr(_compiled, name)
        if fast_fn(*args) != getattr(_kernels_py, name)(*args):
            raise SystemExit(f"backends disagree on {label}")
        fast = best_time(fast_fn, args, opts.repeat)
        print(f"{label:32} {py:10.4f} {fast:10.4f} {py / fast:7.1f}x")


if __name__ == "__main__":
    main()
