"""Time every kernel under the numba and numpy backends.

    python benchmarks/bench_kernels.py [--n 9 --k 1] [--repeat 3]

JIT compilation is excluded: each numba kernel runs once on a tiny input first.
"""

import argparse
import time

import numpy as np

from kpancake import _kernels
from kpancake.core import check_capacity


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def _cases(impl, n, k):
    total = check_capacity(n, k)
    pv = _kernels.place_values(n, k)
    flips = np.empty(total - 1, dtype=np.int64)
    _kernels.BACKENDS["numpy"]["flipseq"](n, k, flips)
    v0 = np.arange(1, n + 1, dtype=np.int64)
    c0 = np.zeros(n, dtype=np.int64)
    vals = np.empty((total, n), dtype=np.int64)
    cols = np.empty((total, n), dtype=np.int64)
    _kernels.BACKENDS["numpy"]["listing_from_flips"](v0, c0, k, flips, vals, cols)
    nv, nc = np.roll(vals, -1, 0), np.roll(cols, -1, 0)
    ranks = np.arange(1, total + 1, dtype=np.int64)
    out_v = np.empty_like(vals)
    out_c = np.empty_like(cols)
    seq = np.empty(total - 1, dtype=np.int64)
    return {
        "flipseq": lambda: impl["flipseq"](n, k, seq),
        "listing_from_flips": lambda: impl["listing_from_flips"](v0, c0, k, flips, out_v, out_c),
        "listing_by_successor": lambda: impl["listing_by_successor"](k, out_v, out_c),
        "successor_rows": lambda: impl["successor_rows"](vals, cols, k),
        "transition_flips": lambda: impl["transition_flips"](vals, cols, nv, nc, k),
        "rank_rows": lambda: impl["rank_rows"](vals, cols, k, pv),
        "unrank_rows": lambda: impl["unrank_rows"](ranks, n, k, pv, out_v, out_c),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = sorted(_kernels.BACKENDS)
    if "numba" in backends:
        for fn in _cases(_kernels.BACKENDS["numba"], 2, 2).values():
            fn()  # compile

    results = {b: {name: _best(fn, args.repeat) for name, fn in _cases(_kernels.BACKENDS[b], args.n, args.k).items()}
               for b in backends}
    rows = check_capacity(args.n, args.k)
    print(f"n={args.n} k={args.k} rows={rows} (best of {args.repeat})")
    header = f"{'kernel':<22}" + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for name in results[backends[0]]:
        line = f"{name:<22}" + "".join(f"{results[b][name] * 1e3:>10.2f}ms" for b in backends)
        if len(backends) == 2:
            line += f"{results['numpy'][name] / results['numba'][name]:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
