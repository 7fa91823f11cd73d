"""Ranking and unranking in the canonical listing rooted at ``1^0 2^0 ... n^0``.

Ranks are 1-based.  The listing splits into ``n*k`` sublists of
``k**(n-1) (n-1)!`` permutations, one per final element; the sublist index
follows from the last element and the rest of the permutation is relabelled
onto the order-``n-1`` listing.  Both directions cost O(n^2).
"""

from __future__ import annotations

import math

import numpy as np

from . import _kernels
from .core import ColouredPermutation, check_capacity
from .errors import RangeError


def _block_sizes(n: int, k: int) -> list[int]:
    # block[t] = k**t * t!
    sizes = [1]
    for t in range(1, n + 1):
        sizes.append(sizes[-1] * k * t)
    return sizes


def rank(pi: ColouredPermutation) -> int:
    n, k = pi.n, pi.k
    check_capacity(n, k)
    block = _block_sizes(n, k)
    a = list(pi.values)
    col = list(pi.colours)
    total = 0
    for t in range(n, 1, -1):
        at, ct = a[t - 1], col[t - 1]
        for j in range(t - 1):
            if a[j] < at:
                col[j] = (col[j] - ct) % k
            else:
                col[j] = (col[j] - ct - 1) % k
            a[j] = (a[j] - at) % t
        total += ((ct + 1) * t - at) * block[t - 1]
    return total + col[0] + 1


def unrank(r: int, n: int, k: int) -> ColouredPermutation:
    size = check_capacity(n, k)
    if not 1 <= r <= size:
        raise RangeError(f"rank {r} outside 1..{size}")
    block = _block_sizes(n, k)
    digits = {}
    for t in range(n, 1, -1):
        x = (r - 1) // block[t - 1]
        r -= x * block[t - 1]
        digits[t] = x
    a = [1]
    col = [r - 1]
    for t in range(2, n + 1):
        x = digits[t]
        vt, ct = t - x % t, x // t
        for j in range(t - 1):
            a[j] = 1 + (a[j] + vt - 1) % t
            col[j] = (col[j] + ct + (0 if a[j] < vt else 1)) % k
        a.append(vt)
        col.append(ct)
    return ColouredPermutation(tuple(a), tuple(col), k)


_I64_MAX = np.iinfo(np.int64).max


def _batch_check(n: int, k: int) -> np.ndarray:
    size = check_capacity(n, k)
    if size > _I64_MAX:
        raise OverflowError(f"batch ranks need k^n*n! < 2^63, got {size}")
    return _kernels.place_values(n, k)


def rank_many(values: np.ndarray, colours: np.ndarray, k: int) -> np.ndarray:
    """Ranks of every row of a ``(rows, n)`` listing array pair."""
    values = np.ascontiguousarray(values, dtype=np.int64)
    colours = np.ascontiguousarray(colours, dtype=np.int64)
    pv = _batch_check(values.shape[1], k)
    return _kernels.rank_rows(values, colours, k, pv)


def unrank_many(ranks, n: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    ranks = np.ascontiguousarray(ranks, dtype=np.int64)
    pv = _batch_check(n, k)
    size = math.factorial(n) * k**n
    if ranks.size and (ranks.min() < 1 or ranks.max() > size):
        raise RangeError(f"ranks must lie in 1..{size}")
    out_v = np.empty((ranks.shape[0], n), dtype=np.int64)
    out_c = np.empty((ranks.shape[0], n), dtype=np.int64)
    _kernels.unrank_rows(ranks, n, k, pv, out_v, out_c)
    return out_v, out_c
