"""The flip sequence of the min-flip Gray code.

``sigma(n, k)`` lists the flip lengths that walk the canonical listing from
its first to its last permutation; it has ``k**n * n! - 1`` entries and does
not depend on the starting permutation.  It is available three ways:

* :func:`sigma_recursive` expands the defining recurrence directly,
* :class:`LoopFreeState` emits one entry per call in worst-case O(1),
* :func:`sigma_array` fills a numpy array through the active kernel backend.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from . import _kernels
from .core import check_capacity
from .errors import StateError


def sigma_recursive(n: int, k: int) -> list[int]:
    """Expand ``sigma_1 = 1^(k-1)``, ``sigma_n = (sigma_{n-1}, n)^(kn-1), sigma_{n-1}``."""
    check_capacity(n, k)
    seq = [1] * (k - 1)
    for t in range(2, n + 1):
        block = seq + [t]
        seq = block * (k * t - 1) + seq
    return seq


class LoopFreeState:
    """Counter/flip-length arrays producing the flip sequence one entry at a time.

    ``counters[x]`` counts how often length ``x`` has been emitted in its
    current run and ``flips[x]`` is the length to emit when the scan reaches
    position ``x``.  :meth:`next` runs in constant time with no loops.  Its
    final return value is ``n + 1``, a sentinel that is not part of the
    sequence; after it :attr:`is_terminated` is true and further calls raise
    :class:`StateError`.

    The arrays are 1-indexed with two spare slots: slot ``n + 2`` is touched
    only when ``n = k = 1``, where the sentinel itself completes a run.
    """

    __slots__ = ("n", "k", "counters", "flips", "is_terminated")

    def __init__(self, n: int, k: int):
        check_capacity(n, k)
        self.n = n
        self.k = k
        self.counters = [0] * (n + 3)
        self.flips = list(range(n + 3))
        self.is_terminated = False

    def next(self) -> int:
        if self.is_terminated:
            raise StateError("flip sequence already exhausted")
        c, f = self.counters, self.flips
        if self.k == 1:
            x = f[2]
            f[2] = 2
        else:
            x = f[1]
            f[1] = 1
        c[x] += 1
        if c[x] == self.k * x - 1:
            c[x] = 0
            f[x] = f[x + 1]
            f[x + 1] = x + 1
        self.is_terminated = x > self.n
        return x

    def __iter__(self) -> Iterator[int]:
        """Yield the remaining sequence entries, sentinel excluded."""
        while not self.is_terminated:
            x = self.next()
            if x <= self.n:
                yield x


def loopfree_next(state: LoopFreeState) -> int:
    return state.next()


def iter_sigma(n: int, k: int) -> Iterator[int]:
    return iter(LoopFreeState(n, k))


def sigma_array(n: int, k: int) -> np.ndarray:
    """The flip sequence as an int64 array, computed by the active kernel."""
    total = check_capacity(n, k)
    if total > np.iinfo(np.int64).max:
        raise OverflowError("sequence too long for an in-memory array")
    out = np.empty(total - 1, dtype=np.int64)
    written = _kernels.flipseq(n, k, out)
    assert written == total - 1
    return out


def sigma_bar(n: int, k: int) -> np.ndarray:
    """The flip sequence with the closing flip of length ``n`` appended."""
    return np.append(sigma_array(n, k), np.int64(n))
