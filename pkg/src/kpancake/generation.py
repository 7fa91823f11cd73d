"""Four constructions of the cyclic flip Gray code for coloured permutations.

All of them produce the same listing when started from ``1^0 2^0 ... n^0``:

* :func:`greedy` -- repeatedly take the shortest flip reaching a new
  permutation (exponential memory; also runs the failing max-flip variant),
* :func:`rec_listing` -- the recursive description over ``rho`` subwords,
* :func:`generate_by_successor` -- a per-permutation successor rule,
* :func:`generate_by_flipseq` -- flips supplied by the loop-free iterator.
"""

from __future__ import annotations

import queue
import threading
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Protocol, Sequence, Union

import numpy as np

from . import _kernels
from .core import (
    ColouredPermutation,
    PrePerm,
    check_capacity,
    flip,
    rho,
)
from .errors import CapacityError
from .genseq import LoopFreeState, sigma_array

#: Default ceiling on the greedy visited-set size.
GREEDY_BUDGET = 10**7


@dataclass(frozen=True)
class Listing(Sequence):
    """An ordered run of coloured permutations (or pre-perms)."""

    perms: tuple
    n: int
    k: int

    def __len__(self) -> int:
        return len(self.perms)

    def __getitem__(self, i):
        return self.perms[i]

    def __iter__(self):
        return iter(self.perms)


@dataclass(frozen=True)
class GreedyOutcome:
    listing: Listing
    flips: tuple[int, ...]
    exhaustive: bool
    cyclic: bool

    @property
    def is_hamilton_cycle(self) -> bool:
        return self.exhaustive and self.cyclic


def _pack(values: tuple, colours: tuple, k: int) -> int:
    # injective mixed-radix key, radix n*k per position
    radix = len(values) * k
    key = 0
    for v, c in zip(values, colours):
        key = key * radix + (v - 1) * k + c
    return key


def closing_flip(last: ColouredPermutation, first: ColouredPermutation) -> Optional[int]:
    """Length of the flip taking ``last`` to ``first``, or None if there is none."""
    for j in range(1, last.n + 1):
        if flip(last, j) == first:
            return j
    return None


def greedy(n: int, k: int, priority: str = "min", budget: int = GREEDY_BUDGET) -> GreedyOutcome:
    """Greedy walk from ``1^0 ... n^0`` preferring short (``min``) or long (``max``) flips.

    The walk stops at the first permutation whose every flip leads back onto
    the path.  ``budget`` bounds ``k**n * n!`` since the visited set holds
    every permutation.
    """
    if priority not in ("min", "max"):
        raise ValueError(f"priority must be 'min' or 'max', not {priority!r}")
    total = check_capacity(n, k)
    if total > budget:
        raise CapacityError(f"greedy needs {total} visited entries, budget is {budget}")
    order = range(1, n + 1) if priority == "min" else range(n, 0, -1)

    cur = ColouredPermutation.identity(n, k)
    visited = {_pack(cur.values, cur.colours, k)}
    perms = [cur]
    flips = []
    while True:
        for j in order:
            nxt = flip(cur, j)
            key = _pack(nxt.values, nxt.colours, k)
            if key not in visited:
                break
        else:
            break
        visited.add(key)
        perms.append(nxt)
        flips.append(j)
        cur = nxt
    exhaustive = len(perms) == total
    cyclic = exhaustive and closing_flip(perms[-1], perms[0]) is not None
    return GreedyOutcome(Listing(tuple(perms), n, k), tuple(flips), exhaustive, cyclic)


# -- recursive construction ------------------------------------------------------


def _rec(pairs: tuple, k: int) -> list[tuple]:
    j = len(pairs)
    if j == 1:
        v, c = pairs[0]
        return [((v, (c + s) % k),) for s in range(k)]
    values = tuple(v for v, _ in pairs)
    colours = tuple(c for _, c in pairs)
    word = rho(PrePerm(values, colours, k, max(values)))
    out = []
    for i in range(word.m, 0, -1):
        sub = tuple(word.window(i - 1, j - 1))
        tail = tuple(word[i])
        out.extend(q + (tail,) for q in _rec(sub, k))
    return out


def rec_listing(p: Union[PrePerm, ColouredPermutation]) -> Listing:
    """The listing rooted at ``p``: sublists over ``rho(p)_m .. rho(p)_1``, each
    extended by the matching ``r_i``.

    Returns permutations when ``p`` is a :class:`ColouredPermutation`,
    otherwise pre-perms of the same order ``p.n``.
    """
    k = p.k
    check_capacity(len(p.values), k)
    rows = _rec(tuple(zip(p.values, p.colours)), k)
    if isinstance(p, ColouredPermutation):
        perms = tuple(
            ColouredPermutation._trusted(tuple(v for v, _ in r), tuple(c for _, c in r), k) for r in rows
        )
    else:
        perms = tuple(PrePerm(tuple(v for v, _ in r), tuple(c for _, c in r), k, p.n) for r in rows)
    return Listing(perms, p.n, k)


# -- successor rule ------------------------------------------------------------------


def successor(pi: ColouredPermutation) -> int:
    """Flip length giving the cyclic successor of ``pi`` in the canonical listing.

    This is the length of the longest decreasing prefix: scanning left to
    right, a decreasing prefix may rise in value once (wrapping past ``n``)
    and never back below its first value; for ``k > 1`` a rise must raise the
    colour by exactly one and a fall must keep it.
    """
    v, c, k, n = pi.values, pi.colours, pi.k, len(pi.values)
    incr = 0
    for j in range(1, n):
        a, b = v[j - 1], v[j]
        if a < b:
            incr += 1
        if incr == 2 or (incr == 1 and b < v[0]):
            return j
        if k > 1 and a < b and (c[j] - c[j - 1]) % k != 1:
            return j
        if k > 1 and a > b and c[j - 1] != c[j]:
            return j
    return n


def successor_perm(pi: ColouredPermutation) -> ColouredPermutation:
    return flip(pi, successor(pi))


def iter_successor(n: int, k: int) -> Iterator[ColouredPermutation]:
    """Stream the canonical listing by the successor rule.

    Stops when the start recurs; fails fast if that takes more than
    ``k**n * n! + 1`` steps.
    """
    total = check_capacity(n, k)
    start = ColouredPermutation.identity(n, k)
    cur = start
    for _ in range(total + 1):
        yield cur
        cur = successor_perm(cur)
        if cur == start:
            return
    raise RuntimeError("successor rule did not return to the start")


def generate_by_successor(n: int, k: int) -> Listing:
    return Listing(tuple(iter_successor(n, k)), n, k)


# -- flip-sequence driven --------------------------------------------------------


def iter_flipseq(n: int, k: int, start: Optional[ColouredPermutation] = None) -> Iterator[ColouredPermutation]:
    """Stream the listing rooted at ``start`` (default ``1^0 .. n^0``) in O(1) amortized time."""
    if start is None:
        start = ColouredPermutation.identity(n, k)
    elif start.n != n or start.k != k:
        raise ValueError(f"start has (n, k) = ({start.n}, {start.k}), expected ({n}, {k})")
    state = LoopFreeState(n, k)
    values, colours = list(start.values), list(start.colours)
    trusted = ColouredPermutation._trusted
    while True:
        yield trusted(tuple(values), tuple(colours), k)
        x = state.next()
        if x > n:
            return
        values[:x] = values[x - 1::-1]
        colours[:x] = [(col + 1) % k for col in colours[x - 1::-1]]


def generate_by_flipseq(n: int, k: int, start: Optional[ColouredPermutation] = None) -> Listing:
    return Listing(tuple(iter_flipseq(n, k, start)), n, k)


# -- array listings --------------------------------------------------------------


def listing_arrays(
    n: int, k: int, method: str = "flipseq", start: Optional[ColouredPermutation] = None
) -> tuple[np.ndarray, np.ndarray]:
    """The whole listing as ``(values, colours)`` int64 arrays of shape ``(k**n n!, n)``.

    ``method`` is ``"flipseq"`` (any ``start``) or ``"successor"`` (canonical
    start only).
    """
    total = check_capacity(n, k)
    out_v = np.empty((total, n), dtype=np.int64)
    out_c = np.empty((total, n), dtype=np.int64)
    if method == "flipseq":
        if start is None:
            start = ColouredPermutation.identity(n, k)
        flips = sigma_array(n, k)
        _kernels.listing_from_flips(
            np.asarray(start.values, dtype=np.int64), np.asarray(start.colours, dtype=np.int64), k, flips, out_v, out_c
        )
    elif method == "successor":
        if start is not None:
            raise ValueError("the successor rule only generates from the canonical start")
        _kernels.listing_by_successor(k, out_v, out_c)
    else:
        raise ValueError(f"unknown method {method!r}")
    return out_v, out_c


def arrays_to_perms(values: np.ndarray, colours: np.ndarray, k: int) -> list[ColouredPermutation]:
    trusted = ColouredPermutation._trusted
    return [trusted(tuple(v), tuple(c), k) for v, c in zip(values.tolist(), colours.tolist())]


def successor_flips(values: np.ndarray, colours: np.ndarray, k: int) -> np.ndarray:
    """Batch :func:`successor` over the rows of a listing array."""
    return _kernels.successor_rows(np.ascontiguousarray(values, dtype=np.int64),
                                   np.ascontiguousarray(colours, dtype=np.int64), k)


# -- streaming interfaces ------------------------------------------------------------


class Visitor(Protocol):
    def visit(self, perm: ColouredPermutation) -> None: ...

    def close(self, closing: Optional[int]) -> None: ...


def run_visitor(perms: Iterable[ColouredPermutation], visitor: Visitor) -> int:
    """Feed each permutation to ``visitor.visit`` in order, then report the closing flip.

    ``visitor.close`` receives the flip length taking the last permutation
    back to the first (None if no flip does).  Returns the number visited.
    """
    first = last = None
    count = 0
    for p in perms:
        if first is None:
            first = p
        visitor.visit(p)
        last = p
        count += 1
    visitor.close(closing_flip(last, first) if first is not None else None)
    return count


_DONE = object()


@dataclass
class _Failure:
    exc: BaseException


def iter_in_thread(source: Iterable, maxsize: int = 1024) -> Iterator:
    """Re-yield ``source`` produced on a worker thread through a bounded queue.

    The producer blocks only while the queue is full and gives up once the
    consumer closes this generator, so it never waits on a reader that left.
    Exceptions raised by ``source`` are re-raised in the consumer.
    """
    q: queue.Queue = queue.Queue(maxsize=maxsize)
    stop = threading.Event()

    def put(item) -> bool:
        while not stop.is_set():
            try:
                q.put(item, timeout=0.05)
                return True
            except queue.Full:
                continue
        return False

    def produce():
        try:
            for item in source:
                if not put(item):
                    return
        except BaseException as exc:  # forwarded to the consumer
            put(_Failure(exc))
            return
        put(_DONE)

    worker = threading.Thread(target=produce, name="kpancake-producer", daemon=True)
    worker.start()
    try:
        while True:
            item = q.get()
            if item is _DONE:
                return
            if isinstance(item, _Failure):
                raise item.exc
            yield item
    finally:
        stop.set()
        worker.join(timeout=1.0)

