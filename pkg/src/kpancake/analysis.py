"""Hamilton-cycle certificates for listings and flip-length statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from . import _kernels
from .core import ColouredPermutation, check_capacity, format_perm
from .generation import (
    _pack,
    generate_by_flipseq,
    generate_by_successor,
    greedy,
    rec_listing,
)
from .genseq import sigma_bar


@dataclass
class VerificationReport:
    n: int
    k: int
    total_visited: int = 0
    expected: int = 0
    duplicates: int = 0
    bad_transitions: list[tuple[int, str]] = field(default_factory=list)
    cyclic_closure: bool = False
    closing_flip: Optional[int] = None

    @property
    def is_hamilton_cycle(self) -> bool:
        return (
            self.total_visited == self.expected
            and self.duplicates == 0
            and not self.bad_transitions
            and self.cyclic_closure
        )

    def to_text(self) -> str:
        lines = [
            f"total:{self.total_visited}",
            f"expected:{self.expected}",
            f"duplicates:{self.duplicates}",
            f"bad_transitions:{len(self.bad_transitions)}",
            f"cyclic:{str(self.cyclic_closure).lower()}",
            f"hamilton:{str(self.is_hamilton_cycle).lower()}",
        ]
        lines.extend(f"bad_transition:{i}:{why}" for i, why in self.bad_transitions[:20])
        return "\n".join(lines)


def _flip_between(p: ColouredPermutation, q: ColouredPermutation) -> Optional[int]:
    # the last differing position fixes the only candidate length
    n, k = p.n, p.k
    d = n
    while d > 0 and p.values[d - 1] == q.values[d - 1] and p.colours[d - 1] == q.colours[d - 1]:
        d -= 1
    if d == 0:
        return 1 if k == 1 else None
    for i in range(d):
        if q.values[i] != p.values[d - 1 - i] or q.colours[i] != (p.colours[d - 1 - i] + 1) % k:
            return None
    return d


def verify_listing(perms: Iterable[ColouredPermutation], n: int, k: int) -> VerificationReport:
    """Check a streamed listing is a cyclic flip Gray code of every coloured permutation.

    Consumes ``perms`` once, keeping one packed key per permutation.
    Problems are recorded in the report rather than raised.
    """
    report = VerificationReport(n, k, expected=check_capacity(n, k))
    seen = set()
    first = prev = None
    for i, p in enumerate(perms):
        if p.n != n or p.k != k:
            report.bad_transitions.append((i, f"wrong shape {format_perm(p)}"))
            continue
        key = _pack(p.values, p.colours, k)
        if key in seen:
            report.duplicates += 1
        seen.add(key)
        report.total_visited += 1
        if prev is None:
            first = p
        elif _flip_between(prev, p) is None:
            report.bad_transitions.append((i, "not a single flip"))
        prev = p
    if first is not None:
        report.closing_flip = _flip_between(prev, first)
        report.cyclic_closure = report.closing_flip is not None
    return report


def verify_arrays(values: np.ndarray, colours: np.ndarray, k: int) -> VerificationReport:
    """Array form of :func:`verify_listing` backed by the transition kernel."""
    rows, n = values.shape
    report = VerificationReport(n, k, total_visited=rows, expected=check_capacity(n, k))
    if rows == 0:
        return report
    values = np.ascontiguousarray(values, dtype=np.int64)
    colours = np.ascontiguousarray(colours, dtype=np.int64)
    codes = (values - 1) * k + colours
    report.duplicates = rows - np.unique(codes, axis=0).shape[0]
    nxt_v = np.roll(values, -1, axis=0)
    nxt_c = np.roll(colours, -1, axis=0)
    steps = _kernels.transition_flips(values, colours, nxt_v, nxt_c, k)
    bad = np.flatnonzero(steps[:-1] == 0)
    report.bad_transitions = [(int(i) + 1, "not a single flip") for i in bad]
    closing = int(steps[-1])
    report.closing_flip = closing or None
    report.cyclic_closure = closing != 0
    return report


# -- flip-length statistics ------------------------------------------------------


def exact_average(n: int, k: int) -> Fraction:
    """Mean closed-cycle flip length: the sum of ``1 / (k**j j!)`` over j < n."""
    return sum((Fraction(1, k**j * math.factorial(j)) for j in range(n)), Fraction(0))


def exp_inverse_enclosure(
    k: int, width: Fraction = Fraction(1, 10**15), min_terms: int = 1
) -> tuple[Fraction, Fraction]:
    """Rational interval ``[lo, hi]`` containing ``e**(1/k)`` with ``hi - lo <= width``.

    ``lo`` is a Maclaurin partial sum of at least ``min_terms`` terms; the
    tail after term N is at most ``x**(N+1)/(N+1)! * (N+2)/(N+2-x)`` for
    ``x = 1/k``.
    """
    x = Fraction(1, k)
    lo = Fraction(0)
    term = Fraction(1)
    j = 0
    while True:
        lo += term
        j += 1
        term = term * x / j
        tail = term * (j + 1) / (j + 1 - x)
        if tail <= width and j >= min_terms:
            return lo, lo + tail


def certified_below(value: Fraction, k: int) -> bool:
    """Decide ``value < e**(1/k)`` exactly, narrowing the enclosure until it separates."""
    width = Fraction(1, 10**15)
    terms = 1
    while True:
        lo, hi = exp_inverse_enclosure(k, width, terms)
        if value < lo:
            return True
        if value >= hi:
            return False
        width /= 10**6
        terms *= 2


@dataclass(frozen=True)
class FlipStats:
    n: int
    k: int
    exact_average: Fraction
    empirical_average: Optional[Fraction]
    bound_interval: tuple[Fraction, Fraction]

    @property
    def bound(self) -> float:
        lo, hi = self.bound_interval
        return float((lo + hi) / 2)

    @property
    def below_bound(self) -> bool:
        """``exact_average < e**(1/k)``, decided with rational enclosures only."""
        return certified_below(self.exact_average, self.k)

    def to_text(self) -> str:
        avg = self.exact_average
        lines = [
            f"exact_average:{avg.numerator}/{avg.denominator}",
            f"exact_average_decimal:{float(avg):.15f}",
            f"bound:{self.bound:.15f}",
            f"below_bound:{str(self.below_bound).lower()}",
        ]
        if self.empirical_average is not None:
            emp = self.empirical_average
            lines.append(f"empirical_average:{emp.numerator}/{emp.denominator}")
        return "\n".join(lines)


def empirical_average(n: int, k: int) -> Fraction:
    seq = sigma_bar(n, k)
    return Fraction(int(seq.sum()), len(seq))


def avg_flip_length(n: int, k: int, empirical_limit: Optional[int] = 10**6) -> FlipStats:
    """Average flip length around the cycle, exact and (for small sizes) measured."""
    total = check_capacity(n, k)
    emp = None
    if empirical_limit is None or total <= empirical_limit:
        emp = empirical_average(n, k)
    return FlipStats(n, k, exact_average(n, k), emp, exp_inverse_enclosure(k))


def check_equivalence(n: int, k: int) -> bool:
    """True iff greedy-min, recursive, successor and flip-sequence listings coincide."""
    reference = list(greedy(n, k, "min").listing)
    others = (
        rec_listing(ColouredPermutation.identity(n, k)),
        generate_by_successor(n, k),
        generate_by_flipseq(n, k),
    )
    return all(list(other) == reference for other in others)
