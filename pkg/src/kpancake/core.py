"""Coloured permutations, colour-incrementing flips and the circular word rho.

A coloured permutation of order ``n`` over ``k`` colours is a permutation of
``1..n`` where each entry carries a colour in ``0..k-1``.  A flip of length
``i`` reverses the first ``i`` entries and increments each of their colours
modulo ``k``.  Values are 1-based, colours 0-based.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence, Union

from .errors import CapacityError, ParseError, RangeError

#: Largest listing size supported; ranks are unsigned 64-bit quantities.
MAX_TOTAL = 2**64 - 1


class ColouredElement(NamedTuple):
    value: int
    colour: int

    def __str__(self) -> str:
        return f"{self.value}^{self.colour}"


def listing_size(n: int, k: int) -> int:
    """Number of coloured permutations, ``k**n * n!``."""
    return k**n * math.factorial(n)


def check_capacity(n: int, k: int) -> int:
    """Return ``k**n * n!`` or raise :class:`CapacityError` if it exceeds 64 bits."""
    if n < 1 or k < 1:
        raise RangeError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    total = listing_size(n, k)
    if total > MAX_TOTAL:
        raise CapacityError(f"k^n*n! = {total} for n={n}, k={k} exceeds the 64-bit rank range")
    return total


def _check_elements(values: Sequence[int], colours: Sequence[int], k: int, n: int) -> None:
    if k < 1:
        raise RangeError(f"k must be >= 1, got {k}")
    if len(values) != len(colours):
        raise ValueError("values and colours differ in length")
    seen = set()
    for v, c in zip(values, colours):
        if not 1 <= v <= n:
            raise ValueError(f"value {v} outside 1..{n}")
        if not 0 <= c < k:
            raise ValueError(f"colour {c} outside 0..{k - 1}")
        if v in seen:
            raise ValueError(f"value {v} repeated")
        seen.add(v)


@dataclass(frozen=True)
class PrePerm:
    """A prefix ``p_1 .. p_j`` of some coloured permutation of order ``n``."""

    values: tuple[int, ...]
    colours: tuple[int, ...]
    k: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        object.__setattr__(self, "colours", tuple(self.colours))
        _check_elements(self.values, self.colours, self.k, self.n)
        if len(self.values) > self.n:
            raise ValueError(f"pre-perm of length {len(self.values)} exceeds n={self.n}")

    @property
    def j(self) -> int:
        return len(self.values)

    @property
    def elements(self) -> tuple[ColouredElement, ...]:
        return tuple(ColouredElement(v, c) for v, c in zip(self.values, self.colours))

    def __len__(self) -> int:
        return len(self.values)

    def __str__(self) -> str:
        return format_perm(self)


@dataclass(frozen=True)
class ColouredPermutation:
    """A vertex of the k-sided pancake network."""

    values: tuple[int, ...]
    colours: tuple[int, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        object.__setattr__(self, "colours", tuple(self.colours))
        if not self.values:
            raise ValueError("a coloured permutation needs n >= 1")
        _check_elements(self.values, self.colours, self.k, len(self.values))

    @classmethod
    def _trusted(cls, values: tuple, colours: tuple, k: int) -> "ColouredPermutation":
        # skips validation; callers guarantee a valid permutation
        obj = object.__new__(cls)
        object.__setattr__(obj, "values", values)
        object.__setattr__(obj, "colours", colours)
        object.__setattr__(obj, "k", k)
        return obj

    @classmethod
    def identity(cls, n: int, k: int) -> "ColouredPermutation":
        """The canonical start ``1^0 2^0 ... n^0``."""
        return cls(tuple(range(1, n + 1)), (0,) * n, k)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], k: int) -> "ColouredPermutation":
        pairs = list(pairs)
        return cls(tuple(v for v, _ in pairs), tuple(c for _, c in pairs), k)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def elements(self) -> tuple[ColouredElement, ...]:
        return tuple(ColouredElement(v, c) for v, c in zip(self.values, self.colours))

    def as_preperm(self) -> PrePerm:
        return PrePerm(self.values, self.colours, self.k, self.n)

    def __len__(self) -> int:
        return len(self.values)

    def __str__(self) -> str:
        return format_perm(self)


Word = Union[PrePerm, ColouredPermutation]


def _rebuild(p: Word, values: tuple, colours: tuple) -> Word:
    if isinstance(p, ColouredPermutation):
        return ColouredPermutation._trusted(values, colours, p.k)
    return PrePerm(values, colours, p.k, p.n)


def flip(pi: ColouredPermutation, i: int) -> ColouredPermutation:
    """Reverse the first ``i`` entries of ``pi`` and increment their colours mod k."""
    n = len(pi.values)
    if not 1 <= i <= n:
        raise RangeError(f"flip length {i} outside 1..{n}")
    k = pi.k
    values = pi.values[i - 1::-1] + pi.values[i:]
    colours = tuple((c + 1) % k for c in pi.colours[i - 1::-1]) + pi.colours[i:]
    return ColouredPermutation._trusted(values, colours, k)


def shift(p: Word, s: int) -> Word:
    """``p^{+s}``: every colour incremented by ``s`` modulo k."""
    k = p.k
    return _rebuild(p, p.values, tuple((c + s) % k for c in p.colours))


def reverse(p: Word) -> Word:
    """Reverse the order of ``p`` without touching colours (not a flip)."""
    return _rebuild(p, p.values[::-1], p.colours[::-1])


@dataclass(frozen=True)
class CircularWord:
    """``rho(p)``: the k shifted copies ``p^{+(k-1)} ... p^{+0}`` read cyclically.

    Positions are 1-based, ``r_1 .. r_m`` with ``m = k*j``; any integer index
    is reduced cyclically, so ``r_0`` is ``r_m``.
    """

    symbols: tuple[ColouredElement, ...]
    k: int
    j: int

    @property
    def m(self) -> int:
        return len(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, i: int) -> ColouredElement:
        return self.symbols[(i - 1) % len(self.symbols)]

    def block(self, b: int) -> tuple[ColouredElement, ...]:
        """Block ``b`` (0-indexed from the front), equal to ``p^{+(k-1-b)}``."""
        return self.symbols[b * self.j:(b + 1) * self.j]

    def window(self, end: int, length: int) -> tuple[ColouredElement, ...]:
        """The ``length`` consecutive symbols ending at position ``end``."""
        return tuple(self[t] for t in range(end - length + 1, end + 1))


def rho(p: Word) -> CircularWord:
    k, j = p.k, len(p.values)
    symbols = []
    for s in range(k - 1, -1, -1):
        symbols.extend(ColouredElement(v, (c + s) % k) for v, c in zip(p.values, p.colours))
    return CircularWord(tuple(symbols), k, j)


def rho_sub(p: Word, i: int) -> PrePerm:
    """``rho(p)_i``: the length ``j-1`` subword of ``rho(p)`` ending with ``r_{i-1}``."""
    word = rho(p)
    if not 1 <= i <= word.m:
        raise RangeError(f"index {i} outside 1..{word.m}")
    syms = word.window(i - 1, word.j - 1)
    return PrePerm(tuple(e.value for e in syms), tuple(e.colour for e in syms), p.k, p.n)


# -- text format ---------------------------------------------------------------

_TOKEN = re.compile(r"(0|[1-9][0-9]*)\^(0|[1-9][0-9]*)")


def format_perm(p: Word) -> str:
    return " ".join(f"{v}^{c}" for v, c in zip(p.values, p.colours))


def parse(text: str, k: int) -> ColouredPermutation:
    """Parse ``v^c`` tokens separated by single spaces, e.g. ``"2^1 1^0 3^0"``.

    The order ``n`` is the number of tokens.  Errors name the offending token.
    """
    if k < 1:
        raise RangeError(f"k must be >= 1, got {k}")
    line = text.strip("\r\n")
    if not line:
        raise ParseError("empty permutation text")
    tokens = line.split(" ")
    n = len(tokens)
    values, colours, seen = [], [], set()
    for tok in tokens:
        m = _TOKEN.fullmatch(tok)
        if m is None:
            raise ParseError(f"malformed token {tok!r}")
        v, c = int(m.group(1)), int(m.group(2))
        if not 1 <= v <= n:
            raise ParseError(f"token {tok!r}: value outside 1..{n}")
        if c >= k:
            raise ParseError(f"token {tok!r}: colour must be < k={k}")
        if v in seen:
            raise ParseError(f"token {tok!r}: duplicate value {v}")
        seen.add(v)
        values.append(v)
        colours.append(c)
    return ColouredPermutation._trusted(tuple(values), tuple(colours), k)
