# -*- coding: utf-8 -*-
"""Histograms on bins 1..n, their cumulative dot-set form, and the classical two-histogram EMD.

A histogram ``h`` has nonnegative integer counts; its cumulative histogram ``H`` is stored as
the height vector ``H(j) = h(1) + ... + h(j)`` and read as the set of grid dots
``{(j, r) : 1 <= r <= H(j)}``. All arithmetic is on Python ints.

Usage
-----
from emd_simplex.api.histogram import Histogram, cumulate, pairwise_emd
h0 = Histogram((3, 0, 1, 4, 2))
h1 = Histogram((1, 4, 1, 1, 3))
cumulate(h0).heights   # (3, 3, 4, 8, 10)
pairwise_emd(h0, h1)   # 7
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Iterator, List, NamedTuple, Sequence, Tuple

from .errors import InvalidHistogramError, NotMonotoneError, ShapeMismatchError

__all__ = [
    "Histogram",
    "Dot",
    "DotSet",
    "Move",
    "cumulate",
    "decumulate",
    "pairwise_emd",
    "check_same_shape",
    "dot_symmetric_difference",
    "transport_plan",
    "ferrers_shape",
    "from_ferrers_shape",
    "histogram_count",
]


def _as_int(value, what: str) -> int:
    # bool is an int subclass; reject it along with floats and strings
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidHistogramError(f"{what} must be an integer, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class Histogram:
    """Nonnegative integer counts over bins 1..n."""

    counts: Tuple[int, ...]

    def __post_init__(self) -> None:
        counts = tuple(_as_int(c, "count") for c in self.counts)
        if not counts:
            raise InvalidHistogramError("a histogram needs at least one bin")
        if any(c < 0 for c in counts):
            raise InvalidHistogramError(f"counts must be nonnegative, got {counts}")
        object.__setattr__(self, "counts", counts)

    @property
    def n(self) -> int:
        return len(self.counts)

    @property
    def m(self) -> int:
        return sum(self.counts)

    def __getitem__(self, bin_: int) -> int:
        """1-based bin access, h(i)."""
        if not 1 <= bin_ <= self.n:
            raise IndexError(f"bin {bin_} outside 1..{self.n}")
        return self.counts[bin_ - 1]

    def positions(self) -> List[int]:
        """Sorted list of the m data-point positions (bin numbers, with repetition)."""
        return [b for b, c in enumerate(self.counts, start=1) for _ in range(c)]

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.counts) + ")"


class Dot(NamedTuple):
    """A grid dot; sorts column-major, then by row."""

    col: int
    row: int


@dataclass(frozen=True)
class DotSet:
    """A cumulative histogram H, stored as weakly increasing heights H(1..n)."""

    heights: Tuple[int, ...]

    def __post_init__(self) -> None:
        heights = tuple(_as_int(h, "height") for h in self.heights)
        if not heights:
            raise InvalidHistogramError("a dot set needs at least one column")
        if heights[0] < 0:
            raise NotMonotoneError(f"heights must start at >= 0, got {heights}")
        for j in range(1, len(heights)):
            if heights[j] < heights[j - 1]:
                raise NotMonotoneError(f"heights decrease at column {j + 1}: {heights}")
        object.__setattr__(self, "heights", heights)

    @property
    def n(self) -> int:
        return len(self.heights)

    @property
    def m(self) -> int:
        return self.heights[-1]

    def height(self, col: int) -> int:
        """1-based column access, H(j)."""
        return self.heights[col - 1]

    def __contains__(self, x) -> bool:
        try:
            col, row = x
        except (TypeError, ValueError):
            return False
        return 1 <= col <= self.n and 1 <= row <= self.heights[col - 1]

    def __iter__(self) -> Iterator[Dot]:
        for col, h in enumerate(self.heights, start=1):
            for row in range(1, h + 1):
                yield Dot(col, row)

    def __len__(self) -> int:
        return sum(self.heights)

    def dots(self) -> frozenset:
        """The set view, computed on demand."""
        return frozenset(self)

    def __str__(self) -> str:
        return "(" + ",".join(str(h) for h in self.heights) + ")"


class Move(NamedTuple):
    """Move ``count`` data points from bin ``source`` to bin ``target``."""

    source: int
    target: int
    count: int

    @property
    def work(self) -> int:
        return self.count * abs(self.target - self.source)


def cumulate(h: Histogram) -> DotSet:
    """H(j) = h(1) + ... + h(j)."""
    return DotSet(tuple(accumulate(h.counts)))


def decumulate(H: DotSet | Sequence[int]) -> Histogram:
    """Inverse of cumulate: h(j) = H(j) - H(j-1) with H(0) = 0.

    Accepts a DotSet or a raw height sequence; raw sequences are validated, so
    decreasing heights raise NotMonotoneError.
    """
    dot_set = H if isinstance(H, DotSet) else DotSet(tuple(H))
    prev = 0
    counts = []
    for h in dot_set.heights:
        counts.append(h - prev)
        prev = h
    return Histogram(tuple(counts))


def check_same_shape(hs: Iterable[Histogram]) -> Tuple[int, int]:
    """Return the shared (n, m) of the histograms or raise ShapeMismatchError."""
    hs = list(hs)
    if not hs:
        raise ShapeMismatchError("need at least one histogram")
    n, m = hs[0].n, hs[0].m
    for i, h in enumerate(hs[1:], start=1):
        if h.n != n:
            raise ShapeMismatchError(f"histogram {i} has n={h.n}, expected n={n}")
        if h.m != m:
            raise ShapeMismatchError(f"histogram {i} has m={h.m}, expected m={m}")
    return n, m


def pairwise_emd(h0: Histogram, h1: Histogram) -> int:
    """Classical EMD: the l1 distance of the cumulative histograms, |H0 △ H1|."""
    check_same_shape((h0, h1))
    H0, H1 = cumulate(h0), cumulate(h1)
    return sum(abs(a - b) for a, b in zip(H0.heights, H1.heights))


def dot_symmetric_difference(h0: Histogram, h1: Histogram) -> Tuple[List[Dot], List[Dot]]:
    """Dots of H0 △ H1, split into (only in H0, only in H1), each in canonical order."""
    check_same_shape((h0, h1))
    H0, H1 = cumulate(h0), cumulate(h1)
    only0: List[Dot] = []
    only1: List[Dot] = []
    for col, (a, b) in enumerate(zip(H0.heights, H1.heights), start=1):
        lo, hi = min(a, b), max(a, b)
        side = only0 if a > b else only1
        side.extend(Dot(col, r) for r in range(lo + 1, hi + 1))
    return only0, only1


def transport_plan(h0: Histogram, h1: Histogram) -> List[Move]:
    """A minimum-work plan turning h0 into h1, as aggregated moves.

    The k-th smallest data point of h0 goes to the k-th smallest position of h1; on the
    line this monotone matching is optimal, so the total work equals pairwise_emd.
    """
    check_same_shape((h0, h1))
    tally: dict = {}
    for p, q in zip(h0.positions(), h1.positions()):
        if p != q:
            tally[(p, q)] = tally.get((p, q), 0) + 1
    return [Move(p, q, c) for (p, q), c in sorted(tally.items())]


def ferrers_shape(H: DotSet) -> Tuple[int, ...]:
    """Partition read off the dot diagram: drop the last column, largest part first.

    The result fits in an m x (n-1) box, and this is a bijection between cumulative
    histograms with parameters (n, m) and such partitions.
    """
    return tuple(h for h in reversed(H.heights[:-1]) if h > 0)


def from_ferrers_shape(shape: Sequence[int], n: int, m: int) -> DotSet:
    """Inverse of ferrers_shape for fixed (n, m)."""
    parts = [_as_int(p, "part") for p in shape]
    if len(parts) > n - 1 or any(p < 1 or p > m for p in parts):
        raise ShapeMismatchError(f"shape {tuple(parts)} does not fit in a {m} x {n - 1} box")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise NotMonotoneError(f"partition parts must be weakly decreasing: {tuple(parts)}")
    padded = [0] * (n - 1 - len(parts)) + list(reversed(parts))
    return DotSet(tuple(padded) + (m,))


def histogram_count(n: int, m: int) -> int:
    """Number of histograms with n bins and mass m, C(m+n-1, n-1)."""
    return math.comb(m + n - 1, n - 1)
