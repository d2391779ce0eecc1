# -*- coding: utf-8 -*-
"""Degree census over an ordered family of sets and the generalized symmetric difference.

For a family (X_0, ..., X_d) every element x of the union has a degree, the number of
indices i with x in X_i. Duplicate members each count. The generalized symmetric
difference is the multiset in which x has multiplicity min(deg x, d + 1 - deg x); for a
family of cumulative histograms its size is the generalized EMD.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import (
    AbstractSet,
    Any,
    Dict,
    Hashable,
    Iterable,
    Iterator,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

from emd_simplex.utils.logging import emd_logger as LOG

from .errors import BadIndexError, ShapeMismatchError
from .histogram import DotSet, Histogram, check_same_shape, cumulate

__all__ = [
    "VertexFamily",
    "DotMultiset",
    "DegreeProfile",
    "MinMedMaj",
    "canonical_order",
    "degree_profile",
    "min_med_maj",
    "generalized_symmetric_difference",
    "generalized_emd",
]


def canonical_order(elements: Iterable[Hashable]) -> List[Hashable]:
    """Sort elements; dots come out column-major, then by row.

    Families of mixed, mutually unorderable elements fall back to ordering by repr.
    """
    items = list(elements)
    try:
        return sorted(items)
    except TypeError:
        return sorted(items, key=lambda x: (type(x).__name__, repr(x)))


@dataclass(frozen=True)
class VertexFamily:
    """An ordered family (X_0, ..., X_d) of finite sets.

    Members are DotSets when built from histograms, otherwise any finite sets. The
    source histograms and display names are kept when available.
    """

    members: Tuple[AbstractSet, ...]
    names: Optional[Tuple[str, ...]] = None
    histograms: Optional[Tuple[Histogram, ...]] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        members = tuple(m if isinstance(m, DotSet) else frozenset(m) for m in self.members)
        if not members:
            raise ShapeMismatchError("a vertex family needs at least one member")
        object.__setattr__(self, "members", members)
        if self.names is not None:
            names = tuple(str(n) for n in self.names)
            if len(names) != len(members):
                raise ShapeMismatchError(f"{len(names)} names for {len(members)} members")
            object.__setattr__(self, "names", names)
        if self.histograms is not None:
            object.__setattr__(self, "histograms", tuple(self.histograms))

    @classmethod
    def from_histograms(cls, hs: Sequence[Histogram], names: Optional[Sequence[str]] = None) -> "VertexFamily":
        """Family of cumulative histograms; all histograms must share n and m."""
        hs = tuple(hs)
        check_same_shape(hs)
        return cls(
            tuple(cumulate(h) for h in hs),
            names=tuple(names) if names is not None else None,
            histograms=hs,
        )

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[Hashable]], names: Optional[Sequence[str]] = None) -> "VertexFamily":
        return cls(tuple(frozenset(s) for s in sets), names=tuple(names) if names is not None else None)

    @property
    def d(self) -> int:
        return len(self.members) - 1

    def __len__(self) -> int:
        return len(self.members)

    def __getitem__(self, i: int) -> AbstractSet:
        return self.members[i]

    def __iter__(self) -> Iterator[AbstractSet]:
        return iter(self.members)

    def name(self, i: int) -> str:
        return self.names[i] if self.names is not None else f"X{i}"

    def union(self) -> frozenset:
        out: set = set()
        for member in self.members:
            out.update(member)
        return frozenset(out)

    def restrict(self, indices: Iterable[int]) -> "VertexFamily":
        """Sub-family selected by the (sorted, distinct) indices."""
        idx = sorted(set(indices))
        if not idx:
            raise BadIndexError("cannot restrict to an empty index set")
        for i in idx:
            if not 0 <= i <= self.d:
                raise BadIndexError(f"index {i} outside 0..{self.d}")
        return VertexFamily(
            tuple(self.members[i] for i in idx),
            names=tuple(self.names[i] for i in idx) if self.names is not None else None,
            histograms=tuple(self.histograms[i] for i in idx) if self.histograms is not None else None,
        )


class DotMultiset:
    """Immutable multiset of dots (or other hashables) with positive multiplicities."""

    __slots__ = ("_items",)

    def __init__(self, items: Optional[Mapping[Hashable, int] | Iterable[Hashable]] = None) -> None:
        counts: Counter = Counter()
        if isinstance(items, Mapping):
            for x, k in items.items():
                if k < 0:
                    raise ValueError(f"negative multiplicity {k} for {x!r}")
                counts[x] += k
        elif items is not None:
            counts.update(items)
        self._items: Dict[Hashable, int] = {x: counts[x] for x in canonical_order(counts) if counts[x] > 0}

    def __len__(self) -> int:
        return sum(self._items.values())

    @property
    def size(self) -> int:
        return len(self)

    def multiplicity(self, x: Hashable) -> int:
        return self._items.get(x, 0)

    def __contains__(self, x: Hashable) -> bool:
        return x in self._items

    def items(self) -> List[Tuple[Hashable, int]]:
        """(element, multiplicity) pairs in canonical order."""
        return list(self._items.items())

    def support(self) -> List[Hashable]:
        return list(self._items)

    def elements(self) -> Iterator[Hashable]:
        for x, k in self._items.items():
            for _ in range(k):
                yield x

    def is_set(self) -> bool:
        return all(k == 1 for k in self._items.values())

    def __add__(self, other: "DotMultiset") -> "DotMultiset":
        """Multiset union ⊎ (multiplicities add)."""
        merged = Counter(self._items)
        merged.update(other._items)
        return DotMultiset(merged)

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, DotMultiset):
            return self._items == other._items
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._items.items()))

    def __bool__(self) -> bool:
        return bool(self._items)

    def __repr__(self) -> str:
        body = ", ".join(f"{x!r}^{k}" if k > 1 else repr(x) for x, k in self._items.items())
        return "DotMultiset{" + body + "}"


@dataclass(frozen=True)
class DegreeProfile:
    """deg(x) for every x in the union, plus the census k -> #{x : deg(x) = k}."""

    degrees: Mapping[Hashable, int]
    d: int

    @property
    def census(self) -> Dict[int, int]:
        counts = Counter(self.degrees.values())
        return {k: counts[k] for k in sorted(counts)}

    def __getitem__(self, x: Hashable) -> int:
        return self.degrees[x]

    def __len__(self) -> int:
        return len(self.degrees)


class MinMedMaj(NamedTuple):
    """Partition of the union by degree below, equal to, or above (d+1)/2."""

    min: frozenset
    med: frozenset
    maj: frozenset


def degree_profile(fam: VertexFamily) -> DegreeProfile:
    """deg(x) = number of indices i with x in X_i; the domain is exactly the union."""
    counts: Counter = Counter()
    for member in fam.members:
        counts.update(member)
    degrees = {x: counts[x] for x in canonical_order(counts)}
    return DegreeProfile(degrees, fam.d)


def min_med_maj(fam: VertexFamily) -> MinMedMaj:
    """Split the union into Min/Med/Maj, comparing 2*deg(x) with d+1 in integers."""
    profile = degree_profile(fam)
    d1 = fam.d + 1
    lo, med, hi = [], [], []
    for x, k in profile.degrees.items():
        if 2 * k < d1:
            lo.append(x)
        elif 2 * k == d1:
            med.append(x)
        else:
            hi.append(x)
    return MinMedMaj(frozenset(lo), frozenset(med), frozenset(hi))


def generalized_symmetric_difference(fam: VertexFamily) -> DotMultiset:
    """▲(X): x with multiplicity min(deg x, d + 1 - deg x); full-degree elements drop out."""
    profile = degree_profile(fam)
    d1 = fam.d + 1
    return DotMultiset({x: min(k, d1 - k) for x, k in profile.degrees.items()})


def generalized_emd(hs: Sequence[Histogram]) -> int:
    """EMD(h_0, ..., h_d) = |▲(H_0, ..., H_d)|; 0 for a single histogram."""
    fam = VertexFamily.from_histograms(hs)
    value = generalized_symmetric_difference(fam).size
    LOG.debug("generalized_emd: d=%s n=%s m=%s -> %s", fam.d, hs[0].n, hs[0].m, value)
    return value
