# -*- coding: utf-8 -*-
"""The earth mover's simplex.

Vertices are the members X_0..X_d of a family. Each element x of the union is sent by
``epsilon`` to a face of the half-skeleton: the indices containing x when x lies in at most
half of the members, the indices missing x otherwise. The fibers of epsilon are the level-0
face labels; each further level pushes one copy of every label to each facet of its face.
Vol_i is the total size of the level-i labels, Vol_1 being the volume proper.

Three independent routes compute Vol_i and must agree:
- vol(build_labelings(fam), i)            the labeling cascade
- vol_via_falling_factorial(fam, i)       sum of (|eps(x)|)_i
- vol_via_generating_function(fam, i)     i-th derivative of v(t) at t = 1
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import sympy

from emd_simplex.utils.logging import emd_logger as LOG

from .errors import (
    BadIndexError,
    DimensionTooLargeError,
    DimensionTooSmallError,
    EmptyFaceError,
    UnknownDotError,
)
from .histogram import DotSet
from .symmetric_difference import DotMultiset, VertexFamily, canonical_order

__all__ = [
    "Face",
    "FaceLabeling",
    "EmSimplex",
    "T",
    "iter_faces",
    "epsilon",
    "epsilon_table",
    "build_labelings",
    "check_dimension",
    "vol",
    "vol_via_falling_factorial",
    "v_polynomial",
    "poly_coefficients",
    "vol_via_generating_function",
    "edge_length",
    "face_volume",
    "surface_area",
    "DEFAULT_MAX_DIMENSION",
]

DEFAULT_MAX_DIMENSION = 20
# Faces are also encoded as bitmasks over the vertices.
_MASK_LIMIT = 62

T = sympy.Symbol("t")


@dataclass(frozen=True, order=False)
class Face:
    """A subset of the vertex indices {0..d}; stored sorted and duplicate-free."""

    indices: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        idx = tuple(sorted(set(int(i) for i in self.indices)))
        if idx and (idx[0] < 0 or idx[-1] > _MASK_LIMIT):
            raise BadIndexError(f"face indices must lie in 0..{_MASK_LIMIT}, got {idx}")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def of(cls, *indices: int) -> "Face":
        return cls(tuple(indices))

    @classmethod
    def from_mask(cls, mask: int) -> "Face":
        return cls(tuple(i for i in range(mask.bit_length()) if mask >> i & 1))

    @property
    def mask(self) -> int:
        return sum(1 << i for i in self.indices)

    @property
    def dim(self) -> int:
        return len(self.indices) - 1

    def codim(self, d: int) -> int:
        return d - self.dim

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __contains__(self, i: int) -> bool:
        return i in self.indices

    def issubset(self, other: "Face") -> bool:
        return set(self.indices) <= set(other.indices)

    def facets(self) -> List["Face"]:
        """Faces obtained by dropping one vertex; there are #F of them."""
        return [Face(self.indices[:k] + self.indices[k + 1:]) for k in range(len(self.indices))]

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (len(self.indices), self.indices)

    def label(self, names: Optional[Sequence[str]] = None) -> str:
        if names is None:
            return "{" + ",".join(str(i) for i in self.indices) + "}"
        return "{" + ",".join(names[i] for i in self.indices) + "}"

    def __str__(self) -> str:
        return self.label()


@dataclass(frozen=True)
class FaceLabeling:
    """Level-i labels, defined on faces of dimension at most ``top_dim``; empty labels omitted."""

    level: int
    top_dim: int
    labels: Mapping[Face, DotMultiset]

    def __getitem__(self, face: Face) -> DotMultiset:
        return self.labels.get(face, DotMultiset())

    @property
    def total(self) -> int:
        return sum(len(lbl) for lbl in self.labels.values())

    def faces(self) -> List[Face]:
        return list(self.labels)


@dataclass(frozen=True)
class EmSimplex:
    """A family together with its epsilon table and labelings for levels 0..ceil(d/2)."""

    family: VertexFamily
    epsilon_table: Mapping[Hashable, Face]
    labelings: Tuple[FaceLabeling, ...]

    @property
    def d(self) -> int:
        return self.family.d

    def labeling(self, i: int) -> FaceLabeling:
        """Level-i labeling; levels above ceil(d/2) are empty."""
        if i < 0:
            raise BadIndexError(f"level must be >= 0, got {i}")
        if i < len(self.labelings):
            return self.labelings[i]
        return FaceLabeling(i, (self.d - 1) // 2 - i, {})

    def label(self, i: int, face: Face) -> DotMultiset:
        return self.labeling(i)[face]

    def vol(self, i: int = 1) -> int:
        return vol(self, i)


def iter_faces(d: int, min_size: int = 1, max_size: Optional[int] = None) -> Iterator[Face]:
    """Faces of the d-simplex with min_size <= #F <= max_size, by size then lexicographically."""
    top = d + 1 if max_size is None else min(max_size, d + 1)
    for k in range(max(min_size, 0), top + 1):
        for combo in combinations(range(d + 1), k):
            yield Face(combo)


def _memberships(fam: VertexFamily, x: Hashable) -> Tuple[int, ...]:
    return tuple(i for i, member in enumerate(fam.members) if x in member)


def _epsilon_from_memberships(d: int, inside: Tuple[int, ...]) -> Face:
    # Min and Med keep the containing indices, Maj records the missing ones.
    if 2 * len(inside) <= d + 1:
        return Face(inside)
    present = set(inside)
    return Face(tuple(i for i in range(d + 1) if i not in present))


def epsilon(fam: VertexFamily, x: Hashable) -> Face:
    """The face eps(x) of the half-skeleton recording where x lives (or is missing)."""
    inside = _memberships(fam, x)
    if not inside:
        raise UnknownDotError(f"{x!r} is not in the union of the family")
    return _epsilon_from_memberships(fam.d, inside)


def epsilon_table(fam: VertexFamily) -> Dict[Hashable, Face]:
    """eps(x) for every x in the union, in canonical order."""
    return {x: _epsilon_from_memberships(fam.d, _memberships(fam, x)) for x in canonical_order(fam.union())}


def _resolve_max_dimension(max_dimension: Optional[int]) -> int:
    if max_dimension is not None:
        return max_dimension
    from emd_simplex.utils.site_config import get_site_config

    return int(get_site_config().get("emd_max_dimension", DEFAULT_MAX_DIMENSION))


def check_dimension(d: int, max_dimension: Optional[int] = None) -> None:
    """Raise DimensionTooLargeError before any 2^(d+1) face enumeration above the configured bound."""
    limit = _resolve_max_dimension(max_dimension)
    if d > limit:
        raise DimensionTooLargeError(f"d={d} exceeds the practical bound {limit}")


def _sorted_labels(labels: Mapping[Face, DotMultiset]) -> Dict[Face, DotMultiset]:
    return {f: labels[f] for f in sorted(labels, key=Face.sort_key) if labels[f]}


def build_labelings(fam: VertexFamily, *, max_dimension: Optional[int] = None) -> EmSimplex:
    """Construct the EM simplex: the epsilon table and labelings for levels 0..ceil(d/2)."""
    check_dimension(fam.d, max_dimension)

    table = epsilon_table(fam)
    fibers: Dict[Face, List[Hashable]] = {}
    for x, face in table.items():
        fibers.setdefault(face, []).append(x)

    half = (fam.d - 1) // 2
    current = _sorted_labels({f: DotMultiset(xs) for f, xs in fibers.items()})
    labelings = [FaceLabeling(0, half, current)]

    for level in range(1, (fam.d + 1) // 2 + 1):
        spread: Dict[Face, DotMultiset] = {}
        for face, lbl in current.items():
            for facet in face.facets():
                spread[facet] = spread[facet] + lbl if facet in spread else lbl
        current = _sorted_labels(spread)
        labelings.append(FaceLabeling(level, half - level, current))

    LOG.debug(
        "build_labelings: d=%s |union|=%s level sizes=%s",
        fam.d,
        len(table),
        [lab.total for lab in labelings],
    )
    return EmSimplex(fam, table, tuple(labelings))


def vol(simplex: EmSimplex, i: int = 1) -> int:
    """Vol_i: total size of the level-i labels (0 above level ceil(d/2))."""
    return simplex.labeling(i).total


def vol_via_falling_factorial(fam: VertexFamily, i: int = 1) -> int:
    """Vol_i as the sum over the union of the falling factorial (|eps(x)|)_i; no labelings built."""
    if i < 0:
        raise BadIndexError(f"level must be >= 0, got {i}")
    return sum(math.perm(len(face), i) for face in epsilon_table(fam).values())


def v_polynomial(fam: VertexFamily) -> sympy.Poly:
    """v(t) = sum over the union of t^|eps(x)|, an integer polynomial in T."""
    coeffs: Dict[int, int] = {}
    for face in epsilon_table(fam).values():
        coeffs[len(face)] = coeffs.get(len(face), 0) + 1
    return sympy.Poly(sum((c * T**k for k, c in coeffs.items()), sympy.Integer(0)), T, domain=sympy.ZZ)


def poly_coefficients(poly: sympy.Poly) -> List[int]:
    """Coefficients of t^0, t^1, ... as Python ints."""
    return [int(c) for c in reversed(poly.all_coeffs())]


def vol_via_generating_function(fam: VertexFamily, i: int = 1) -> int:
    """Vol_i as the i-th symbolic derivative of v(t), evaluated at t = 1."""
    if i < 0:
        raise BadIndexError(f"level must be >= 0, got {i}")
    poly = v_polynomial(fam)
    for _ in range(i):
        poly = poly.diff(T)
    return int(poly.eval(1))


def _check_vertex(fam: VertexFamily, i: int) -> None:
    if not isinstance(i, int) or not 0 <= i <= fam.d:
        raise BadIndexError(f"vertex index {i!r} outside 0..{fam.d}")


def edge_length(fam: VertexFamily, i: int, j: int) -> int:
    """Vol of the edge {i, j}, which is |X_i △ X_j|."""
    _check_vertex(fam, i)
    _check_vertex(fam, j)
    if i == j:
        raise BadIndexError(f"an edge needs two distinct vertices, got {i} twice")
    a, b = fam.members[i], fam.members[j]
    if isinstance(a, DotSet) and isinstance(b, DotSet) and a.n == b.n:
        return sum(abs(p - q) for p, q in zip(a.heights, b.heights))
    return len(frozenset(a) ^ frozenset(b))


def face_volume(fam: VertexFamily, face: Face | Iterable[int]) -> int:
    """Vol(F): the volume of the EM simplex on the sub-family F, recomputed from scratch."""
    face = face if isinstance(face, Face) else Face(tuple(face))
    if not face.indices:
        raise EmptyFaceError("face_volume needs a nonempty face")
    for i in face:
        _check_vertex(fam, i)
    return vol_via_falling_factorial(fam.restrict(face.indices), 1)


def surface_area(fam: VertexFamily) -> int:
    """SA: sum of the volumes of the d+1 facets."""
    if fam.d < 1:
        raise DimensionTooSmallError("surface area needs d >= 1")
    full = Face(tuple(range(fam.d + 1)))
    return sum(face_volume(fam, facet) for facet in full.facets())
