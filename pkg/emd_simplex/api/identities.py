# -*- coding: utf-8 -*-
"""Volume identities of EM simplices, checked in exact integer form.

Every identity divides by d (or 2d), so each check multiplies the denominators out and
compares two Python ints. A failing identity is reported (holds=False), never raised.

    cayley_menger_check     d*Vol         = Vol_2 + sum of edge lengths
    surface_area_check      2d*Vol        = 2*SA + (d+1)*|Med|
    corollary_cm_census     d*EMD         = sum pairwise EMD + sum_k k(k-1)*#{deg in {k, d-k+1}}
    heron_facets_check      2d*EMD        = 2*sum leave-one-out EMD + (d+1)*|Med|
    semiperimeter_check     2*EMD         = sum pairwise EMD                        (d = 2)
    facet_edge_remark_check SA            = sum of edge lengths                     (d = 3)

filtration_export assigns each nonempty face its volume; the values grow along inclusions.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from emd_simplex.utils.logging import compact_json
from emd_simplex.utils.logging import emd_logger as LOG

from .errors import DimensionTooSmallError
from .histogram import Histogram, check_same_shape, pairwise_emd
from .simplex import Face, build_labelings, check_dimension, edge_length, face_volume, iter_faces, surface_area, vol_via_falling_factorial
from .symmetric_difference import VertexFamily, degree_profile, generalized_emd, min_med_maj

__all__ = [
    "Fingerprint",
    "IdentityReport",
    "fingerprint",
    "cayley_menger_check",
    "surface_area_check",
    "corollary_cm_census",
    "heron_facets_check",
    "semiperimeter_check",
    "facet_edge_remark_check",
    "identity_checks",
    "filtration_export",
    "is_monotone_filtration",
    "filtration_order",
]


@dataclass(frozen=True)
class Fingerprint:
    """Identifies the family a report was computed for."""

    n: Optional[int]
    m: Optional[int]
    d: int
    digest: str

    def as_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "m": self.m, "d": self.d, "digest": self.digest}


@dataclass(frozen=True)
class IdentityReport:
    """lhs and the named rhs terms, both already multiplied through by the denominator."""

    name: str
    statement: str
    lhs: int
    rhs_terms: Mapping[str, int]
    fingerprint: Fingerprint
    details: Mapping[str, Any] = field(default_factory=dict)

    @property
    def rhs(self) -> int:
        return sum(self.rhs_terms.values())

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def as_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "statement": self.statement,
            "lhs": self.lhs,
            "rhs_terms": dict(self.rhs_terms),
            "rhs": self.rhs,
            "holds": self.holds,
            "details": dict(self.details),
            "fingerprint": self.fingerprint.as_dict(),
        }


def fingerprint(fam: VertexFamily) -> Fingerprint:
    """(n, m, d) plus a short sha256 of the counts (or of the member sets for raw families)."""
    if fam.histograms is not None:
        h0 = fam.histograms[0]
        canon = ";".join(",".join(str(c) for c in h.counts) for h in fam.histograms)
        n, m = h0.n, h0.m
    else:
        canon = ";".join(repr(sorted(map(repr, member))) for member in fam.members)
        n = m = None
    digest = hashlib.sha256(canon.encode("utf-8")).hexdigest()[:16]
    return Fingerprint(n, m, fam.d, digest)


def _require_positive_dimension(d: int, what: str) -> None:
    if d < 1:
        raise DimensionTooSmallError(f"{what} needs d >= 1, got d={d}")


def _family(hs: Sequence[Histogram]) -> VertexFamily:
    return VertexFamily.from_histograms(hs)


def _log_report(report: IdentityReport) -> IdentityReport:
    if report.holds:
        LOG.debug("%s holds: %s", report.name, compact_json(report.as_dict()))
    else:
        LOG.error("%s FAILED: %s", report.name, compact_json(report.as_dict()))
    return report


def cayley_menger_check(fam: VertexFamily, *, max_dimension: Optional[int] = None) -> IdentityReport:
    """d * Vol = Vol_2 + sum over edges of the edge length."""
    d = fam.d
    _require_positive_dimension(d, "cayley_menger_check")
    simplex = build_labelings(fam, max_dimension=max_dimension)
    volume, vol2 = simplex.vol(1), simplex.vol(2)
    edges = {f"{i}-{j}": edge_length(fam, i, j) for i, j in combinations(range(d + 1), 2)}
    return _log_report(
        IdentityReport(
            name="cayley_menger",
            statement="d*Vol = Vol_2 + sum(edge lengths)",
            lhs=d * volume,
            rhs_terms={"vol_2": vol2, "edge_sum": sum(edges.values())},
            fingerprint=fingerprint(fam),
            details={"d": d, "vol": volume, "edges": edges},
        )
    )


def surface_area_check(fam: VertexFamily, *, max_dimension: Optional[int] = None) -> IdentityReport:
    """2d * Vol = 2 * SA + (d+1) * |Med|, the Med term being 0 for even d."""
    d = fam.d
    _require_positive_dimension(d, "surface_area_check")
    volume = build_labelings(fam, max_dimension=max_dimension).vol(1)
    area = surface_area(fam)
    med = len(min_med_maj(fam).med) if d % 2 == 1 else 0
    return _log_report(
        IdentityReport(
            name="surface_area",
            statement="2d*Vol = 2*SA + (d+1)*|Med|",
            lhs=2 * d * volume,
            rhs_terms={"2*surface_area": 2 * area, "(d+1)*med": (d + 1) * med},
            fingerprint=fingerprint(fam),
            details={"d": d, "vol": volume, "surface_area": area, "med": med},
        )
    )


def corollary_cm_census(hs: Sequence[Histogram]) -> IdentityReport:
    """d * EMD = sum of pairwise EMDs + sum_{k=2}^{ceil(d/2)} k(k-1) #{x : deg x in {k, d-k+1}}."""
    fam = _family(hs)
    d = fam.d
    _require_positive_dimension(d, "corollary_cm_census")
    degrees = degree_profile(fam).degrees
    census: Dict[str, int] = {}
    for k in range(2, (d + 1) // 2 + 1):
        # A set, so x is counted once when k == d-k+1.
        targets = {k, d - k + 1}
        count = sum(1 for deg in degrees.values() if deg in targets)
        census[str(k)] = k * (k - 1) * count
    census_term = sum(census.values())
    pairwise = sum(pairwise_emd(hs[i], hs[j]) for i, j in combinations(range(d + 1), 2))
    emd = generalized_emd(hs)
    vol2 = vol_via_falling_factorial(fam, 2)
    return _log_report(
        IdentityReport(
            name="cm_census",
            statement="d*EMD = sum(pairwise EMD) + sum_k k(k-1)*#{deg in {k, d-k+1}}",
            lhs=d * emd,
            rhs_terms={"pairwise_sum": pairwise, "census": census_term},
            fingerprint=fingerprint(fam),
            details={"d": d, "emd": emd, "census_by_k": census, "vol_2": vol2, "census_equals_vol_2": census_term == vol2},
        )
    )


def heron_facets_check(hs: Sequence[Histogram]) -> IdentityReport:
    """2d * EMD = 2 * sum_i EMD(all but h_i) + (d+1) * |Med| (Med term only for odd d)."""
    fam = _family(hs)
    d = fam.d
    _require_positive_dimension(d, "heron_facets_check")
    facets = [generalized_emd([h for j, h in enumerate(hs) if j != i]) for i in range(d + 1)]
    med = len(min_med_maj(fam).med) if d % 2 == 1 else 0
    emd = generalized_emd(hs)
    return _log_report(
        IdentityReport(
            name="heron_facets",
            statement="2d*EMD = 2*sum(facet EMDs) + (d+1)*|Med|",
            lhs=2 * d * emd,
            rhs_terms={"2*facet_sum": 2 * sum(facets), "(d+1)*med": (d + 1) * med},
            fingerprint=fingerprint(fam),
            details={"d": d, "emd": emd, "facet_emds": facets, "med": med},
        )
    )


def semiperimeter_check(hs: Sequence[Histogram]) -> IdentityReport:
    """For three histograms: 2 * EMD = sum of the three pairwise EMDs."""
    fam = _family(hs)
    if fam.d != 2:
        raise DimensionTooSmallError(f"semiperimeter_check needs exactly three histograms, got d={fam.d}")
    pairs = {f"{i}-{j}": pairwise_emd(hs[i], hs[j]) for i, j in combinations(range(3), 2)}
    emd = generalized_emd(hs)
    return _log_report(
        IdentityReport(
            name="semiperimeter",
            statement="2*EMD = sum(pairwise EMD)",
            lhs=2 * emd,
            rhs_terms={"pairwise_sum": sum(pairs.values())},
            fingerprint=fingerprint(fam),
            details={"emd": emd, "pairwise": pairs},
        )
    )


def facet_edge_remark_check(fam: VertexFamily) -> IdentityReport:
    """For d = 3 every edge lies in two triangular facets, so SA = sum of edge lengths."""
    if fam.d != 3:
        raise DimensionTooSmallError(f"facet_edge_remark_check needs d = 3, got d={fam.d}")
    area = surface_area(fam)
    edges = sum(edge_length(fam, i, j) for i, j in combinations(range(4), 2))
    return _log_report(
        IdentityReport(
            name="facet_edge_remark",
            statement="SA = sum(edge lengths)",
            lhs=area,
            rhs_terms={"edge_sum": edges},
            fingerprint=fingerprint(fam),
            details={"surface_area": area},
        )
    )


def identity_checks(hs: Sequence[Histogram], *, max_dimension: Optional[int] = None) -> List[IdentityReport]:
    """Every identity that applies to the family's dimension; empty for d = 0."""
    fam = _family(hs)
    if fam.d < 1:
        return []
    reports = [
        cayley_menger_check(fam, max_dimension=max_dimension),
        surface_area_check(fam, max_dimension=max_dimension),
        corollary_cm_census(hs),
        heron_facets_check(hs),
    ]
    if fam.d == 2:
        reports.append(semiperimeter_check(hs))
    if fam.d == 3:
        reports.append(facet_edge_remark_check(fam))
    return reports


def filtration_export(hs: Sequence[Histogram], *, max_dimension: Optional[int] = None) -> Dict[Face, int]:
    """Vol(F) for every nonempty face F; vertices get 0."""
    check_same_shape(hs)
    fam = _family(hs)
    check_dimension(fam.d, max_dimension)
    return {face: face_volume(fam, face) for face in iter_faces(fam.d, min_size=1)}


def is_monotone_filtration(values: Mapping[Face, int]) -> bool:
    """F ⊆ G implies value(F) <= value(G); checking every face against its facets suffices."""
    for face, value in values.items():
        for facet in face.facets():
            if facet in values and values[facet] > value:
                return False
    return True


def filtration_order(values: Mapping[Face, int]) -> List[Tuple[Face, int]]:
    """Faces in insertion order for a filtered complex: by value, then dimension, then indices."""
    return sorted(values.items(), key=lambda item: (item[1], len(item[0]), item[0].indices))
