# -*- coding: utf-8 -*-
"""
Test suite for identities.py: volume identities and the face filtration.
"""
from __future__ import annotations

import logging
import unittest

import numpy as np

from emd_simplex.api.errors import DimensionTooLargeError, DimensionTooSmallError
from emd_simplex.api.fixtures import random_family
from emd_simplex.api.histogram import Histogram
from emd_simplex.api.identities import (
    IdentityReport,
    cayley_menger_check,
    corollary_cm_census,
    facet_edge_remark_check,
    filtration_export,
    filtration_order,
    fingerprint,
    heron_facets_check,
    identity_checks,
    is_monotone_filtration,
    semiperimeter_check,
    surface_area_check,
)
from emd_simplex.api.simplex import Face
from emd_simplex.api.symmetric_difference import VertexFamily, min_med_maj

FOUR = [Histogram((2, 0, 1)), Histogram((0, 3, 0)), Histogram((1, 0, 2)), Histogram((0, 0, 3))]


def seeded_corpus(seed: int = 2024, count: int = 1000, d_max: int = 8):
    rng = np.random.default_rng(seed)
    return [random_family(rng, 5, 5, d_max) for _ in range(count)]


class TestFourHistogramIdentities(unittest.TestCase):
    """Each identity on the four-histogram family, with its exact terms."""

    def setUp(self):
        self.fam = VertexFamily.from_histograms(FOUR)

    def test_cayley_menger(self):
        """3*7 = 4 + 17."""
        r = cayley_menger_check(self.fam)
        self.assertTrue(r.holds)
        self.assertEqual(r.lhs, 21)
        self.assertEqual(dict(r.rhs_terms), {"vol_2": 4, "edge_sum": 17})

    def test_surface_area(self):
        """2*3*7 = 2*17 + 4*2."""
        r = surface_area_check(self.fam)
        self.assertTrue(r.holds)
        self.assertEqual(r.lhs, 42)
        self.assertEqual(dict(r.rhs_terms), {"2*surface_area": 34, "(d+1)*med": 8})

    def test_census(self):
        r = corollary_cm_census(FOUR)
        self.assertTrue(r.holds)
        self.assertEqual(r.rhs_terms["pairwise_sum"], 17)
        self.assertEqual(r.rhs_terms["census"], 4)
        self.assertEqual(r.details["census_by_k"], {"2": 4})
        self.assertTrue(r.details["census_equals_vol_2"])

    def test_heron_facets(self):
        r = heron_facets_check(FOUR)
        self.assertTrue(r.holds)
        self.assertEqual(r.details["facet_emds"], [4, 4, 5, 4])

    def test_facet_edge_remark(self):
        r = facet_edge_remark_check(self.fam)
        self.assertTrue(r.holds)
        self.assertEqual(r.lhs, 17)

    def test_semiperimeter_on_a_triangle(self):
        r = semiperimeter_check(FOUR[:3])
        self.assertTrue(r.holds)
        self.assertEqual(r.lhs, 8)

    def test_identity_checks_selection(self):
        names = [r.name for r in identity_checks(FOUR)]
        self.assertEqual(names, ["cayley_menger", "surface_area", "cm_census", "heron_facets", "facet_edge_remark"])
        self.assertIn("semiperimeter", [r.name for r in identity_checks(FOUR[:3])])


class TestDimensionGuards(unittest.TestCase):
    """Checks that need a particular dimension."""

    def test_single_histogram(self):
        single = [Histogram((1, 2))]
        self.assertEqual(identity_checks(single), [])
        with self.assertRaises(DimensionTooSmallError):
            cayley_menger_check(VertexFamily.from_histograms(single))
        with self.assertRaises(DimensionTooSmallError):
            heron_facets_check(single)

    def test_special_dimensions(self):
        with self.assertRaises(DimensionTooSmallError):
            semiperimeter_check(FOUR)
        with self.assertRaises(DimensionTooSmallError):
            facet_edge_remark_check(VertexFamily.from_histograms(FOUR[:3]))


class TestReports(unittest.TestCase):
    """IdentityReport and fingerprint plumbing."""

    def test_failing_report_is_not_raised(self):
        fp = fingerprint(VertexFamily.from_histograms(FOUR))
        r = IdentityReport("demo", "1 = 2", 1, {"two": 2}, fp)
        self.assertFalse(r.holds)
        self.assertEqual(r.as_dict()["rhs"], 2)

    def test_fingerprint_is_stable(self):
        a = fingerprint(VertexFamily.from_histograms(FOUR))
        b = fingerprint(VertexFamily.from_histograms(list(FOUR)))
        self.assertEqual(a, b)
        self.assertEqual(len(a.digest), 16)
        self.assertEqual((a.n, a.m, a.d), (3, 3, 3))
        self.assertNotEqual(a.digest, fingerprint(VertexFamily.from_histograms(FOUR[::-1])).digest)


class TestIdentitiesOnSeededCorpus(unittest.TestCase):
    """Every identity on 1000 random families up to d = 8."""

    @classmethod
    def setUpClass(cls):
        cls.corpus = [hs for hs in seeded_corpus() if len(hs) > 1]

    def test_all_identities_hold(self):
        for hs in self.corpus:
            for r in identity_checks(hs):
                self.assertTrue(r.holds, msg=f"{r.name}: {r.lhs} != {r.rhs} for {[str(h) for h in hs]}")

    def test_even_dimension_med_term_is_zero(self):
        for hs in self.corpus:
            fam = VertexFamily.from_histograms(hs)
            if fam.d % 2 == 0:
                self.assertEqual(len(min_med_maj(fam).med), 0)
                self.assertEqual(surface_area_check(fam).rhs_terms["(d+1)*med"], 0)

    def test_triangles_are_half_the_perimeter(self):
        triangles = [hs for hs in self.corpus if len(hs) == 3]
        self.assertTrue(triangles)
        for hs in triangles:
            self.assertTrue(semiperimeter_check(hs).holds)


class TestFiltration(unittest.TestCase):
    """Face volumes as a filtration of the simplex."""

    def test_four_histogram_values(self):
        values = filtration_export(FOUR)
        self.assertEqual(len(values), 15)
        self.assertEqual(values[Face.of(0)], 0)
        self.assertEqual(values[Face.of(0, 3)], 4)
        self.assertEqual(values[Face.of(0, 1, 3)], 5)
        self.assertEqual(values[Face.of(0, 1, 2, 3)], 7)
        self.assertTrue(is_monotone_filtration(values))

    def test_order(self):
        order = filtration_order(filtration_export(FOUR))
        self.assertEqual([f for f, _ in order[:4]], [Face.of(0), Face.of(1), Face.of(2), Face.of(3)])
        self.assertEqual(order[4], (Face.of(0, 2), 2))
        self.assertEqual(order[-1], (Face.of(0, 1, 2, 3), 7))

    def test_non_monotone_detected(self):
        self.assertFalse(is_monotone_filtration({Face.of(0): 1, Face.of(0, 1): 0}))

    def test_relabeling_vertices_permutes_values(self):
        """Reordering the histograms moves each face value to the relabeled face."""
        rng = np.random.default_rng(7)
        for hs in seeded_corpus(seed=41, count=100, d_max=4):
            perm = [int(p) for p in rng.permutation(len(hs))]
            original = filtration_export(hs)
            permuted = filtration_export([hs[p] for p in perm])
            self.assertEqual(len(permuted), len(original))
            for face, value in permuted.items():
                self.assertEqual(value, original[Face(tuple(perm[k] for k in face))])

    def test_dimension_bound(self):
        with self.assertRaises(DimensionTooLargeError):
            filtration_export([Histogram((1, 0))] * 31, max_dimension=20)
        with self.assertRaises(DimensionTooLargeError):
            filtration_export(FOUR, max_dimension=2)
        self.assertEqual(len(filtration_export(FOUR, max_dimension=3)), 15)

    def test_monotone_on_seeded_families(self):
        """Every pair F ⊆ G on 200 random families with d <= 4."""
        for hs in seeded_corpus(seed=99, count=200, d_max=4):
            values = filtration_export(hs)
            self.assertTrue(is_monotone_filtration(values))
            faces = list(values)
            for f in faces:
                for g in faces:
                    if f.issubset(g):
                        self.assertLessEqual(values[f], values[g])


# Run tests if executed directly
if __name__ == "__main__":
    logging.basicConfig(level=logging.WARNING)
    unittest.main(verbosity=2)
