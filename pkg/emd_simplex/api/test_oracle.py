# -*- coding: utf-8 -*-
"""
Test suite for oracle.py, and the cross-check of the fast EMD paths against it.
"""
from __future__ import annotations

import logging
import unittest
from itertools import product

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from emd_simplex.api.errors import BudgetExceededError, InvalidHistogramError
from emd_simplex.api.fixtures import random_family
from emd_simplex.api.histogram import Histogram, histogram_count, pairwise_emd
from emd_simplex.api.oracle import (
    brute_force_emd,
    composition_count,
    enumerate_compositions,
    sorted_matching_emd,
    within_budget,
)
from emd_simplex.api.symmetric_difference import generalized_emd

FOUR = [Histogram((2, 0, 1)), Histogram((0, 3, 0)), Histogram((1, 0, 2)), Histogram((0, 0, 3))]


class TestCompositions(unittest.TestCase):
    """Enumeration of every possible target histogram."""

    def test_lexicographic_order(self):
        self.assertEqual(list(enumerate_compositions(3, 1)), [(0, 0, 1), (0, 1, 0), (1, 0, 0)])

    def test_counts(self):
        for n in range(1, 5):
            for m in range(0, 5):
                with self.subTest(n=n, m=m):
                    comps = list(enumerate_compositions(n, m))
                    self.assertEqual(len(comps), composition_count(n, m))
                    self.assertEqual(len(set(comps)), len(comps))
                    self.assertEqual(comps, sorted(comps))
                    self.assertTrue(all(sum(c) == m and len(c) == n for c in comps))
        self.assertEqual(composition_count(3, 3), histogram_count(3, 3))

    def test_many_parts(self):
        """Thousands of bins enumerate without deep call stacks."""
        comps = enumerate_compositions(5000, 2)
        self.assertEqual(next(comps), (0,) * 4999 + (2,))
        self.assertEqual(next(comps), (0,) * 4998 + (1, 1))
        self.assertEqual(list(enumerate_compositions(1200, 0)), [(0,) * 1200])

    def test_invalid_shape(self):
        with self.assertRaises(InvalidHistogramError):
            list(enumerate_compositions(0, 2))
        with self.assertRaises(InvalidHistogramError):
            list(enumerate_compositions(2, -1))


class TestBruteForce(unittest.TestCase):
    """Exhaustive minimisation over targets."""

    def test_four_histogram_family(self):
        result = brute_force_emd(FOUR)
        self.assertEqual(result.value, 7)
        self.assertEqual(result.argmin, (0, 1, 2))
        self.assertEqual(result.evaluated, 10)

    def test_all_minimizers_of_four_histogram_family(self):
        """Four targets tie at work 7; the reported one is the least of them."""
        minimizers = [
            g for g in enumerate_compositions(3, 3) if sum(sorted_matching_emd(h, Histogram(g)) for h in FOUR) == 7
        ]
        self.assertEqual(minimizers, [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 1, 1)])
        self.assertEqual(brute_force_emd(FOUR).argmin, minimizers[0])

    def test_five_bin_pair(self):
        self.assertEqual(brute_force_emd([Histogram((3, 0, 1, 4, 2)), Histogram((1, 4, 1, 1, 3))]).value, 7)

    def test_single_histogram(self):
        result = brute_force_emd([Histogram((1, 0, 2))])
        self.assertEqual(result.value, 0)
        self.assertEqual(result.argmin, (1, 0, 2))

    def test_budget(self):
        with self.assertRaises(BudgetExceededError) as ctx:
            brute_force_emd(FOUR, budget=5)
        self.assertEqual(ctx.exception.count, 10)
        self.assertEqual(ctx.exception.budget, 5)
        self.assertTrue(within_budget(3, 3, 10))
        self.assertFalse(within_budget(3, 3, 9))

    @settings(max_examples=200, deadline=None)
    @given(
        n=st.integers(min_value=1, max_value=6),
        data=st.data(),
    )
    def test_sorted_matching_is_classical_emd(self, n, data):
        m = data.draw(st.integers(min_value=0, max_value=8))
        pair = []
        for _ in range(2):
            bins = data.draw(st.lists(st.integers(min_value=0, max_value=n - 1), min_size=m, max_size=m))
            pair.append(Histogram(tuple(bins.count(b) for b in range(n))))
        self.assertEqual(sorted_matching_emd(*pair), pairwise_emd(*pair))


class TestOracleEquivalence(unittest.TestCase):
    """generalized_emd equals the brute-force minimum, with zero tolerance."""

    def test_exhaustive_small_families(self):
        """Every family with n <= 3, m <= 3, 1 <= d <= 3."""
        checked = 0
        for n in range(1, 4):
            for m in range(0, 4):
                hists = [Histogram(c) for c in enumerate_compositions(n, m)]
                for d in range(1, 4):
                    for hs in product(hists, repeat=d + 1):
                        self.assertEqual(generalized_emd(hs), brute_force_emd(hs).value, msg=str([str(h) for h in hs]))
                        checked += 1
        self.assertGreater(checked, 10_000)

    def test_seeded_random_families(self):
        """1000 families with n, m <= 5 and d <= 4."""
        rng = np.random.default_rng(20240601)
        for _ in range(1000):
            hs = random_family(rng, 5, 5, 4)
            self.assertEqual(generalized_emd(hs), brute_force_emd(hs).value)

    def test_argmin_attains_the_value(self):
        rng = np.random.default_rng(5150)
        for _ in range(300):
            hs = random_family(rng, 5, 5, 4)
            result = brute_force_emd(hs)
            target = Histogram(result.argmin)
            self.assertEqual(sum(sorted_matching_emd(h, target) for h in hs), result.value)

    def test_dropping_a_histogram_never_raises_the_value(self):
        """The full family costs at least as much as any leave-one-out sub-family."""
        rng = np.random.default_rng(5151)
        for _ in range(200):
            hs = random_family(rng, 4, 4, 4)
            value = brute_force_emd(hs).value
            for k in range(len(hs)):
                self.assertLessEqual(brute_force_emd(hs[:k] + hs[k + 1 :]).value, value)

    def test_many_bins(self):
        """1500 bins, one unit each: 1500 targets, all of work 1499."""
        n = 1500
        hs = [Histogram((1,) + (0,) * (n - 1)), Histogram((0,) * (n - 1) + (1,))]
        result = brute_force_emd(hs, budget=10_000)
        self.assertEqual(result.evaluated, n)
        self.assertEqual(result.value, n - 1)
        self.assertEqual(result.value, generalized_emd(hs))


# Run tests if executed directly
if __name__ == "__main__":
    logging.basicConfig(level=logging.WARNING)
    unittest.main(verbosity=2)
