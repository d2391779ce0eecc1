# -*- coding: utf-8 -*-
"""Brute-force ground truth for desk-scale instances.

Nothing here uses cumulative histograms or degrees, so these functions check the fast
paths in histogram / symmetric_difference rather than restate them:

- sorted_matching_emd: expand both histograms into sorted point lists and pair them off.
- brute_force_emd: try every common target histogram (every weak composition of m into
  n parts) and keep the cheapest total work, ties broken by the lexicographically least target.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from emd_simplex.utils.logging import emd_logger as LOG

from .errors import BudgetExceededError, InvalidHistogramError
from .histogram import Histogram, check_same_shape

__all__ = [
    "Composition",
    "OracleResult",
    "DEFAULT_ORACLE_BUDGET",
    "composition_count",
    "enumerate_compositions",
    "sorted_matching_emd",
    "brute_force_emd",
    "within_budget",
]

# A weak composition of m into n parts.
Composition = Tuple[int, ...]

DEFAULT_ORACLE_BUDGET = 1_000_000


@dataclass(frozen=True)
class OracleResult:
    value: int
    argmin: Composition
    evaluated: int


def composition_count(n: int, m: int) -> int:
    """C(m+n-1, n-1)."""
    return math.comb(m + n - 1, n - 1)


def enumerate_compositions(n: int, m: int) -> Iterator[Composition]:
    """Every weak composition of m into n parts, once each, in ascending lexicographic order."""
    if n < 1 or m < 0:
        raise InvalidHistogramError(f"need n >= 1 and m >= 0, got n={n}, m={m}")
    # Stars and bars: ascending bar positions give ascending compositions.
    end = m + n - 1
    for bars in itertools.combinations(range(end), n - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(end - prev - 1)
        yield tuple(parts)


def _positions(counts: Sequence[int]) -> List[int]:
    return [b for b, c in enumerate(counts, start=1) for _ in range(c)]


def _matching_cost(p: Sequence[int], q: Sequence[int]) -> int:
    return sum(abs(a - b) for a, b in zip(p, q))


def sorted_matching_emd(h0: Histogram, h1: Histogram) -> int:
    """Work of pairing the k-th smallest point of h0 with the k-th smallest point of h1."""
    check_same_shape((h0, h1))
    return _matching_cost(_positions(h0.counts), _positions(h1.counts))


def _resolve_budget(budget: Optional[int]) -> int:
    if budget is not None:
        return budget
    from emd_simplex.utils.site_config import get_site_config

    return int(get_site_config().get("emd_oracle_budget", DEFAULT_ORACLE_BUDGET))


def within_budget(n: int, m: int, budget: Optional[int] = None) -> bool:
    return composition_count(n, m) <= _resolve_budget(budget)


def brute_force_emd(hs: Sequence[Histogram], *, budget: Optional[int] = None) -> OracleResult:
    """Minimum over all targets g of sum_i sorted_matching_emd(h_i, g).

    Raises BudgetExceededError instead of sampling when there are too many targets.
    """
    hs = list(hs)
    n, m = check_same_shape(hs)
    cap = _resolve_budget(budget)
    count = composition_count(n, m)
    if count > cap:
        raise BudgetExceededError(
            f"{count} candidate targets for n={n}, m={m} exceed the oracle budget {cap}",
            count=count,
            budget=cap,
        )

    sources = [_positions(h.counts) for h in hs]
    best_value: Optional[int] = None
    best_target: Composition = ()
    evaluated = 0
    # Ascending enumeration: the first strict improvement wins ties lexicographically.
    for g in enumerate_compositions(n, m):
        evaluated += 1
        target = _positions(g)
        total = sum(_matching_cost(src, target) for src in sources)
        if best_value is None or total < best_value:
            best_value, best_target = total, g

    LOG.debug("brute_force_emd: n=%s m=%s d=%s targets=%s value=%s", n, m, len(hs) - 1, evaluated, best_value)
    return OracleResult(int(best_value or 0), best_target, evaluated)
