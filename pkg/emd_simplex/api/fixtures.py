# -*- coding: utf-8 -*-
"""Built-in worked examples and seeded random families.

``fig1`` (alias ``pair``) is the two-histogram pair whose EMD is 7; ``fig2-sec5`` (alias
``tetrahedron``) is the four-histogram family on n = 3 bins, m = 3 whose EM simplex has
volume 7. Random families are drawn with a numpy Generator so every run with the same seed
sees the same corpus.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from .errors import InvalidHistogramError, UnknownExampleError
from .histogram import Histogram
from .instance_file import InstanceFile

__all__ = [
    "Example",
    "EXAMPLES",
    "EXAMPLE_ALIASES",
    "example_names",
    "get_example",
    "random_histogram",
    "random_family",
    "random_instance",
]


@dataclass(frozen=True)
class Example:
    name: str
    title: str
    instance: InstanceFile


def _instance(name: str, rows: List[Tuple[int, ...]]) -> InstanceFile:
    hs = tuple(Histogram(r) for r in rows)
    return InstanceFile(
        n=hs[0].n,
        m=hs[0].m,
        names=tuple(f"h{i}" for i in range(len(hs))),
        histograms=hs,
        source=f"example:{name}",
    )


EXAMPLES: Dict[str, Example] = {
    "fig1": Example(
        "fig1",
        "Two histograms on five bins; EMD 7 as the symmetric difference of their dot diagrams",
        _instance("fig1", [(3, 0, 1, 4, 2), (1, 4, 1, 1, 3)]),
    ),
    "fig2-sec5": Example(
        "fig2-sec5",
        "Four histograms on three bins; a 3-dimensional EM simplex of volume 7",
        _instance("fig2-sec5", [(2, 0, 1), (0, 3, 0), (1, 0, 2), (0, 0, 3)]),
    ),
}

EXAMPLE_ALIASES: Dict[str, str] = {"pair": "fig1", "tetrahedron": "fig2-sec5"}


def example_names() -> List[str]:
    return sorted(EXAMPLES)


def get_example(name: str) -> Example:
    """Look up a built-in example by name or alias."""
    try:
        return EXAMPLES[EXAMPLE_ALIASES.get(name, name)]
    except KeyError:
        raise UnknownExampleError(f"unknown example {name!r}; choose one of {', '.join(example_names())}")


def random_histogram(rng: np.random.Generator, n: int, m: int) -> Histogram:
    """Uniform weak composition of m into n parts (stars and bars: n-1 bars among m+n-1 slots)."""
    if n < 1 or m < 0:
        raise InvalidHistogramError(f"need n >= 1 and m >= 0, got n={n}, m={m}")
    if n == 1:
        return Histogram((m,))
    bars = sorted(int(b) for b in rng.choice(m + n - 1, size=n - 1, replace=False))
    counts = []
    prev = -1
    for b in bars:
        counts.append(b - prev - 1)
        prev = b
    counts.append(m + n - 2 - prev)
    return Histogram(tuple(counts))


def random_family(
    rng: np.random.Generator,
    n_max: int,
    m_max: int,
    d_max: int,
    *,
    d_min: int = 1,
) -> List[Histogram]:
    """n in [1, n_max], m in [0, m_max], d in [d_min, d_max], then d+1 uniform histograms."""
    if n_max < 1 or m_max < 0 or d_max < d_min or d_min < 0:
        raise InvalidHistogramError(f"bad bounds n_max={n_max}, m_max={m_max}, d_max={d_max}, d_min={d_min}")
    n = int(rng.integers(1, n_max, endpoint=True))
    m = int(rng.integers(0, m_max, endpoint=True))
    d = int(rng.integers(d_min, d_max, endpoint=True))
    return [random_histogram(rng, n, m) for _ in range(d + 1)]


def random_instance(rng: np.random.Generator, n_max: int, m_max: int, d_max: int, *, label: str = "random") -> InstanceFile:
    hs = random_family(rng, n_max, m_max, d_max)
    return InstanceFile(
        n=hs[0].n,
        m=hs[0].m,
        names=tuple(f"h{i}" for i in range(len(hs))),
        histograms=tuple(hs),
        source=label,
    )
