# -*- coding: utf-8 -*-
"""Run reports for the command line: build them as ordered dicts, then render.

Every builder inserts keys in a fixed order and never records times, paths of temp files
or random state, so rendering the same instance twice gives byte-identical text. ``render``
emits either the key/value text form or JSON with the same content; both are described in
docs/INSTANCE_FORMAT.md.
"""
from __future__ import annotations

import json
from typing import Any, Dict, Hashable, Iterable, List, Optional, Tuple, Union

from emd_simplex.utils.logging import emd_logger as LOG

from .errors import BudgetExceededError
from .fixtures import Example
from .histogram import DotSet, dot_symmetric_difference, transport_plan
from .identities import filtration_export, filtration_order, fingerprint, identity_checks
from .instance_file import InstanceFile
from .oracle import brute_force_emd
from .simplex import (
    EmSimplex,
    Face,
    build_labelings,
    edge_length,
    face_volume,
    poly_coefficients,
    v_polynomial,
    vol_via_falling_factorial,
    vol_via_generating_function,
)
from .symmetric_difference import DotMultiset, generalized_emd, generalized_symmetric_difference, min_med_maj

__all__ = [
    "dot_text",
    "multiset_text",
    "render_dot_diagram",
    "build_compute_report",
    "build_verify_report",
    "build_example_report",
    "render",
]

Report = Dict[str, Any]


def dot_text(x: Hashable) -> str:
    if isinstance(x, tuple) and len(x) == 2:
        return f"({x[0]},{x[1]})"
    return str(x)


def multiset_text(ms: DotMultiset) -> str:
    """``(1,1)^2 (2,2)`` style; ``-`` for the empty multiset."""
    if not ms:
        return "-"
    return " ".join(dot_text(x) + (f"^{k}" if k > 1 else "") for x, k in ms.items())


def _cell(k: int) -> str:
    if k <= 0:
        return "."
    if k == 1:
        return "o"
    return str(k) if k < 10 else "*"


def render_dot_diagram(
    dots: Union[DotSet, DotMultiset, Iterable[Tuple[int, int]]],
    n: Optional[int] = None,
    m: Optional[int] = None,
) -> List[str]:
    """Grid rows, top row first: ``.`` no dot, ``o`` a dot, a digit for a repeated dot.

    A DotSet knows its own n x m box; for multisets and plain dot lists the box defaults to
    the smallest one holding every dot.
    """
    if isinstance(dots, DotSet):
        n = dots.n if n is None else n
        m = dots.m if m is None else m

        def mult(col: int, row: int) -> int:
            return 1 if (col, row) in dots else 0

    else:
        ms = dots if isinstance(dots, DotMultiset) else DotMultiset(dots)
        support = ms.support()
        n = max((x[0] for x in support), default=0) if n is None else n
        m = max((x[1] for x in support), default=0) if m is None else m
        mult = lambda col, row: ms.multiplicity((col, row))  # noqa: E731

    return ["".join(_cell(mult(col, row)) for col in range(1, n + 1)) for row in range(m, 0, -1)]


def _compute(inst: InstanceFile, *, filtration: bool, max_dimension: Optional[int]) -> Tuple[Report, EmSimplex]:
    fam = inst.family()
    hs = list(inst.histograms)
    d = fam.d
    simplex = build_labelings(fam, max_dimension=max_dimension)
    top = (d + 1) // 2

    report: Report = {}
    report["instance"] = {
        "source": inst.source,
        "n": inst.n,
        "m": inst.m,
        "d": d,
        "names": list(inst.names),
        "histograms": {name: list(h.counts) for name, h in zip(inst.names, hs)},
    }
    report["fingerprint"] = fingerprint(fam).digest
    report["emd"] = generalized_emd(hs)
    report["union_size"] = len(simplex.epsilon_table)
    report["volumes"] = [simplex.vol(i) for i in range(top + 1)]
    report["v_coefficients"] = poly_coefficients(v_polynomial(fam))

    report["edges"] = [[0 if i == j else edge_length(fam, i, j) for j in range(d + 1)] for i in range(d + 1)]
    report["edge_sum"] = sum(report["edges"][i][j] for i in range(d + 1) for j in range(i + 1, d + 1))

    if d >= 1:
        # Facet i is the one opposite vertex i.
        facets = [face_volume(fam, Face(tuple(j for j in range(d + 1) if j != i))) for i in range(d + 1)]
        report["facet_volumes"] = facets
        report["surface_area"] = sum(facets)
    else:
        report["facet_volumes"] = []
        report["surface_area"] = None

    parts = min_med_maj(fam)
    report["min_med_maj"] = {"min": len(parts.min), "med": len(parts.med), "maj": len(parts.maj)}

    if filtration:
        values = filtration_export(hs, max_dimension=max_dimension)
        report["filtration"] = [{"face": face.label(), "value": value} for face, value in filtration_order(values)]
    return report, simplex


def build_compute_report(
    inst: InstanceFile,
    *,
    filtration: bool = False,
    max_dimension: Optional[int] = None,
) -> Report:
    """EMD, Vol_0..Vol_ceil(d/2), v(t) coefficients, edges, facet volumes and the Min/Med/Maj census."""
    report, _ = _compute(inst, filtration=filtration, max_dimension=max_dimension)
    return report


def _volume_routes(simplex: EmSimplex) -> Dict[str, Any]:
    fam = simplex.family
    levels = (simplex.d + 1) // 2 + 2
    mismatches = []
    for i in range(levels):
        values = (simplex.vol(i), vol_via_falling_factorial(fam, i), vol_via_generating_function(fam, i))
        if len(set(values)) != 1:
            LOG.error("volume routes disagree at level %s: %s", i, values)
            mismatches.append(i)
    return {"status": "fail" if mismatches else "pass", "levels": levels, "mismatches": mismatches}


def _oracle(inst: InstanceFile, emd: int, budget: Optional[int]) -> Dict[str, Any]:
    try:
        result = brute_force_emd(inst.histograms, budget=budget)
    except BudgetExceededError as e:
        LOG.warning("oracle skipped for %s: %s", inst.source, e)
        return {"status": "skipped", "candidates": e.count, "budget": e.budget}
    return {
        "status": "pass" if result.value == emd else "fail",
        "value": result.value,
        "argmin": list(result.argmin),
        "evaluated": result.evaluated,
    }


def _verify(
    inst: InstanceFile,
    *,
    budget: Optional[int],
    filtration: bool,
    max_dimension: Optional[int],
) -> Tuple[Report, EmSimplex]:
    report, simplex = _compute(inst, filtration=filtration, max_dimension=max_dimension)

    if simplex.d < 1:
        report["identities"] = {"status": "skipped", "checks": []}
    else:
        checks = []
        for r in identity_checks(list(inst.histograms), max_dimension=max_dimension):
            entry = r.as_dict()
            entry.pop("fingerprint")
            checks.append(entry)
        status = "pass" if all(c["holds"] for c in checks) else "fail"
        report["identities"] = {"status": status, "checks": checks}

    report["volume_routes"] = _volume_routes(simplex)
    report["oracle"] = _oracle(inst, report["emd"], budget)
    report["ok"] = all(report[key]["status"] != "fail" for key in ("identities", "volume_routes", "oracle"))
    return report, simplex


def build_verify_report(
    inst: InstanceFile,
    *,
    budget: Optional[int] = None,
    filtration: bool = False,
    max_dimension: Optional[int] = None,
) -> Report:
    """Compute report plus every applicable identity, the three volume routes and the oracle.

    ``ok`` is False when any of them fails; an oracle over budget is "skipped", not failed.
    """
    report, _ = _verify(inst, budget=budget, filtration=filtration, max_dimension=max_dimension)
    return report


def build_example_report(
    example: Example,
    *,
    budget: Optional[int] = None,
    filtration: bool = False,
    max_dimension: Optional[int] = None,
) -> Report:
    inst = example.instance
    verified, simplex = _verify(inst, budget=budget, filtration=filtration, max_dimension=max_dimension)
    fam = simplex.family

    walkthrough: Dict[str, Any] = {}
    walkthrough["dot_diagrams"] = {inst.names[i]: render_dot_diagram(member) for i, member in enumerate(fam.members)}
    walkthrough["epsilon"] = {dot_text(x): face.label() for x, face in simplex.epsilon_table.items()}
    walkthrough["labelings"] = {
        str(lab.level): {face.label(): multiset_text(lbl) for face, lbl in lab.labels.items()}
        for lab in simplex.labelings
    }
    walkthrough["generalized_symmetric_difference"] = render_dot_diagram(
        generalized_symmetric_difference(fam), n=inst.n, m=inst.m
    )
    if fam.d == 1:
        h0, h1 = inst.histograms
        only0, only1 = dot_symmetric_difference(h0, h1)
        walkthrough["only_in"] = {
            inst.names[0]: " ".join(dot_text(x) for x in only0) or "-",
            inst.names[1]: " ".join(dot_text(x) for x in only1) or "-",
        }
        walkthrough["transport_plan"] = [
            f"{mv.count} from bin {mv.source} to bin {mv.target} (work {mv.work})" for mv in transport_plan(h0, h1)
        ]

    report: Report = {"example": example.name, "title": example.title}
    report.update(verified)
    report["walkthrough"] = walkthrough
    return report


def _scalar(v: Any) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _flatten(prefix: str, value: Any, lines: List[str]) -> None:
    if isinstance(value, dict):
        if not value:
            lines.append(f"{prefix}: {{}}")
            return
        for key, sub in value.items():
            _flatten(f"{prefix}.{key}" if prefix else str(key), sub, lines)
    elif isinstance(value, list):
        if not value:
            lines.append(f"{prefix}: []")
        elif all(isinstance(v, str) for v in value):
            lines.append(f"{prefix}:")
            lines.extend("  " + v for v in value)
        elif all(v is None or isinstance(v, (int, bool)) for v in value):
            lines.append(f"{prefix}: " + " ".join(_scalar(v) for v in value))
        else:
            for i, sub in enumerate(value):
                _flatten(f"{prefix}.{i}", sub, lines)
    else:
        lines.append(f"{prefix}: {_scalar(value)}")


def render(report: Report, machine: bool = False) -> str:
    """Key/value text (``a.b.c: value`` per line), or JSON when ``machine`` is set."""
    if machine:
        return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    lines: List[str] = []
    _flatten("", report, lines)
    return "\n".join(lines) + "\n"
