# -*- coding: utf-8 -*-
"""Instance files: a header ``n=<int> m=<int>`` followed by ``name: c1 c2 ... cn`` rows.

    # four-histogram family
    n=3 m=3
    h0: 2 0 1
    h1: 0 3 0

``#`` starts a comment anywhere on a line; blank lines are ignored. Syntax problems raise
ParseError with a 1-based line and column; rows of the wrong length or mass raise
ShapeMismatchError. See docs/INSTANCE_FORMAT.md.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import List, Tuple, Union

from .errors import ParseError, ShapeMismatchError
from .histogram import Histogram
from .symmetric_difference import VertexFamily

__all__ = ["InstanceFile", "parse_instance_text", "load_instance"]

_HEADER_RE = re.compile(r"^\s*n\s*=\s*(\S+)\s+m\s*=\s*(\S+)\s*$")
_ROW_RE = re.compile(r"^\s*([A-Za-z0-9_.\-]+)\s*:(.*)$")
_TOKEN_RE = re.compile(r"\S+")
_INT_RE = re.compile(r"^\d+$")


@dataclass(frozen=True)
class InstanceFile:
    n: int
    m: int
    names: Tuple[str, ...]
    histograms: Tuple[Histogram, ...]
    source: str = "<string>"

    @property
    def d(self) -> int:
        return len(self.histograms) - 1

    def family(self) -> VertexFamily:
        return VertexFamily.from_histograms(self.histograms, names=self.names)

    def to_text(self) -> str:
        lines = [f"n={self.n} m={self.m}"]
        lines += [f"{name}: " + " ".join(str(c) for c in h.counts) for name, h in zip(self.names, self.histograms)]
        return "\n".join(lines) + "\n"


def _strip_comment(line: str) -> str:
    pos = line.find("#")
    return line if pos < 0 else line[:pos]


def _parse_int(token: str, line_no: int, column: int, source: str, what: str) -> int:
    if not _INT_RE.match(token):
        raise ParseError(f"{what} must be a nonnegative integer, got {token!r}", line_no, column, source)
    return int(token)


def parse_instance_text(text: str, source: str = "<string>") -> InstanceFile:
    header: Union[Tuple[int, int], None] = None
    names: List[str] = []
    rows: List[Histogram] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue

        if header is None:
            hm = _HEADER_RE.match(line)
            if not hm:
                col = len(line) - len(line.lstrip()) + 1
                raise ParseError("expected header 'n=<int> m=<int>'", line_no, col, source)
            n = _parse_int(hm.group(1), line_no, hm.start(1) + 1, source, "n")
            m = _parse_int(hm.group(2), line_no, hm.start(2) + 1, source, "m")
            if n < 1:
                raise ParseError("n must be at least 1", line_no, hm.start(1) + 1, source)
            header = (n, m)
            continue

        rm = _ROW_RE.match(line)
        if not rm:
            col = len(line) - len(line.lstrip()) + 1
            raise ParseError("expected 'name: c1 ... cn'", line_no, col, source)
        name = rm.group(1)
        if name in names:
            raise ParseError(f"duplicate histogram name {name!r}", line_no, rm.start(1) + 1, source)

        body_offset = rm.start(2)
        counts = []
        for tok in _TOKEN_RE.finditer(rm.group(2)):
            counts.append(_parse_int(tok.group(0), line_no, body_offset + tok.start() + 1, source, "count"))

        n, m = header
        if len(counts) != n:
            raise ShapeMismatchError(f"{source}:{line_no}: row {name!r} has {len(counts)} counts, expected n={n}")
        if sum(counts) != m:
            raise ShapeMismatchError(f"{source}:{line_no}: row {name!r} sums to {sum(counts)}, expected m={m}")
        names.append(name)
        rows.append(Histogram(tuple(counts)))

    if header is None:
        raise ParseError("missing header 'n=<int> m=<int>'", 1, 1, source)
    if not rows:
        raise ParseError("no histogram rows", len(text.splitlines()) or 1, 1, source)
    return InstanceFile(header[0], header[1], tuple(names), tuple(rows), source)


def load_instance(path: Union[str, Path]) -> InstanceFile:
    p = Path(path)
    return parse_instance_text(p.read_text(encoding="utf-8"), source=str(p))
