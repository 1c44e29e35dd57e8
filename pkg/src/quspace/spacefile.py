"""Text formats: finite-space description files and rational point files.

Space files::

    points 3
    labels a b c
    relation
    1 2
    2 3
    relation
    1 3

Pairs are 1-based; missing diagonal pairs are repaired on ingestion and the
repair is noted.  Point files hold one rational per line in p/q syntax.
"""
from __future__ import annotations

import hashlib
from fractions import Fraction
from typing import Iterable

from .relcore import DEFAULT_MAX_POINTS, GroundSet, QUSpace, relation_from_pairs


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_space(text: str, max_points: int = DEFAULT_MAX_POINTS) -> QUSpace:
    lines = text.splitlines()
    ground: GroundSet | None = None
    labels: tuple[str, ...] | None = None
    size = 0
    pair_blocks: list[list[tuple[int, int]]] = []
    notes: list[str] = []
    current: list[tuple[int, int]] | None = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "points":
            if size:
                raise ParseError(lineno, "duplicate points header")
            if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
                raise ParseError(lineno, "expected 'points N' with N >= 1")
            size = int(parts[1])
            if size > max_points:
                raise ParseError(
                    lineno, f"{size} points exceeds the cap of {max_points}"
                )
        elif parts[0] == "labels":
            if not size:
                raise ParseError(lineno, "labels before points header")
            if len(parts) - 1 != size:
                raise ParseError(lineno, f"expected {size} labels")
            labels = tuple(parts[1:])
        elif parts[0] == "relation":
            if not size:
                raise ParseError(lineno, "relation before points header")
            current = []
            pair_blocks.append(current)
        else:
            if current is None:
                raise ParseError(lineno, f"unexpected token {parts[0]!r}")
            if len(parts) != 2:
                raise ParseError(lineno, "expected a pair 'i j'")
            try:
                i, j = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(lineno, "pairs must be integers") from None
            if not (1 <= i <= size and 1 <= j <= size):
                raise ParseError(lineno, f"pair ({i}, {j}) outside 1..{size}")
            current.append((i - 1, j - 1))
    if not size:
        raise ParseError(len(lines) or 1, "missing points header")
    if not pair_blocks:
        raise ParseError(len(lines) or 1, "missing relation block")
    ground = GroundSet(size, labels)
    base = []
    for k, pairs in enumerate(pair_blocks):
        present = set(pairs)
        missing = [i for i in range(size) if (i, i) not in present]
        if missing:
            notes.append(f"relation {k + 1}: added {len(missing)} diagonal pairs")
        base.append(relation_from_pairs(ground, pairs))
    return QUSpace.build(ground, base, notes)


def serialize_space(space: QUSpace) -> str:
    """Canonical text; parse(serialize(x)) reproduces x."""
    out = [f"points {space.ground.size}"]
    if space.ground.labels:
        out.append("labels " + " ".join(space.ground.labels))
    for rel in space.base:
        out.append("relation")
        for i, j in sorted(rel.pairs()):
            out.append(f"{i + 1} {j + 1}")
    return "\n".join(out) + "\n"


def space_hash(space: QUSpace) -> str:
    return hashlib.sha256(serialize_space(space).encode()).hexdigest()[:16]


def corpus_hash(spaces: Iterable[QUSpace]) -> str:
    digest = hashlib.sha256()
    for space in spaces:
        digest.update(serialize_space(space).encode())
    return digest.hexdigest()[:16]


def parse_points(text: str) -> tuple[Fraction, ...]:
    points = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            points.append(Fraction(line))
        except (ValueError, ZeroDivisionError):
            raise ParseError(lineno, f"not a rational: {line!r}") from None
    if not points:
        raise ParseError(1, "no points in file")
    return tuple(points)


def serialize_points(points: Iterable[Fraction]) -> str:
    return "\n".join(str(p) for p in points) + "\n"
