"""Relation algebra over finite ground sets, stored as per-row bit masks.

Point sets are plain ints: bit ``i`` set means point ``i`` belongs to the
set.  All entourages are reflexive by construction; a space is valid when
the intersection of its base relations (the min-entourage) is transitive,
which on a finite set is exactly the composition axiom of a
quasi-uniformity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Literal, Sequence

DEFAULT_MAX_POINTS = 16

Direction = Literal["forward", "conjugate"]


def bits(mask: int) -> Iterator[int]:
    """Iterate the set bit positions of a mask, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class GroundSet:
    """Finite carrier set; points are indices 0..size-1."""

    size: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("ground set needs at least one point")
        if self.labels is not None:
            if len(self.labels) != self.size:
                raise ValueError("label count does not match ground size")
            if len(set(self.labels)) != self.size:
                raise ValueError("labels must be pairwise distinct")

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def mask(self, points: Iterable[int]) -> int:
        out = 0
        for p in points:
            if not 0 <= p < self.size:
                raise ValueError(f"point {p} outside ground set")
            out |= 1 << p
        return out

    def name(self, point: int) -> str:
        return self.labels[point] if self.labels else str(point + 1)

    def set_name(self, mask: int) -> str:
        return "{" + ",".join(self.name(p) for p in bits(mask)) + "}"


@dataclass(frozen=True)
class Relation:
    """Reflexive binary relation; bit j of rows[i] means (i, j) is related."""

    ground: GroundSet
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.ground.size:
            raise ValueError("row count does not match ground size")
        full = self.ground.full
        for i, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {i} has bits outside the ground set")
            if not row >> i & 1:
                raise ValueError(f"relation is not reflexive at point {i}")

    # -- algebra ----------------------------------------------------------

    def compose(self, other: Relation) -> Relation:
        """Relational composition: (x, z) iff some y with x->y and y->z."""
        if other.ground != self.ground:
            raise ValueError("composition needs a common ground set")
        rows = []
        for row in self.rows:
            acc = 0
            for j in bits(row):
                acc |= other.rows[j]
            rows.append(acc)
        return Relation(self.ground, tuple(rows))

    def inverse(self) -> Relation:
        n = self.ground.size
        rows = [0] * n
        for i, row in enumerate(self.rows):
            for j in bits(row):
                rows[j] |= 1 << i
        return Relation(self.ground, tuple(rows))

    def symmetrize(self) -> Relation:
        inv = self.inverse()
        return Relation(self.ground, tuple(a & b for a, b in zip(self.rows, inv.rows)))

    def intersect(self, other: Relation) -> Relation:
        if other.ground != self.ground:
            raise ValueError("intersection needs a common ground set")
        return Relation(self.ground, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def union(self, other: Relation) -> Relation:
        if other.ground != self.ground:
            raise ValueError("union needs a common ground set")
        return Relation(self.ground, tuple(a | b for a, b in zip(self.rows, other.rows)))

    # -- images -----------------------------------------------------------

    def image(self, mask: int) -> int:
        """r(a) = union of the rows indexed by a."""
        acc = 0
        for i in bits(mask):
            acc |= self.rows[i]
        return acc

    def preimage(self, mask: int) -> int:
        """r^{-1}(a) = points whose row meets a."""
        acc = 0
        for i, row in enumerate(self.rows):
            if row & mask:
                acc |= 1 << i
        return acc

    # -- predicates ---------------------------------------------------------

    def is_subset(self, other: Relation) -> bool:
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def is_symmetric(self) -> bool:
        return self.rows == self.inverse().rows

    def is_transitive(self) -> bool:
        return self.compose(self).is_subset(self)

    def contains_pair(self, x: int, y: int) -> bool:
        return bool(self.rows[x] >> y & 1)

    def pairs(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self.rows):
            for j in bits(row):
                yield i, j


def identity(ground: GroundSet) -> Relation:
    return Relation(ground, tuple(1 << i for i in range(ground.size)))


def full_relation(ground: GroundSet) -> Relation:
    return Relation(ground, (ground.full,) * ground.size)


def relation_from_pairs(ground: GroundSet, pairs: Iterable[tuple[int, int]]) -> Relation:
    """Build a relation; the reflexive closure is applied silently."""
    rows = [1 << i for i in range(ground.size)]
    for x, y in pairs:
        if not (0 <= x < ground.size and 0 <= y < ground.size):
            raise ValueError(f"pair ({x}, {y}) outside ground set")
        rows[x] |= 1 << y
    return Relation(ground, tuple(rows))


def relation_from_rows(ground: GroundSet, rows: Sequence[int]) -> Relation:
    """Build a relation from raw rows; the reflexive closure is applied silently."""
    return Relation(ground, tuple(row | (1 << i) for i, row in enumerate(rows)))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    issues: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()


class SpaceValidationError(ValueError):
    def __init__(self, report: ValidationReport):
        super().__init__("; ".join(report.issues))
        self.report = report


def validate_base(ground: GroundSet, raw_rows: Sequence[Sequence[int]]) -> ValidationReport:
    """Check quasi-uniformity axioms on raw (possibly non-reflexive) rows."""
    issues: list[str] = []
    if not raw_rows:
        issues.append("base must be nonempty")
        return ValidationReport(False, tuple(issues))
    rows_list = [tuple(rows) for rows in raw_rows]
    for k, rows in enumerate(rows_list):
        if len(rows) != ground.size:
            issues.append(f"relation {k + 1}: row count does not match ground size")
            continue
        missing = [i for i in range(ground.size) if not rows[i] >> i & 1]
        if missing:
            pts = ",".join(ground.name(i) for i in missing)
            issues.append(f"relation {k + 1}: non-reflexive at {pts}")
    if issues:
        return ValidationReport(False, tuple(issues))
    min_rows = tuple(
        _and_all(rows[i] for rows in rows_list) for i in range(ground.size)
    )
    m = Relation(ground, min_rows)
    if not m.is_transitive():
        issues.append("non-transitive min-entourage")
    return ValidationReport(not issues, tuple(issues))


def _and_all(values: Iterable[int]) -> int:
    acc = -1
    for v in values:
        acc &= v
    return acc


@dataclass(frozen=True)
class QUSpace:
    """Finite quasi-uniform space given by a base of reflexive relations.

    Membership of a relation V in the generated entourage filter is decided
    as V >= min_entourage; on a finite set the generated filter is the
    up-set of the base intersection.
    """

    ground: GroundSet
    base: tuple[Relation, ...]
    min_entourage: Relation
    notes: tuple[str, ...] = field(default=(), compare=False)

    @classmethod
    def build(
        cls,
        ground: GroundSet,
        base: Sequence[Relation],
        notes: Iterable[str] = (),
    ) -> "QUSpace":
        report = validate_base(ground, [r.rows for r in base])
        if not report.ok:
            raise SpaceValidationError(report)
        m = base[0]
        for r in base[1:]:
            m = m.intersect(r)
        return cls(ground, tuple(base), m, tuple(notes))

    @property
    def base_ext(self) -> tuple[Relation, ...]:
        """Base together with the min-entourage (itself an entourage)."""
        if any(r.rows == self.min_entourage.rows for r in self.base):
            return self.base
        return self.base + (self.min_entourage,)

    def is_member(self, rel: Relation) -> bool:
        return self.min_entourage.is_subset(rel)

    def is_uniform(self) -> bool:
        return all(r.is_symmetric() for r in self.base)

    def conjugate(self) -> "QUSpace":
        return QUSpace.build(self.ground, tuple(r.inverse() for r in self.base))


def validate(space: QUSpace) -> ValidationReport:
    """Re-run the axiom checks on a constructed space."""
    report = validate_base(space.ground, [r.rows for r in space.base])
    return ValidationReport(report.ok, report.issues, report.notes + space.notes)


def closure(space: QUSpace, mask: int, direction: Direction = "forward") -> int:
    """Topological closure of a point set in tau(U) or tau(U^{-1}).

    A point is in the forward closure iff its minimal neighborhood meets
    the set, which reads as a preimage under the min-entourage.
    """
    m = space.min_entourage
    if direction == "forward":
        return m.preimage(mask)
    if direction == "conjugate":
        return m.image(mask)
    raise ValueError(f"unknown direction {direction!r}")


def double_closure(space: QUSpace, mask: int) -> int:
    m = space.min_entourage
    return m.preimage(mask) & m.image(mask)


def is_doubly_closed(space: QUSpace, mask: int) -> bool:
    return double_closure(space, mask) == mask


def t0_classes(space: QUSpace) -> tuple[int, ...]:
    """Partition of the ground set by the symmetrized min-entourage."""
    ms = space.min_entourage.symmetrize()
    seen = 0
    classes = []
    for i in range(space.ground.size):
        if seen >> i & 1:
            continue
        cls = ms.rows[i]
        classes.append(cls)
        seen |= cls
    return tuple(classes)


def is_t0(space: QUSpace) -> bool:
    return all(popcount(c) == 1 for c in t0_classes(space))


def subspace(space: QUSpace, mask: int) -> tuple[QUSpace, tuple[int, ...]]:
    """Restrict each base relation to mask x mask, reindexed compactly.

    Returns the restricted space and the kept points in index order.
    """
    if mask == 0:
        raise ValueError("subspace needs a nonempty point set")
    kept = tuple(bits(mask))
    sub_ground = GroundSet(
        len(kept),
        tuple(space.ground.name(p) for p in kept) if space.ground.labels else None,
    )
    base = tuple(
        Relation(sub_ground, tuple(_compress(r.rows[p] & mask, mask) for p in kept))
        for r in space.base
    )
    return QUSpace.build(sub_ground, base), kept


def _compress(row: int, mask: int) -> int:
    out = 0
    for new, old in enumerate(bits(mask)):
        if row >> old & 1:
            out |= 1 << new
    return out


def expand_mask(sub_mask: int, kept: Sequence[int]) -> int:
    """Map a subspace point set back into the ambient ground set."""
    out = 0
    for new, old in enumerate(kept):
        if sub_mask >> new & 1:
            out |= 1 << old
    return out


@lru_cache(maxsize=None)
def image_table(rel: Relation) -> tuple[int, ...]:
    """image over every subset mask, by subset dynamic programming."""
    n = rel.ground.size
    table = [0] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        table[m] = table[m ^ low] | rel.rows[low.bit_length() - 1]
    return tuple(table)


@lru_cache(maxsize=None)
def preimage_table(rel: Relation) -> tuple[int, ...]:
    """preimage over every subset mask."""
    n = rel.ground.size
    table = [0] * (1 << n)
    for i, row in enumerate(rel.rows):
        bit = 1 << i
        for m in range(1 << n):
            if row & m:
                table[m] |= bit
    return tuple(table)


def transitive_core(rel: Relation) -> Relation:
    """Canonical transitive subrelation: repeatedly drop pairs (x, y) whose
    row at y is not dominated by the row at x.  The diagonal survives and the
    fixpoint is transitive."""
    rows = list(rel.rows)
    changed = True
    while changed:
        changed = False
        for i in range(len(rows)):
            row = rows[i]
            for j in bits(row):
                if rows[j] & ~row:
                    row &= ~(1 << j)
            row |= 1 << i
            if row != rows[i]:
                rows[i] = row
                changed = True
    return Relation(rel.ground, tuple(rows))


def repair_base(
    ground: GroundSet, base: Sequence[Relation]
) -> tuple[tuple[Relation, ...], tuple[str, ...]]:
    """Shrink a base whose intersection is not transitive.

    Every base relation is intersected with (core | ~M), where core is the
    canonical transitive subrelation of the intersection M; the repaired
    intersection is then exactly the core.
    """
    m = base[0]
    for r in base[1:]:
        m = m.intersect(r)
    if m.is_transitive():
        return tuple(base), ()
    core = transitive_core(m)
    full = ground.full
    envelope = Relation(
        ground,
        tuple(c | (full & ~mr) for c, mr in zip(core.rows, m.rows)),
    )
    repaired = tuple(r.intersect(envelope) for r in base)
    note = "repaired non-transitive min-entourage via its transitive core"
    return repaired, (note,)
