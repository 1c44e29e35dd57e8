"""Finite unions of bounded rational intervals with open/closed endpoints.

Canonical form: pieces sorted, pairwise disjoint and non-mergeable.
Isolated points are degenerate closed pieces.  All arithmetic is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

Piece = tuple[Fraction, bool, Fraction, bool]  # lo, lo_open, hi, hi_open


def _valid(piece: Piece) -> bool:
    lo, lo_open, hi, hi_open = piece
    if lo < hi:
        return True
    return lo == hi and not lo_open and not hi_open


@dataclass(frozen=True)
class IntervalSet:
    pieces: tuple[Piece, ...]

    @staticmethod
    def from_pieces(pieces: Iterable[Piece]) -> "IntervalSet":
        return IntervalSet(_normalize(pieces))

    @staticmethod
    def interval(
        lo: Fraction | int,
        hi: Fraction | int,
        lo_open: bool = False,
        hi_open: bool = False,
    ) -> "IntervalSet":
        piece = (Fraction(lo), lo_open, Fraction(hi), hi_open)
        if not _valid(piece):
            return EMPTY_SET
        return IntervalSet((piece,))

    @staticmethod
    def point(x: Fraction | int) -> "IntervalSet":
        return IntervalSet.interval(x, x)

    @staticmethod
    def points(xs: Iterable[Fraction | int]) -> "IntervalSet":
        return IntervalSet.from_pieces(
            (Fraction(x), False, Fraction(x), False) for x in xs
        )

    # -- queries

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    def __contains__(self, x: Fraction | int) -> bool:
        x = Fraction(x)
        for lo, lo_open, hi, hi_open in self.pieces:
            if (x > lo or (x == lo and not lo_open)) and (
                x < hi or (x == hi and not hi_open)
            ):
                return True
        return False

    def is_subset(self, other: "IntervalSet") -> bool:
        return self.difference(other).is_empty

    # -- algebra

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet.from_pieces(self.pieces + other.pieces)

    def intersection(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        for p in self.pieces:
            for q in other.pieces:
                r = _intersect_pieces(p, q)
                if r is not None:
                    out.append(r)
        return IntervalSet.from_pieces(out)

    def difference(self, other: "IntervalSet") -> "IntervalSet":
        pieces = list(self.pieces)
        for q in other.pieces:
            pieces = [part for p in pieces for part in _subtract_piece(p, q)]
        return IntervalSet.from_pieces(pieces)

    # -- fattenings and closures (lower-limit / upper-limit topologies)

    def forward_fatten(self, eps: Fraction) -> "IntervalSet":
        """Union of [x, x + eps) over the members: right ends extend by eps
        and become open, left ends are kept."""
        if eps <= 0:
            raise ValueError("fattening needs a positive radius")
        return IntervalSet.from_pieces(
            (lo, lo_open, hi + eps, True) for lo, lo_open, hi, _ in self.pieces
        )

    def backward_fatten(self, eps: Fraction) -> "IntervalSet":
        """Union of (x - eps, x] over the members."""
        if eps <= 0:
            raise ValueError("fattening needs a positive radius")
        return IntervalSet.from_pieces(
            (lo - eps, True, hi, hi_open) for lo, _, hi, hi_open in self.pieces
        )

    def closure_lower(self) -> "IntervalSet":
        """Closure when the basic neighborhoods are [x, x + eps)."""
        return IntervalSet.from_pieces(
            (lo, False, hi, hi_open) for lo, _, hi, hi_open in self.pieces
        )

    def closure_upper(self) -> "IntervalSet":
        """Closure when the basic neighborhoods are (x - eps, x]."""
        return IntervalSet.from_pieces(
            (lo, lo_open, hi, False) for lo, lo_open, hi, _ in self.pieces
        )

    def double_closure(self) -> "IntervalSet":
        return self.closure_lower().intersection(self.closure_upper())

    def sample_points(self, step: Fraction) -> list[Fraction]:
        """Grid points of the set at the given step, piece by piece."""
        out: list[Fraction] = []
        for lo, lo_open, hi, hi_open in self.pieces:
            x = lo
            while x <= hi:
                if x in self:
                    out.append(x)
                x += step
        return out


EMPTY_SET = IntervalSet(())


def _normalize(pieces: Iterable[Piece]) -> tuple[Piece, ...]:
    todo = sorted(
        (p for p in pieces if _valid(p)), key=lambda p: (p[0], p[1], p[2], p[3])
    )
    out: list[Piece] = []
    for piece in todo:
        if not out:
            out.append(piece)
            continue
        lo, lo_open, hi, hi_open = out[-1]
        nlo, nlo_open, nhi, nhi_open = piece
        touches = nlo < hi or (nlo == hi and (not nlo_open or not hi_open))
        if touches:
            if nhi > hi or (nhi == hi and hi_open and not nhi_open):
                hi, hi_open = nhi, nhi_open
            out[-1] = (lo, lo_open, hi, hi_open)
        else:
            out.append(piece)
    return tuple(out)


def _intersect_pieces(p: Piece, q: Piece) -> Piece | None:
    lo, lo_open = max((p[0], p[1]), (q[0], q[1]))
    hi1 = (p[2], not p[3])
    hi2 = (q[2], not q[3])
    hi, hi_closed = min(hi1, hi2)
    piece = (lo, lo_open, hi, not hi_closed)
    return piece if _valid(piece) else None


def _subtract_piece(p: Piece, q: Piece) -> list[Piece]:
    out = []
    left = (p[0], p[1], q[0], not q[1])
    if _valid(left) and _overlap(left, p):
        out.append(_clip(left, p))
    right = (q[2], not q[3], p[2], p[3])
    if _valid(right) and _overlap(right, p):
        out.append(_clip(right, p))
    merged = _intersect_pieces(p, q)
    if merged is None:
        return [p]
    return [piece for piece in out if piece is not None]


def _overlap(a: Piece, b: Piece) -> bool:
    return _intersect_pieces(a, b) is not None


def _clip(a: Piece, b: Piece) -> Piece | None:
    return _intersect_pieces(a, b)
