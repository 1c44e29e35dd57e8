"""Exact-rational quasi-pseudometric layer.

Everything is computed in Fraction arithmetic; ball membership is strict
(d < eps) throughout, so knife-edge equalities stay on the excluded side.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .intervals import IntervalSet

Rational = Fraction | int
Metric = Callable[[Fraction, Fraction], Fraction]

DEFAULT_SCALES = (Fraction(1, 2),)
TRANSFER_CAP = 12


def sorgenfrey(x: Rational, y: Rational) -> Fraction:
    """Forward distance y - x when y >= x, otherwise 1."""
    x, y = Fraction(x), Fraction(y)
    return y - x if y >= x else Fraction(1)


def conjugate_metric(d: Metric) -> Metric:
    return lambda x, y: d(y, x)


def symmetrize_metric(d: Metric) -> Metric:
    return lambda x, y: max(d(x, y), d(y, x))


@dataclass(frozen=True)
class QPSpace:
    """Finite list of rational points with an exact distance function."""

    points: tuple[Fraction, ...]
    dist: Metric
    scales: tuple[Fraction, ...] = DEFAULT_SCALES
    name: str = "custom"

    @classmethod
    def build(
        cls,
        points: Iterable[Rational],
        dist: Metric,
        scales: Iterable[Rational] = DEFAULT_SCALES,
        name: str = "custom",
    ) -> "QPSpace":
        pts = tuple(Fraction(p) for p in points)
        if not pts:
            raise ValueError("a space needs at least one point")
        if len(set(pts)) != len(pts):
            raise ValueError("points must be distinct")
        for x in pts:
            if dist(x, x) != 0:
                raise ValueError(f"distance of {x} to itself is not zero")
        for x in pts:
            for y in pts:
                if dist(x, y) < 0:
                    raise ValueError("negative distance")
        for x in pts:
            for y in pts:
                for z in pts:
                    if dist(x, z) > dist(x, y) + dist(y, z):
                        raise ValueError(
                            f"triangle inequality fails at ({x}, {y}, {z})"
                        )
        return cls(pts, dist, tuple(Fraction(s) for s in scales), name)

    @classmethod
    def sorgenfrey_space(
        cls, points: Iterable[Rational], scales: Iterable[Rational] = DEFAULT_SCALES
    ) -> "QPSpace":
        return cls.build(points, sorgenfrey, scales, name="sorgenfrey")

    def conjugate(self) -> "QPSpace":
        return QPSpace.build(
            self.points, conjugate_metric(self.dist), self.scales, self.name + "^-1"
        )

    def symmetrize(self) -> "QPSpace":
        space = QPSpace.build(
            self.points, symmetrize_metric(self.dist), self.scales, self.name + "^s"
        )
        for x in space.points:
            for y in space.points:
                if space.dist(x, y) != space.dist(y, x):
                    raise AssertionError("symmetrization is not symmetric")
        return space

    def forward_ball(self, x: Rational, eps: Rational) -> tuple[Fraction, ...]:
        x, eps = Fraction(x), Fraction(eps)
        return tuple(y for y in self.points if self.dist(x, y) < eps)

    def backward_ball(self, x: Rational, eps: Rational) -> tuple[Fraction, ...]:
        x, eps = Fraction(x), Fraction(eps)
        return tuple(y for y in self.points if self.dist(y, x) < eps)


def hausdorff_qpm(
    space: QPSpace, a: Iterable[Rational], b: Iterable[Rational]
) -> Fraction:
    """Two-sided sup-inf distance between nonempty finite point sets."""
    a = tuple(Fraction(x) for x in a)
    b = tuple(Fraction(x) for x in b)
    if not a or not b:
        raise ValueError("both sets must be nonempty")
    d = space.dist
    reach_b = max(min(d(x, y) for x in a) for y in b)
    reach_a = max(min(d(x, y) for y in b) for x in a)
    return max(reach_b, reach_a)


def hausdorff_pair_in(
    space: QPSpace, a: Sequence[Fraction], b: Sequence[Fraction], eps: Fraction
) -> bool:
    """Lifted-entourage membership at level eps: b inside the forward
    eps-fattening of a and a inside the backward one of b."""
    d = space.dist
    return all(any(d(x, y) < eps for x in a) for y in b) and all(
        any(d(x, y) < eps for y in b) for x in a
    )


def double_closure_metric(
    space: QPSpace, a: Iterable[Rational], scales: Iterable[Rational] | None = None
) -> tuple[Fraction, ...]:
    """Grid trace of the double closure: points whose forward and backward
    balls at every probe radius meet the set."""
    a = tuple(Fraction(x) for x in a)
    probe = tuple(Fraction(s) for s in (scales if scales is not None else space.scales))
    if not probe:
        raise ValueError("need at least one probe radius")
    d = space.dist
    out = []
    for x in space.points:
        ok = all(
            any(d(x, y) < eps for y in a) and any(d(y, x) < eps for y in a)
            for eps in probe
        )
        if ok:
            out.append(x)
    return tuple(out)


# -- covering fact -------------------------------------------------------------


@dataclass(frozen=True)
class CoverVerdict:
    covered: bool
    counterwitnesses: tuple[Fraction, ...]
    samples: int
    resolution: Fraction


def cover_fact_check(y: Rational, seq: Sequence[Rational], n: int) -> CoverVerdict:
    """Both punctured one-sided neighborhoods of the limit are covered by
    the half-open balls around the sequence terms.

    Precondition: the terms reach every tolerance 2^-j strictly, down past
    the sample resolution 2^-(n+4); otherwise the verdict would blame the
    missing tail rather than the covering fact, so the call errors out.
    """
    y = Fraction(y)
    terms = [Fraction(b) for b in seq]
    if not terms:
        raise ValueError("empty sequence")
    suffix_max: list[Fraction] = [Fraction(0)] * len(terms)
    acc = Fraction(0)
    for i in range(len(terms) - 1, -1, -1):
        acc = max(acc, abs(terms[i] - y)) if i < len(terms) - 1 else abs(terms[i] - y)
        suffix_max[i] = acc
    for j in range(n + 5):
        tol = Fraction(1, 2**j)
        if not any(s < tol for s in suffix_max):
            raise ValueError(
                f"sequence does not reach tolerance 2^-{j} within the given terms"
            )
    eps = Fraction(1, 2**n)
    step = Fraction(1, 2 ** (n + 4))
    uncovered = []
    for k in range(1, 16):
        z = y + k * step
        if not any(b <= z < b + eps for b in reversed(terms)):
            uncovered.append(z)
    for k in range(1, 16):
        z = y - k * step
        if not any(b - eps < z <= b for b in reversed(terms)):
            uncovered.append(z)
    return CoverVerdict(not uncovered, tuple(uncovered), 30, step)


# -- floor sets of interval filter bases ----------------------------------------


def fn_sets(filter_base: Sequence[IntervalSet], n: int) -> IntervalSet:
    """Two-sided fattening floor at radius 2^-n over a descending base."""
    if not filter_base:
        raise ValueError("empty filter base")
    for prev, nxt in zip(filter_base, filter_base[1:]):
        if not nxt.is_subset(prev):
            raise ValueError("filter base must be descending")
    eps = Fraction(1, 2**n)
    acc: IntervalSet | None = None
    for member in filter_base:
        piece = member.backward_fatten(eps).intersection(member.forward_fatten(eps))
        acc = piece if acc is None else acc.intersection(piece)
    return acc


def fn_chain(filter_base: Sequence[IntervalSet], depth: int) -> list[IntervalSet]:
    return [fn_sets(filter_base, n) for n in range(1, depth + 1)]


def double_cluster_trace(filter_base: Sequence[IntervalSet]) -> IntervalSet:
    """Limit of the floor sets: the double closure of the smallest member."""
    if not filter_base:
        raise ValueError("empty filter base")
    return filter_base[-1].double_closure()


def anm_set(e: IntervalSet, em: IntervalSet, n: int) -> IntervalSet:
    """Points of e whose backward ball misses em; query only."""
    eps = Fraction(1, 2**n)
    return e.difference(em.forward_fatten(eps))


def bnm_set(e: IntervalSet, em: IntervalSet, n: int) -> IntervalSet:
    """Points of e whose forward ball misses em; query only."""
    eps = Fraction(1, 2**n)
    return e.difference(em.backward_fatten(eps))


# -- nets and precompactness -----------------------------------------------------


def eps_net(space: QPSpace, eps: Rational) -> tuple[Fraction, ...]:
    """Greedy net: forward balls of the chosen points cover the space."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("net radius must be positive")
    net: list[Fraction] = []
    d = space.dist
    for x in space.points:
        if not any(d(f, x) < eps for f in net):
            net.append(x)
    return tuple(net)


def is_precompact_at(space: QPSpace, eps: Rational) -> bool:
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("net radius must be positive")
    net = eps_net(space, eps)
    d = space.dist
    return all(any(d(f, x) < eps for f in net) for x in space.points)


@dataclass(frozen=True)
class TransferReport:
    forward_ok: bool
    backward_ok: bool
    subsets: int
    net_size: int


def hausdorff_net_transfer(
    space: QPSpace, eps: Rational, factor: int = 3
) -> TransferReport:
    """A base-level net lifts to a net for the two-sided set distance, and
    the points used by the lifted net come back as a base-level net.

    For each set the lifted witness keeps the net points that see the set
    within eps; the set distance to the witness then stays under the
    slackened radius.
    """
    eps = Fraction(eps)
    n = len(space.points)
    if n > TRANSFER_CAP:
        raise ValueError(f"subset sweep capped at {TRANSFER_CAP} points")
    net = eps_net(space, eps)
    d = space.dist
    slack = factor * eps
    forward_ok = True
    used: set[Fraction] = set()
    count = 0
    for size in range(1, n + 1):
        for a in combinations(space.points, size):
            count += 1
            b = tuple(f for f in net if any(d(f, x) < eps for x in a))
            if not b or not hausdorff_qpm(space, b, a) < slack:
                forward_ok = False
                continue
            used.update(b)
    backward = sorted(used)
    backward_ok = all(
        any(d(f, x) < slack for f in backward) for x in space.points
    )
    return TransferReport(forward_ok, backward_ok, count, len(net))


# -- sequence probes ---------------------------------------------------------------


@dataclass(frozen=True)
class CauchyProbe:
    is_cauchy: bool
    limit: Fraction | None
    tail_start: int | None


def cauchy_probe(
    space: QPSpace,
    seq: Sequence[Rational],
    levels: int = 12,
    candidates: Iterable[Rational] | None = None,
) -> CauchyProbe:
    """Classify a sequence against the symmetrized distance.

    The probe demands a witness tail of at least two terms for the Cauchy
    property, so a lone final term cannot certify it.  The limit search runs
    over the space's points, any supplied candidates, and the terms
    themselves.
    """
    terms = [Fraction(b) for b in seq]
    if len(terms) < 2:
        raise ValueError("probe needs at least two terms")
    ds = symmetrize_metric(space.dist)
    pair_tail: list[Fraction] = [Fraction(0)] * len(terms)
    for i in range(len(terms) - 2, -1, -1):
        worst = max(ds(terms[i], terms[m]) for m in range(i + 1, len(terms)))
        pair_tail[i] = max(worst, pair_tail[i + 1])
    tail_start: int | None = None
    is_cauchy = True
    for j in range(levels + 1):
        tol = Fraction(1, 2**j)
        found = None
        for i in range(len(terms) - 1):
            if pair_tail[i] < tol:
                found = i
                break
        if found is None:
            is_cauchy = False
            tail_start = None
            break
        tail_start = found
    limit = None
    if is_cauchy:
        pool: list[Fraction] = list(space.points)
        if candidates is not None:
            pool.extend(Fraction(c) for c in candidates)
        pool.extend(terms)
        seen = set()
        for z in pool:
            if z in seen:
                continue
            seen.add(z)
            if _converges_to(ds, terms, z, levels):
                limit = z
                break
    return CauchyProbe(is_cauchy, limit, tail_start)


def _converges_to(ds: Metric, terms: Sequence[Fraction], z: Fraction, levels: int) -> bool:
    for j in range(levels + 1):
        tol = Fraction(1, 2**j)
        if not any(
            all(ds(z, terms[m]) < tol for m in range(i, len(terms)))
            for i in range(len(terms))
        ):
            return False
    return True
