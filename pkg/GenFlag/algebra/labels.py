"""Position labels, tail rules and colorings.

A coloring assigns to every basis index i >= 1 a ``PositionLabel``. Equal labels
mean "same position" of the generalized flag; the order of labels is the order of
the flag. Finitely many indices are listed explicitly (the window), the remaining
ones follow a ``TailRule``.
"""
from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping

from GenFlag.errors import LabelCollisionError, UnrepresentableChainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class PositionLabel:
    tier: int
    offset: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        object.__setattr__(self, "tier", int(self.tier))
        object.__setattr__(self, "offset", Fraction(self.offset))

    def __neg__(self) -> PositionLabel:
        return PositionLabel(-self.tier, -self.offset)

    def __str__(self) -> str:
        return f"({self.tier},{self.offset})"


# Extended bounds (tier, rank, value, eps): rank -1/+1 are the ends of a tier,
# eps -1/+1 mark a value approached from below/above but not attained.
Bound = tuple


def point(label: PositionLabel) -> Bound:
    return (label.tier, 0, label.offset, 0)


def tier_floor(tier: int) -> Bound:
    return (tier, -1, Fraction(0), 0)


def tier_ceiling(tier: int) -> Bound:
    return (tier, 1, Fraction(0), 0)


def calkin_wilf(k: int) -> Fraction:
    """k-th positive rational in breadth-first Calkin–Wilf order, cw(1) = 1."""
    if k < 1:
        raise ValueError(f"Calkin–Wilf index must be positive, got {k}")
    a, b = 1, 1
    for bit in bin(k)[3:]:
        if bit == "0":
            b = a + b
        else:
            a = a + b
    return Fraction(a, b)


def calkin_wilf_index(q: Fraction) -> int:
    """Inverse of ``calkin_wilf``."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError(f"only positive rationals are enumerated, got {q}")
    a, b = q.numerator, q.denominator
    bits = []
    while (a, b) != (1, 1):
        if a < b:
            bits.append("0")
            b -= a
        else:
            bits.append("1")
            a -= b
    return int("1" + "".join(reversed(bits)), 2)


def first_index_in_residue(residue: int, modulus: int, beyond: int) -> int:
    """Smallest i > beyond with i = residue (mod modulus)."""
    start = max(beyond, 0) + 1
    return start + (residue - start) % modulus


class ClassKind(Enum):
    CONSTANT = "constant"
    ASCENDING = "ascending"
    DESCENDING = "descending"
    DENSE = "dense"


@dataclass(frozen=True)
class TailClass:
    """The indices i > beyond with i = residue (mod modulus), and how they are labeled."""

    kind: ClassKind
    tier: int
    residue: int
    modulus: int
    beyond: int
    slope: Fraction = Fraction(0)
    intercept: Fraction = Fraction(0)
    descending: bool = False

    @property
    def first_index(self) -> int:
        return first_index_in_residue(self.residue, self.modulus, self.beyond)

    def label(self, i: int) -> PositionLabel:
        if self.kind is ClassKind.DENSE:
            q = calkin_wilf(i)
            return PositionLabel(self.tier, -q if self.descending else q)
        return PositionLabel(self.tier, self.slope * i + self.intercept)

    def inf(self) -> Bound:
        if self.kind is ClassKind.DENSE:
            return tier_floor(self.tier) if self.descending else (self.tier, 0, Fraction(0), 1)
        if self.kind is ClassKind.DESCENDING:
            return tier_floor(self.tier)
        return point(self.label(self.first_index))

    def sup(self) -> Bound:
        if self.kind is ClassKind.DENSE:
            return (self.tier, 0, Fraction(0), -1) if self.descending else tier_ceiling(self.tier)
        if self.kind is ClassKind.ASCENDING:
            return tier_ceiling(self.tier)
        return point(self.label(self.first_index))

    def first_hit(self, label: PositionLabel) -> int | None:
        """Smallest index of this class carrying ``label``."""
        if label.tier != self.tier:
            return None
        if self.kind is ClassKind.DENSE:
            q = -label.offset if self.descending else label.offset
            if q <= 0:
                return None
            i = calkin_wilf_index(q)
            return i if i > self.beyond else None
        if self.kind is ClassKind.CONSTANT:
            return self.first_index if label.offset == self.intercept else None
        i = (label.offset - self.intercept) / self.slope
        if i.denominator != 1:
            return None
        i = int(i)
        if i <= self.beyond or i < 1 or (i - self.residue) % self.modulus:
            return None
        return i

    def meets_interval(self, low: PositionLabel | None, high: PositionLabel | None) -> bool:
        """Whether some label of the class lies strictly between ``low`` and ``high``
        (None meaning unbounded)."""
        if low is not None and self.tier < low.tier or high is not None and self.tier > high.tier:
            return False
        if (low is None or low.tier < self.tier) and (high is None or self.tier < high.tier):
            return True
        lo = low.offset if low is not None and low.tier == self.tier else None
        hi = high.offset if high is not None and high.tier == self.tier else None
        if self.kind is ClassKind.CONSTANT:
            return (lo is None or lo < self.intercept) and (hi is None or self.intercept < hi)
        if self.kind is ClassKind.DENSE:
            if self.descending:
                return lo is None or lo < min(Fraction(0), hi if hi is not None else Fraction(0))
            return hi is None or max(Fraction(0), lo if lo is not None else Fraction(0)) < hi
        if lo is None:
            start = self.label(self.first_index).offset
            if self.kind is ClassKind.DESCENDING or hi is None:
                return True
            return start < hi
        above = self.next_offset_above(PositionLabel(self.tier, lo))
        return above is not None and (hi is None or above < hi)

    def next_offset_above(self, label: PositionLabel) -> Fraction | None:
        """Least offset of this class in ``label.tier`` strictly above ``label``."""
        if label.tier != self.tier:
            return None
        x = label.offset
        if self.kind is ClassKind.DENSE:
            if self.descending:
                if x < 0:
                    raise UnrepresentableChainError(f"no room above {label} in dense tier {self.tier}")
                return None
            if x >= 0:
                raise UnrepresentableChainError(f"no room above {label} in dense tier {self.tier}")
            return Fraction(0)
        if self.kind is ClassKind.CONSTANT:
            return self.intercept if self.intercept > x else None
        bound = (x - self.intercept) / self.slope
        if self.kind is ClassKind.ASCENDING:
            i = max(self.first_index, math.floor(bound) + 1)
            i = first_index_in_residue(self.residue, self.modulus, i - 1)
            return self.label(i).offset
        # descending: offsets above x come from indices i < bound
        top = math.ceil(bound) - 1
        if top < self.first_index:
            return None
        i = top - (top - self.residue) % self.modulus
        return self.label(i).offset if i >= self.first_index else None


@dataclass(frozen=True)
class AffineResidue:
    tier: int
    slope: Fraction
    intercept: Fraction

    def __post_init__(self):
        object.__setattr__(self, "tier", int(self.tier))
        object.__setattr__(self, "slope", Fraction(self.slope))
        object.__setattr__(self, "intercept", Fraction(self.intercept))

    def label(self, i: int) -> PositionLabel:
        return PositionLabel(self.tier, self.slope * i + self.intercept)


class TailRule(ABC):
    """Labels of the indices beyond the window."""

    @property
    @abstractmethod
    def modulus(self) -> int:
        pass

    @abstractmethod
    def label(self, i: int) -> PositionLabel:
        pass

    @abstractmethod
    def classes(self, beyond: int = 0) -> list[TailClass]:
        pass

    @abstractmethod
    def canonical(self) -> TailRule:
        pass

    @abstractmethod
    def negated(self) -> TailRule:
        pass

    def check_collisions(self, beyond: int) -> None:
        """Raises ``LabelCollisionError`` when two tail classes share a label."""

    def first_hit(self, label: PositionLabel, beyond: int) -> int | None:
        hits = [c.first_hit(label) for c in self.classes(beyond)]
        hits = [i for i in hits if i is not None]
        return min(hits) if hits else None


@dataclass(frozen=True)
class ResidueAffine(TailRule):
    """label(i) = (tier_r, slope_r * i + intercept_r) for i = r (mod m)."""

    period: int
    residues: tuple[AffineResidue, ...]

    def __post_init__(self):
        if self.period < 1:
            raise ValueError(f"tail modulus must be positive, got {self.period}")
        if len(self.residues) != self.period:
            raise ValueError(f"tail modulus {self.period} needs {self.period} residue rules, "
                             f"got {len(self.residues)}")

    @classmethod
    def constant(cls, label: PositionLabel) -> ResidueAffine:
        return cls(1, (AffineResidue(label.tier, Fraction(0), label.offset),))

    @classmethod
    def linear(cls, tier: int, slope, intercept=0) -> ResidueAffine:
        return cls(1, (AffineResidue(tier, Fraction(slope), Fraction(intercept)),))

    @property
    def modulus(self) -> int:
        return self.period

    def label(self, i: int) -> PositionLabel:
        return self.residues[i % self.period].label(i)

    def classes(self, beyond: int = 0) -> list[TailClass]:
        found = []
        for r, rule in enumerate(self.residues):
            if rule.slope > 0:
                kind = ClassKind.ASCENDING
            elif rule.slope < 0:
                kind = ClassKind.DESCENDING
            else:
                kind = ClassKind.CONSTANT
            found.append(TailClass(kind, rule.tier, r, self.period, beyond, rule.slope, rule.intercept))
        return found

    def refine(self, modulus: int) -> ResidueAffine:
        if modulus % self.period:
            raise ValueError(f"{modulus} is not a multiple of {self.period}")
        return ResidueAffine(modulus, tuple(self.residues[r % self.period] for r in range(modulus)))

    def canonical(self) -> ResidueAffine:
        for d in range(1, self.period + 1):
            if self.period % d == 0 and all(
                    self.residues[r] == self.residues[r % d] for r in range(self.period)):
                return ResidueAffine(d, self.residues[:d])
        return self

    def negated(self) -> ResidueAffine:
        return ResidueAffine(self.period, tuple(
            AffineResidue(-r.tier, -r.slope, -r.intercept) for r in self.residues))

    def check_collisions(self, beyond: int) -> None:
        for r in range(self.period):
            for s in range(r + 1, self.period):
                hit = _residue_collision(self.residues[r], r, self.residues[s], s, self.period, beyond)
                if hit is not None:
                    i, j = hit
                    raise LabelCollisionError(
                        f"tail residues {r} and {s} both produce {self.label(i)} (indices {i} and {j})")


@dataclass(frozen=True)
class DenseInTier(TailRule):
    """label(i) = (tier, cw(i)), or (tier, -cw(i)) when descending."""

    tier: int
    descending: bool = False

    @property
    def modulus(self) -> int:
        return 1

    def label(self, i: int) -> PositionLabel:
        q = calkin_wilf(i)
        return PositionLabel(self.tier, -q if self.descending else q)

    def classes(self, beyond: int = 0) -> list[TailClass]:
        return [TailClass(ClassKind.DENSE, self.tier, 0, 1, beyond, descending=self.descending)]

    def canonical(self) -> DenseInTier:
        return self

    def negated(self) -> DenseInTier:
        return DenseInTier(-self.tier, not self.descending)


def _extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _extended_gcd(b, a % b)
    return (g, y, x - (a // b) * y)


def _residue_collision(p: AffineResidue, r: int, q: AffineResidue, s: int,
                       m: int, beyond: int) -> tuple[int, int] | None:
    """Indices i = r, j = s (mod m), both > beyond, with p.label(i) == q.label(j)."""
    if p.tier != q.tier:
        return None
    if p.slope == 0 and q.slope == 0:
        # equal constants merge into one position
        return None
    if p.slope == 0 or q.slope == 0:
        const, moving, s_moving = (p, q, s) if p.slope == 0 else (q, p, r)
        j = (const.intercept - moving.intercept) / moving.slope
        if j.denominator != 1 or int(j) <= beyond or (int(j) - s_moving) % m:
            return None
        other = first_index_in_residue(r if p.slope == 0 else s, m, beyond)
        return (other, int(j)) if p.slope == 0 else (int(j), other)
    # p.slope*(r + m*x) + p.intercept = q.slope*(s + m*y) + q.intercept
    coeffs = [p.slope * m, q.slope * m, q.slope * s + q.intercept - p.slope * r - p.intercept]
    scale = math.lcm(*(c.denominator for c in coeffs))
    a, b, c = (int(x * scale) for x in coeffs)
    g, u, v = _extended_gcd(a, -b)
    if c % g:
        return None
    x0, y0 = u * (c // g), v * (c // g)
    # general solution: x = x0 + (-b/g) t, y = y0 - (a/g) t
    dx, dy = -b // g, -(a // g)
    x_min = math.ceil(Fraction(beyond + 1 - r, m))
    y_min = math.ceil(Fraction(beyond + 1 - s, m))
    low, high = -math.inf, math.inf
    for base, step, floor in ((x0, dx, x_min), (y0, dy, y_min)):
        bound = Fraction(floor - base, step)
        if step > 0:
            low = max(low, math.ceil(bound))
        else:
            high = min(high, math.floor(bound))
    if low > high:
        return None
    t = low if low != -math.inf else (high if high != math.inf else 0)
    x, y = x0 + dx * t, y0 + dy * t
    return (r + m * x, s + m * y)


def tail_classes_meet(c1: TailClass, c2: TailClass) -> bool:
    """Whether two tail classes (possibly from different colorings) share a label."""
    if c1.tier != c2.tier:
        return False
    if ClassKind.DENSE in (c1.kind, c2.kind):
        dense, other = (c1, c2) if c1.kind is ClassKind.DENSE else (c2, c1)
        if other.kind is ClassKind.DENSE:
            return other.descending == dense.descending
        if other.kind is ClassKind.CONSTANT:
            return dense.first_hit(other.label(other.first_index)) is not None
        if (other.kind is ClassKind.ASCENDING) != dense.descending:
            return True
        # other leaves the dense half-line: only finitely many candidates
        on_dense_side = (lambda x: x < 0) if dense.descending else (lambda x: x > 0)
        i = other.first_index
        while on_dense_side(other.label(i).offset):
            if dense.first_hit(other.label(i)) is not None:
                return True
            i += other.modulus
        return False
    if c1.kind is ClassKind.CONSTANT and c2.kind is ClassKind.CONSTANT:
        return c1.intercept == c2.intercept
    beyond = max(c1.beyond, c2.beyond)
    for c, other in ((c1, c2), (c2, c1)):
        for i in range(c.first_index, beyond + 1, c.modulus):
            if other.first_hit(c.label(i)) is not None:
                return True
    modulus = math.lcm(c1.modulus, c2.modulus)
    p = AffineResidue(c1.tier, c1.slope, c1.intercept)
    q = AffineResidue(c2.tier, c2.slope, c2.intercept)
    for r in range(c1.residue % c1.modulus, modulus, c1.modulus):
        for s in range(c2.residue % c2.modulus, modulus, c2.modulus):
            if _residue_collision(p, r, q, s, modulus, beyond) is not None:
                return True
    return False


@dataclass(frozen=True)
class Coloring:
    """Window overrides (sorted by index) plus the tail rule for all other indices."""

    window: tuple[tuple[int, PositionLabel], ...]
    tail: TailRule

    @classmethod
    def build(cls, window: Mapping[int, PositionLabel] | Iterable[tuple[int, PositionLabel]],
              tail: TailRule) -> Coloring:
        items = window.items() if isinstance(window, Mapping) else window
        entries = {}
        for i, label in items:
            if int(i) < 1:
                raise ValueError(f"window index must be positive, got {i}")
            entries[int(i)] = label
        return cls(tuple(sorted(entries.items())), tail)

    @property
    def window_size(self) -> int:
        return self.window[-1][0] if self.window else 0

    @property
    def overrides(self) -> dict[int, PositionLabel]:
        return dict(self.window)

    def label(self, i: int) -> PositionLabel:
        for j, label in self.window:
            if j == i:
                return label
        return self.tail.label(i)

    def labels_upto(self, n: int) -> list[PositionLabel]:
        overrides = self.overrides
        return [overrides.get(i) or self.tail.label(i) for i in range(1, n + 1)]

    def tail_classes(self) -> list[TailClass]:
        return self.tail.classes(self.window_size)

    def canonical(self) -> Coloring:
        tail = self.tail.canonical()
        window = tuple((i, a) for i, a in self.window if a != tail.label(i))
        return Coloring(window, tail)

    def validated(self) -> Coloring:
        canonical = self.canonical()
        canonical.tail.check_collisions(canonical.window_size)
        return canonical

    def negated(self) -> Coloring:
        return Coloring(tuple((i, -a) for i, a in self.window), self.tail.negated())

    def window_labels(self) -> list[PositionLabel]:
        return self.labels_upto(self.window_size)

    def first_index_of(self, label: PositionLabel) -> int | None:
        for i, a in enumerate(self.window_labels(), start=1):
            if a == label:
                return i
        return self.tail.first_hit(label, self.window_size)

    def occurs(self, label: PositionLabel) -> bool:
        return self.first_index_of(label) is not None

    def next_offset_above(self, label: PositionLabel) -> Fraction | None:
        """Least offset strictly above ``label`` among labels of the same tier."""
        candidates = [a.offset for a in self.window_labels() if a.tier == label.tier and a > label]
        for c in self.tail_classes():
            found = c.next_offset_above(label)
            if found is not None:
                candidates.append(found)
        return min(candidates, default=None)

    def bounds(self) -> tuple[Bound, Bound]:
        """Infimum and supremum of the label set."""
        lows = [point(a) for a in self.window_labels()] + [c.inf() for c in self.tail_classes()]
        highs = [point(a) for a in self.window_labels()] + [c.sup() for c in self.tail_classes()]
        return min(lows), max(highs)
