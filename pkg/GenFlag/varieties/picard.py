"""Picard groups of Fl(F, E) and Fl(F, w, E) through their level-n restrictions.

A class is a weight m_a for every position a. Type A classes live modulo the
all-ones weight; isotropic classes are carried by the positions below the
self-dual one. At level n the class restricts to

    type A:     (m_a - m_top) for the visible positions a below the top one,
    isotropic:  (m_a - m_-a)  for the visible positions a below the middle,

so invisible positions contribute nothing and the kernel is the diagonal,
respectively the span of the pairs γ_a + γ_-a.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from GenFlag.algebra.basis import BasisSpec
from GenFlag.algebra.exactlin import matrix_of, scalar
from GenFlag.algebra.flag_checks import is_flag
from GenFlag.algebra.flag_spec import FlagSpecBase
from GenFlag.algebra.labels import ClassKind, Coloring, PositionLabel, TailClass
from GenFlag.config import KERNEL_CHECK_MAX_BOUND, KERNEL_CHECK_MAX_LEVEL, VERY_AMPLE_CHECK_PERIODS
from GenFlag.errors import (
    GenFlagError,
    InvalidWeightsError,
    LevelTooSmallError,
    PositionInvisibleError,
)
from GenFlag.varieties.cells import check_compatible
from GenFlag.varieties.isotropic import MIDDLE, IsotropicFlagSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightRule:
    """m(i) = u_r * i + v_r for tail indices i = r (mod modulus)."""

    modulus: int = 1
    residues: tuple[tuple[int, int], ...] = ((0, 0),)

    def __post_init__(self):
        if self.modulus < 1 or len(self.residues) != self.modulus:
            raise InvalidWeightsError(f"weight rule mod {self.modulus} needs {self.modulus} residue pairs")

    @classmethod
    def constant(cls, value: int) -> WeightRule:
        return cls(1, ((0, int(value)),))

    def slope(self, i: int) -> int:
        return self.residues[i % self.modulus][0]

    def value(self, i: int) -> int:
        u, v = self.residues[i % self.modulus]
        return u * i + v

    @property
    def is_zero(self) -> bool:
        return all(u == 0 and v == 0 for u, v in self.residues)


def _is_isotropic(spec: FlagSpecBase) -> bool:
    return isinstance(spec, IsotropicFlagSpec)


def _carries_weight(spec: FlagSpecBase, label: PositionLabel) -> bool:
    return not _is_isotropic(spec) or label < MIDDLE


def _tail_index(spec: FlagSpecBase, label: PositionLabel) -> int | None:
    for coloring in spec.colorings():
        i = coloring.tail.first_hit(label, coloring.window_size)
        if i is not None:
            return i
    return None


@dataclass(frozen=True)
class PicElement:
    spec: FlagSpecBase
    explicit: tuple[tuple[PositionLabel, int], ...] = ()
    rule: WeightRule = field(default_factory=WeightRule)

    @classmethod
    def build(cls, spec: FlagSpecBase, explicit: Mapping[PositionLabel, int] | None = None,
              rule: WeightRule | None = None) -> PicElement:
        element = cls(spec, tuple(sorted((explicit or {}).items())), rule or WeightRule())
        element.validate()
        return element

    @property
    def overrides(self) -> dict[PositionLabel, int]:
        return dict(self.explicit)

    def weight(self, label: PositionLabel) -> int:
        """m_label; isotropic weights above the middle are zero in this representative."""
        if not _carries_weight(self.spec, label):
            return 0
        overrides = self.overrides
        if label in overrides:
            return overrides[label]
        i = _tail_index(self.spec, label)
        return self.rule.value(i) if i is not None else 0

    def validate(self) -> None:
        for a, _ in self.explicit:
            if not self.spec.occurs(a):
                raise InvalidWeightsError(f"{a} is not a position of the flag")
            if not _carries_weight(self.spec, a):
                raise InvalidWeightsError(f"isotropic weights live below the middle position, got {a}")
        overrides = self.overrides
        m = self.rule.modulus
        for c in self.spec.tail_classes():
            if c.kind is ClassKind.CONSTANT:
                label = c.label(c.first_index)
                if label in overrides or not _carries_weight(self.spec, label):
                    continue
                pairs = {self.rule.residues[r] for r in range(m)
                         if (r - c.residue) % math.gcd(c.modulus, m) == 0}
                if len(pairs) > 1 or any(u for u, _ in pairs):
                    raise InvalidWeightsError(
                        f"position {label} is carried by infinitely many indices, its weight rule must be constant")
            elif c.kind is ClassKind.DENSE and any(u for u, _ in self.rule.residues):
                raise InvalidWeightsError("weights on a dense tier must follow constant rules")


@dataclass(frozen=True)
class PicPresentation:
    generators: tuple[PositionLabel, ...]
    infinite: bool
    relation: str | None

    @property
    def rank(self) -> int | None:
        if self.infinite:
            return None
        return len(self.generators) - (1 if self.relation else 0)

    def describe(self) -> str:
        count = "infinitely many" if self.infinite else str(len(self.generators))
        quotient = f" modulo the {self.relation}" if self.relation else ""
        return f"{count} generators{quotient}"


def _finite_positions(spec: FlagSpecBase) -> list[PositionLabel]:
    found = set(spec.window_labels())
    for c in spec.tail_classes():
        found.add(c.label(c.first_index))
    return sorted(found)


def pic_presentation(spec: FlagSpecBase) -> PicPresentation:
    """Generators γ_a and the relation among them."""
    infinite = any(c.kind is not ClassKind.CONSTANT for c in spec.tail_classes())
    if infinite:
        period = math.lcm(*(c.tail.modulus for c in spec.colorings()))
        positions = spec.visible_labels(spec.n_spec + period)
    else:
        positions = _finite_positions(spec)
    if _is_isotropic(spec):
        return PicPresentation(tuple(a for a in positions if a < MIDDLE), infinite, None)
    return PicPresentation(tuple(positions), infinite, "diagonal")


def _level_coordinates(spec: FlagSpecBase, weight: Callable[[PositionLabel], int], n: int) -> list[int]:
    visible = spec.visible_labels(n)
    if _is_isotropic(spec):
        return [weight(a) - weight(-a) for a in visible if a < MIDDLE]
    top = weight(visible[-1])
    return [weight(a) - top for a in visible[:-1]]


def restrict_pic(p: PicElement, n: int) -> list[int]:
    """φ_n(p) in the lattice of the level-n flag variety."""
    p.spec.check_level(n)
    return _level_coordinates(p.spec, p.weight, n)


def level_map(spec: FlagSpecBase, coords: Sequence[int], n: int) -> list[int]:
    """r_n: level n+1 coordinates to level n coordinates."""
    spec.check_level(n)
    after = spec.visible_labels(n + 1)
    if _is_isotropic(spec):
        indexed = dict(zip([a for a in after if a < MIDDLE], coords))
        return [indexed[a] for a in spec.visible_labels(n) if a < MIDDLE]
    if len(coords) != len(after) - 1:
        raise InvalidWeightsError(f"level {n + 1} coordinates have length {len(after) - 1}, got {len(coords)}")
    indexed = dict(zip(after, list(coords) + [0]))
    before = spec.visible_labels(n)
    top = indexed[before[-1]]
    return [indexed[a] - top for a in before[:-1]]


def pic_preimage(spec: FlagSpecBase, n: int, coords: Sequence[int]) -> PicElement:
    """A weight assignment whose level-n restriction is ``coords``."""
    spec.check_level(n)
    visible = spec.visible_labels(n)
    if _is_isotropic(spec):
        targets = [a for a in visible if a < MIDDLE]
    else:
        targets = visible[:-1]
    if len(coords) != len(targets):
        raise InvalidWeightsError(f"level {n} lattice has rank {len(targets)}, got {len(coords)} coordinates")
    return PicElement.build(spec, {a: int(x) for a, x in zip(targets, coords)})


def _predicted_kernel(spec: FlagSpecBase, weights: Mapping[PositionLabel, int]) -> bool:
    if _is_isotropic(spec):
        return all(weights[a] == weights[-a] for a in weights if a < MIDDLE)
    return len(set(weights.values())) <= 1


def kernel_check(spec: FlagSpecBase, n: int, bound: int) -> bool:
    """Enumerates weights in [-bound, bound] on the level-n positions and compares
    the kernel of φ_n with the diagonal (type A) or the paired kernel (isotropic)."""
    spec.check_level(n)
    if n > KERNEL_CHECK_MAX_LEVEL or bound > KERNEL_CHECK_MAX_BOUND or bound < 0:
        raise GenFlagError(f"kernel check is limited to level <= {KERNEL_CHECK_MAX_LEVEL} "
                           f"and bound <= {KERNEL_CHECK_MAX_BOUND}")
    visible = spec.visible_labels(n)
    checked = 0
    for values in itertools.product(range(-bound, bound + 1), repeat=len(visible)):
        weights = dict(zip(visible, values))
        in_kernel = not any(_level_coordinates(spec, weights.__getitem__, n))
        if in_kernel != _predicted_kernel(spec, weights):
            logger.warning(f"kernel mismatch at level {n} for weights {values}")
            return False
        checked += 1
    logger.debug(f"kernel check at level {n}: {checked} weight assignments agree")
    return True


def _sample_level(spec: FlagSpecBase, rule: WeightRule, extra: Iterable[PositionLabel] = ()) -> int:
    period = math.lcm(rule.modulus, *(c.tail.modulus for c in spec.colorings()))
    firsts = [i for a in extra for i in [_first_index(spec, a)] if i is not None]
    return max([spec.n_spec] + firsts) + (VERY_AMPLE_CHECK_PERIODS + 1) * period


def _first_index(spec: FlagSpecBase, label: PositionLabel) -> int | None:
    found = [i for coloring in spec.colorings() for i in [coloring.first_index_of(label)] if i is not None]
    return min(found, default=None)


def _relevant(spec: FlagSpecBase, c: TailClass) -> bool:
    """Classes whose labels are eventually weighted."""
    if not _is_isotropic(spec):
        return True
    if c.kind is ClassKind.DESCENDING:
        return c.tier <= 0
    if c.kind is ClassKind.ASCENDING:
        return c.tier < 0
    return False


def _asymptotically_increasing(p: PicElement) -> bool:
    """Sign and common growth rate of the weight rule on every infinite class."""
    rates: dict[tuple[int, ClassKind], set[Fraction]] = {}
    for c in p.spec.tail_classes():
        if c.kind not in (ClassKind.ASCENDING, ClassKind.DESCENDING) or not _relevant(p.spec, c):
            continue
        if _is_isotropic(p.spec) and c.kind is ClassKind.ASCENDING:
            logger.debug(f"weights below the middle grow without bound on tier {c.tier}")
            return False
        period = math.lcm(c.modulus, p.rule.modulus)
        for r in range(c.residue % c.modulus, period, c.modulus):
            u = p.rule.slope(r)
            if (u <= 0) if c.kind is ClassKind.ASCENDING else (u >= 0):
                logger.debug(f"weight slope {u} does not follow the {c.kind.value} class in tier {c.tier}")
                return False
            rates.setdefault((c.tier, c.kind), set()).add(Fraction(u) / c.slope)
    return all(len(found) == 1 for found in rates.values())


def is_very_ample(p: PicElement) -> bool:
    """Whether a -> m_a is strictly increasing on the positions.

    For isotropic classes the weights below the middle are extended by
    m_-a = -m_a and m_middle = 0.
    """
    spec = p.spec
    if not is_flag(spec):
        return False
    if not _asymptotically_increasing(p):
        return False
    level = _sample_level(spec, p.rule, [a for a, _ in p.explicit])
    positions = sorted(set(spec.labels_at(level).values()) | {a for a, _ in p.explicit})
    if _is_isotropic(spec):
        positions = [a for a in positions if a < MIDDLE]
    weights = [p.weight(a) for a in positions]
    if any(x >= y for x, y in zip(weights, weights[1:])):
        return False
    if _is_isotropic(spec) and weights and weights[-1] >= 0:
        return False
    return True


def is_projective(spec: FlagSpecBase) -> bool:
    return is_flag(spec)


def _class_at(spec: FlagSpecBase, coloring: Coloring, r: int) -> TailClass | None:
    for c in coloring.tail_classes():
        if r % c.modulus == c.residue:
            return c
    return None


def very_ample_witness(spec: FlagSpecBase) -> PicElement | None:
    """A strictly increasing weight assignment, or None when the positions do not embed into ℤ.

    Every position (tier, x) gets floor(σ x) + C_tier with σ a multiple of all tail
    denominators, large enough to separate neighbouring positions, and C_tier
    stacking the tiers in order.
    """
    if not is_flag(spec):
        return None
    period = math.lcm(*(c.tail.modulus for c in spec.colorings()))
    level = spec.n_spec + (VERY_AMPLE_CHECK_PERIODS + 1) * period
    sample = sorted(set(spec.labels_at(level).values()))
    if _is_isotropic(spec):
        sample = [a for a in sample if a < MIDDLE]
    if not sample:
        return PicElement.build(spec)
    moving = [c for c in spec.tail_classes() if c.kind in (ClassKind.ASCENDING, ClassKind.DESCENDING)]
    denominator = math.lcm(1, *(x.denominator for c in moving for x in (c.slope, c.intercept)))
    gaps = [b.offset - a.offset for a, b in zip(sample, sample[1:]) if a.tier == b.tier]
    gap = min(gaps, default=Fraction(1))
    sigma = denominator * max(1, math.ceil(Fraction(2) / (denominator * gap)))
    shift: dict[int, int] = {}
    top = None
    for tier in sorted({a.tier for a in sample}):
        values = [math.floor(sigma * a.offset) for a in sample if a.tier == tier]
        shift[tier] = 0 if top is None else top + 1 - min(values)
        top = max(values) + shift[tier]
    if _is_isotropic(spec):
        lift = -(top + 1)
        shift = {t: s + lift for t, s in shift.items()}

    def weight(a: PositionLabel) -> int:
        return math.floor(sigma * a.offset) + shift[a.tier]

    explicit = {a: weight(a) for a in set(spec.window_labels()) if _carries_weight(spec, a)}
    residues = []
    for r in range(period):
        pair = (0, 0)
        for coloring in spec.colorings():
            c = _class_at(spec, coloring, r)
            if c is None or c.tier not in shift:
                continue
            if c.kind is ClassKind.CONSTANT:
                label = c.label(c.first_index)
                if _carries_weight(spec, label):
                    pair = (0, weight(label))
                    break
            elif _relevant(spec, c):
                pair = (int(sigma * c.slope), int(sigma * c.intercept) + shift[c.tier])
                break
        residues.append(pair)
    witness = PicElement.build(spec, explicit, WeightRule(period, tuple(residues)))
    logger.debug(f"very ample witness with growth {sigma} and tier shifts {shift}")
    return witness


def transition_det(l_basis: BasisSpec, m_basis: BasisSpec, position: PositionLabel, n: int,
                   spec: FlagSpecBase) -> Fraction:
    """det_{L,M}(F''/F') at ``position``: the block of M's coordinates in L on the slots of the position."""
    needed = max(spec.n_spec, l_basis.extent, m_basis.extent)
    if n < needed:
        raise LevelTooSmallError(n, needed)
    if position not in spec.visible_labels(n):
        raise PositionInvisibleError(f"position {position} is not visible at level {n}")
    check_compatible(l_basis, spec, n)
    check_compatible(m_basis, spec, n)
    keys = spec.slots(n)
    l_matrix = matrix_of([l_basis.vector(k) for k in keys], keys).to_sympy()
    m_matrix = matrix_of([m_basis.vector(k) for k in keys], keys).to_sympy()
    coords = l_matrix.inv() * m_matrix
    block = [i for i, k in enumerate(keys) if spec.slot_label(k) == position]
    value = scalar(coords.extract(block, block).det())
    logger.debug(f"transition determinant at {position}, level {n}: {value}")
    return value
