"""Generalized flags presented by a basis and a coloring.

For a spec (L, c) and a label a of c, F'_a = span{l_i : c(i) < a} and
F''_a = span{l_i : c(i) <= a}. From level ``n_spec`` on, intersecting with V_n
commutes with this description: F'_a ∩ V_n = span{l_i : i <= n, c(i) < a}.
"""
from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction

from GenFlag.algebra.basis import BasisSpec
from GenFlag.algebra.exactlin import (
    SlotLayout,
    VectorFS,
    coordinates,
    pivot_key,
    span_basis,
)
from GenFlag.algebra.labels import Coloring, PositionLabel, TailClass
from GenFlag.errors import LevelTooSmallError, ZeroVectorError

logger = logging.getLogger(__name__)


class FlagSpecBase(ABC):
    """Common surface of type A and isotropic flag specs."""

    basis: BasisSpec

    @property
    @abstractmethod
    def layout(self) -> SlotLayout:
        pass

    @property
    @abstractmethod
    def n_spec(self) -> int:
        pass

    @abstractmethod
    def slot_label(self, slot: int) -> PositionLabel:
        pass

    @abstractmethod
    def colorings(self) -> tuple[Coloring, ...]:
        """Colorings whose union of label sets is the position set."""

    def extra_labels(self) -> tuple[PositionLabel, ...]:
        """Labels of slots not covered by ``colorings`` (the e_0 slot of type B)."""
        return ()

    def slots(self, n: int) -> tuple[int, ...]:
        return self.layout.keys(n)

    def check_level(self, n: int) -> None:
        if n < self.n_spec:
            raise LevelTooSmallError(n, self.n_spec)

    def labels_at(self, n: int) -> dict[int, PositionLabel]:
        return {k: self.slot_label(k) for k in self.slots(n)}

    def visible_labels(self, n: int) -> list[PositionLabel]:
        """Positions a with F'_a ∩ V_n != F''_a ∩ V_n, in increasing order."""
        return sorted(set(self.labels_at(n).values()))

    def space(self, label: PositionLabel, n: int, strict: bool = False) -> tuple[VectorFS, ...]:
        """Canonical basis of F'_label ∩ V_n (``strict``) or F''_label ∩ V_n."""
        self.check_level(n)
        gens = [
            self.basis.vector(k) for k, a in self.labels_at(n).items()
            if (a < label if strict else a <= label)
        ]
        return span_basis(gens, self.slots(n))

    def tail_classes(self) -> list[TailClass]:
        return [c for coloring in self.colorings() for c in coloring.tail_classes()]

    def window_labels(self) -> list[PositionLabel]:
        found = [a for coloring in self.colorings() for a in coloring.window_labels()]
        return found + list(self.extra_labels())

    def occurs(self, label: PositionLabel) -> bool:
        return label in self.extra_labels() or any(c.occurs(label) for c in self.colorings())

    def position_of(self, v: VectorFS) -> PositionLabel:
        """Label of the smallest F'' containing ``v``."""
        if not v:
            raise ZeroVectorError("the zero vector lies in every member")
        n = max(self.n_spec, v.reach)
        slots = self.slots(n)
        coords = coordinates([self.basis.vector(k) for k in slots], v)
        return max(self.slot_label(k) for k, c in zip(slots, coords) if c)


@dataclass(frozen=True)
class GeneralizedFlagSpec(FlagSpecBase):
    basis: BasisSpec
    coloring: Coloring
    basis_det: Fraction = field(default=Fraction(1), compare=False)

    @property
    def layout(self) -> SlotLayout:
        return SlotLayout.LINEAR

    @property
    def n_spec(self) -> int:
        return max(1, self.coloring.window_size, self.basis.extent)

    def slot_label(self, slot: int) -> PositionLabel:
        return self.coloring.label(slot)

    def colorings(self) -> tuple[Coloring, ...]:
        return (self.coloring,)

    def with_coloring(self, coloring: Coloring) -> GeneralizedFlagSpec:
        return GeneralizedFlagSpec(self.basis, coloring, self.basis_det)


def canonical_adapted_basis(spec: FlagSpecBase, n: int) -> tuple[dict[int, VectorFS], dict[int, PositionLabel]]:
    """Reindexes the spec at level n by echelon pivots.

    For each visible position a, in order, the reduced echelon rows of F''_a ∩ V_n
    whose pivot is new are assigned to the slot of their pivot, with label a.
    Two specs describing the same flag with the same label set get the same output.
    """
    keys = spec.slots(n)
    vectors: dict[int, VectorFS] = {}
    labels: dict[int, PositionLabel] = {}
    seen: set[int] = set()
    for a in spec.visible_labels(n):
        rows = spec.space(a, n)
        pivots = set()
        for row in rows:
            p = pivot_key(row, keys)
            pivots.add(p)
            if p not in seen:
                vectors[p] = row
                labels[p] = a
        seen = pivots
    return vectors, labels


def validate_spec(spec: GeneralizedFlagSpec) -> GeneralizedFlagSpec:
    """Checks the basis, merges colliding labels and returns the canonical form.

    The determinant of the replacement block of the input basis is kept in
    ``basis_det``; the returned basis is the canonical adapted one.
    """
    value = spec.basis.validate()
    coloring = spec.coloring.validated()
    staged = GeneralizedFlagSpec(spec.basis, coloring, value)
    n = staged.n_spec
    vectors, labels = canonical_adapted_basis(staged, n)
    canonical = GeneralizedFlagSpec(
        BasisSpec.build(vectors),
        Coloring.build(labels, coloring.tail).canonical(),
        value,
    )
    logger.debug(f"validated spec at level {n}: window {canonical.coloring.window_size}, "
                 f"{len(canonical.basis.replacements)} replaced slots")
    return canonical
