from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from GenFlag.algebra.exactlin import MatrixQ, VectorFS, det
from GenFlag.errors import SingularBasisError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BasisSpec:
    """A basis L of V equal to E except at finitely many slots.

    ``replacements`` maps a slot k to the vector l_k; every other l_k is e_k.
    """

    replacements: tuple[tuple[int, VectorFS], ...] = ()

    @classmethod
    def build(cls, replacements: Mapping[int, VectorFS] | Iterable[tuple[int, VectorFS]] = ()) -> BasisSpec:
        items = replacements.items() if isinstance(replacements, Mapping) else replacements
        kept = {int(k): v for k, v in items}
        return cls(tuple(sorted((k, v) for k, v in kept.items() if v != VectorFS.unit(k))))

    @property
    def is_trivial(self) -> bool:
        return not self.replacements

    @property
    def replaced(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.replacements)

    @property
    def extent(self) -> int:
        """Smallest n such that every modification lives inside V_n."""
        reach = [abs(k) for k in self.replaced] + [v.reach for _, v in self.replacements]
        return max(reach, default=0)

    def vector(self, slot: int) -> VectorFS:
        for k, v in self.replacements:
            if k == slot:
                return v
        return VectorFS.unit(slot)

    def touched(self) -> list[int]:
        keys = set(self.replaced)
        for _, v in self.replacements:
            keys.update(v.support)
        return sorted(keys)

    def block(self) -> MatrixQ:
        """Rows l_k restricted to the touched slots, k running over the touched slots."""
        keys = self.touched()
        return MatrixQ(tuple(tuple(self.vector(k)[j] for j in keys) for k in keys))

    def validate(self) -> Fraction:
        """Determinant of the touched block; zero means L is not a basis."""
        for k, v in self.replacements:
            if not v:
                raise SingularBasisError(f"slot {k} is replaced by the zero vector")
        value = det(self.block())
        if value == 0:
            raise SingularBasisError(f"replacement block on slots {self.touched()} is singular")
        logger.debug(f"basis with {len(self.replacements)} replacements, block determinant {value}")
        return value
