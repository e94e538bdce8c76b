"""Named flags used throughout the tests and the fixture corpus."""
from __future__ import annotations

from fractions import Fraction

from GenFlag.algebra.basis import BasisSpec
from GenFlag.algebra.flag_spec import GeneralizedFlagSpec, validate_spec
from GenFlag.algebra.labels import AffineResidue, Coloring, DenseInTier, PositionLabel, ResidueAffine


def asc() -> GeneralizedFlagSpec:
    """label(i) = (0, i): the ascending full flag."""
    return validate_spec(GeneralizedFlagSpec(BasisSpec(), Coloring.build({}, ResidueAffine.linear(0, 1))))


def zeta() -> GeneralizedFlagSpec:
    """label(2i-1) = (0, i), label(2i) = (1, -i): order type omega + omega*."""
    tail = ResidueAffine(2, (
        AffineResidue(1, Fraction(-1, 2), 0),
        AffineResidue(0, Fraction(1, 2), Fraction(1, 2)),
    ))
    return validate_spec(GeneralizedFlagSpec(BasisSpec(), Coloring.build({}, tail)))


def dense() -> GeneralizedFlagSpec:
    """label(i) = (0, cw(i)): a maximal flag indexed by the positive rationals."""
    return validate_spec(GeneralizedFlagSpec(BasisSpec(), Coloring.build({}, DenseInTier(0))))


def grassmannian(l: int) -> GeneralizedFlagSpec:
    """0 ⊂ span{e_1..e_l} ⊂ V."""
    window = {i: PositionLabel(0, 1) for i in range(1, l + 1)}
    tail = ResidueAffine.constant(PositionLabel(0, 2))
    return validate_spec(GeneralizedFlagSpec(BasisSpec(), Coloring.build(window, tail)))
