import pytest
from fractions import Fraction

from GenFlag.algebra.basis import BasisSpec
from GenFlag.algebra.exactlin import VectorFS
from GenFlag.algebra.fixtures import asc, dense, grassmannian, zeta
from GenFlag.algebra.flag_spec import GeneralizedFlagSpec, canonical_adapted_basis, validate_spec
from GenFlag.algebra.labels import Coloring, PositionLabel, ResidueAffine
from GenFlag.errors import LevelTooSmallError, SingularBasisError, ZeroVectorError


def e(k):
    return VectorFS.unit(k)


class TestFlagSpec:

    def test_spec_levels(self):
        """Test n_spec for the named flags"""
        cases = [(asc(), 1), (zeta(), 1), (dense(), 1), (grassmannian(1), 1), (grassmannian(3), 3)]

        for spec, n_spec in cases:
            assert spec.n_spec == n_spec

    def test_space_of_ascending_flag(self):
        spec = asc()

        assert spec.space(PositionLabel(0, 2), 3) == (e(1), e(2))
        assert spec.space(PositionLabel(0, 2), 3, strict=True) == (e(1),)

    def test_visible_labels(self):
        """Test that the constant position of a Grassmannian appears once V_n leaves span{e_1..e_l}"""
        spec = grassmannian(2)

        assert spec.visible_labels(2) == [PositionLabel(0, 1)]
        assert spec.visible_labels(4) == [PositionLabel(0, 1), PositionLabel(0, 2)]

    def test_level_below_spec_raises(self):
        with pytest.raises(LevelTooSmallError):
            grassmannian(2).check_level(1)

    def test_position_of(self):
        """Test the position of the smallest member containing a vector"""
        spec = grassmannian(2)

        assert spec.position_of(e(2)) == PositionLabel(0, 1)
        assert spec.position_of(e(1) + e(3)) == PositionLabel(0, 2)
        assert zeta().position_of(e(2)) == PositionLabel(1, -1)

    def test_position_of_zero_raises(self):
        with pytest.raises(ZeroVectorError):
            asc().position_of(VectorFS())

    def test_swapped_basis_keeps_flag_and_determinant(self):
        """Test that a basis swap is canonicalized away while its determinant is kept"""
        swapped = GeneralizedFlagSpec(
            BasisSpec.build({1: e(2), 2: e(1)}),
            Coloring.build({1: PositionLabel(0, 1), 2: PositionLabel(0, 1)}, ResidueAffine.constant(PositionLabel(0, 2))),
        )

        validated = validate_spec(swapped)

        assert validated == grassmannian(2)
        assert validated.basis_det == -1

    def test_tilted_basis_survives_validation(self):
        tilted = validate_spec(GeneralizedFlagSpec(
            BasisSpec.build({1: e(1) + e(3)}),
            Coloring.build({1: PositionLabel(0, 1), 2: PositionLabel(0, 1)}, ResidueAffine.constant(PositionLabel(0, 2))),
        ))

        assert tilted.basis == BasisSpec.build({1: e(1) + e(3)})
        assert tilted.n_spec == 3

    def test_singular_basis_raises(self):
        """Test that a replacement block without full rank is rejected"""
        cases = [
            BasisSpec.build({1: e(2)}),
            BasisSpec.build({1: VectorFS()}),
            BasisSpec.build({1: e(1) + e(2), 2: e(1) * 2 + e(2) * 2}),
        ]

        for basis in cases:
            with pytest.raises(SingularBasisError):
                validate_spec(GeneralizedFlagSpec(basis, Coloring.build({}, ResidueAffine.linear(0, 1))))

    def test_canonical_adapted_basis_assigns_pivots(self):
        vectors, labels = canonical_adapted_basis(grassmannian(2), 3)

        assert vectors == {1: e(1), 2: e(2), 3: e(3)}
        assert labels == {1: PositionLabel(0, 1), 2: PositionLabel(0, 1), 3: PositionLabel(0, 2)}

    def test_basis_extent(self):
        basis = BasisSpec.build({2: e(2) + e(5) * Fraction(1, 2)})

        assert basis.extent == 5
        assert basis.validate() == 1
