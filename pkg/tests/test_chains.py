import pytest

from GenFlag.algebra.basis import BasisSpec
from GenFlag.algebra.chains import (
    ChainSpec,
    SubspaceSpec,
    chain_of,
    fl,
    ordered_members,
    partition_class,
)
from GenFlag.algebra.exactlin import VectorFS
from GenFlag.algebra.fixtures import asc, dense, grassmannian, zeta
from GenFlag.algebra.labels import PositionLabel
from GenFlag.errors import NotAChainError, ZeroVectorError


def e(k):
    return VectorFS.unit(k)


class TestChains:

    def setup_method(self):
        """Setup the chain span{e1} < span{e1, e3, e5, ...}"""
        self.even_chain = ChainSpec(BasisSpec(), (
            SubspaceSpec.finite([1]),
            SubspaceSpec(1, frozenset({1}), 2, frozenset({1})),
        ))

    def test_fl_of_the_chain_of_a_flag_is_the_flag(self):
        """Test that normalizing the chain of all members gives back the flag"""
        for spec in [asc(), zeta(), dense(), grassmannian(1), grassmannian(3)]:
            assert fl(chain_of(spec)) == spec

    def test_single_member_chain_gives_grassmannian(self):
        chain = ChainSpec(BasisSpec(), (SubspaceSpec.finite([1, 2]),))

        assert fl(chain) == grassmannian(2)

    def test_periodic_member(self):
        """Test the positions of a chain with a periodic member"""
        spec = fl(self.even_chain)

        assert spec.slot_label(1) < spec.slot_label(3) < spec.slot_label(2)
        assert spec.slot_label(3) == spec.slot_label(5)
        assert spec.slot_label(2) == spec.slot_label(4)

    def test_incomparable_members_raise(self):
        chain = ChainSpec(BasisSpec(), (SubspaceSpec.finite([1]), SubspaceSpec.finite([2])))

        with pytest.raises(NotAChainError):
            fl(chain)

    def test_repeated_member_raises(self):
        chain = ChainSpec(BasisSpec(), (SubspaceSpec.finite([1]), SubspaceSpec.finite([1])))

        with pytest.raises(NotAChainError):
            ordered_members(chain)

    def test_members_are_ordered_by_inclusion(self):
        chain = ChainSpec(BasisSpec(), (SubspaceSpec.finite([1, 2, 3]), SubspaceSpec.finite([1])))

        assert ordered_members(chain) == [SubspaceSpec.finite([1]), SubspaceSpec.finite([1, 2, 3])]

    def test_partition_class(self):
        """Test which members contain a vector"""
        cases = [
            (e(1), frozenset({0, 1})),
            (e(1) + e(3), frozenset({1})),
            (e(2), frozenset()),
        ]

        for v, members in cases:
            assert partition_class(self.even_chain, v).members == members

    def test_partition_class_with_family_reports_position(self):
        profile = partition_class(chain_of(asc()), e(1) + e(4))

        assert profile.position == PositionLabel(0, 4)

    def test_partition_class_of_zero_raises(self):
        with pytest.raises(ZeroVectorError):
            partition_class(self.even_chain, VectorFS())

    def test_member_indices_must_lie_in_window(self):
        with pytest.raises(ValueError):
            SubspaceSpec(1, frozenset({2}))
