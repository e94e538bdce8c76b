import pytest
from fractions import Fraction

import sympy as sp

from GenFlag.algebra.exactlin import (
    MatrixQ,
    SlotLayout,
    VectorFS,
    annihilator,
    contains,
    coordinates,
    det,
    extend_basis,
    intersect,
    intersect_window,
    inverse,
    rank,
    same_span,
    scalar,
    solve,
    span_basis,
)
from GenFlag.errors import NonSquareError, NotIndependentError


def e(k):
    return VectorFS.unit(k)


class TestExactLinearAlgebra:

    def test_scalar_coercion(self):
        """Test that ints, strings and sympy rationals become Fractions"""
        cases = [
            (3, Fraction(3)),
            ("-3/4", Fraction(-3, 4)),
            (Fraction(1, 2), Fraction(1, 2)),
            (sp.Rational(5, 7), Fraction(5, 7)),
        ]

        for value, expected in cases:
            assert scalar(value) == expected

    def test_vector_merges_and_drops_zeros(self):
        """Test that VectorFS.of adds repeated slots and forgets zero coefficients"""
        v = VectorFS.of([(1, 1), (1, -1), (2, 3)])

        assert v == e(2) * 3
        assert v.support == (2,)
        assert not VectorFS.of({4: 0})

    def test_span_basis_is_canonical(self):
        """Test that equal spans give equal echelon bases"""
        first = span_basis([e(1) + e(2), e(2)])
        second = span_basis([e(1), e(2) * 5, e(1) - e(2)])

        assert first == second == (e(1), e(2))

    def test_rank_and_same_span(self):
        assert rank([e(1), e(2), e(1) + e(2)]) == 2
        assert rank([]) == 0
        assert same_span([e(1) + e(3)], [e(1) * 2 + e(3) * 2])

    def test_intersect(self):
        """Test the intersection of two spans"""
        found = intersect([e(1), e(2)], [e(2), e(3)])

        assert same_span(found, [e(2)])
        assert intersect([e(1)], [e(2)]) == ()

    def test_intersect_window(self):
        """Test that only combinations supported inside V_n survive"""
        found = intersect_window([e(1) + e(3), e(2)], 2)

        assert same_span(found, [e(2)])

    def test_annihilator(self):
        found = annihilator([e(1)], [1, 2])

        assert same_span(found, [e(2)])

    def test_determinant(self):
        """Test exact determinants, including the empty matrix"""
        assert det(MatrixQ.from_rows([[0, 1], [1, 0]])) == -1
        assert det(MatrixQ.from_rows([["1/2", 0], [0, 4]])) == 2
        assert det(MatrixQ(())) == 1

    def test_non_square_determinant_raises(self):
        with pytest.raises(NonSquareError):
            det(MatrixQ.from_rows([[1, 2, 3], [4, 5, 6]]))

    def test_matrix_product(self):
        m = MatrixQ.from_rows([[1, 2], [3, 4]])

        assert m @ inverse(m) == MatrixQ.identity(2)
        assert MatrixQ.from_rows([[1, 2, 3]]) @ MatrixQ.from_rows([[1], [0], ["1/3"]]) == MatrixQ.from_rows([[2]])
        with pytest.raises(ValueError):
            m @ MatrixQ.from_rows([[1, 2, 3]])

    def test_inverse_of_singular_matrix_raises(self):
        with pytest.raises(NotIndependentError):
            inverse(MatrixQ.from_rows([[1, 2], [2, 4]]))

    def test_solve_outside_span_returns_none(self):
        assert solve([e(1), e(2)], e(3)) is None
        assert solve([e(1), e(1) + e(2)], e(2)) == [Fraction(-1), Fraction(1)]

    def test_coordinates_outside_span_raises(self):
        with pytest.raises(NotIndependentError):
            coordinates([e(1)], e(2))

    def test_slot_layouts(self):
        """Test the slots spanning V_n for each layout"""
        assert SlotLayout.LINEAR.keys(3) == (1, 2, 3)
        assert SlotLayout.MIRRORED.keys(2) == (-2, -1, 1, 2)
        assert SlotLayout.CENTERED.keys(1) == (-1, 0, 1)
        assert SlotLayout.CENTERED.dimension(3) == 7
        assert not SlotLayout.MIRRORED.contains(0, 4)

    def test_contains_and_extend_basis(self):
        """Test that extension keeps only candidates enlarging the span"""
        base = [e(1) + e(2)]

        assert contains(base, e(1) * 3 + e(2) * 3)
        assert not contains(base, e(1))
        assert extend_basis(base, [e(1) + e(2), e(1), e(2), e(3)]) == [e(1), e(3)]
