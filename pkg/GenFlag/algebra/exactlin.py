"""Exact rational linear algebra on finite-support vectors.

Scalars are ``fractions.Fraction``. Vectors are finite maps from basis slots of E
to non-zero scalars. Slot keys are integers: ``k`` for e_k and, in isotropic mode,
``-k`` for e^k and ``0`` for the self-paired vector e_0 of type B.

All elimination goes through ``sympy.Matrix`` over ``sympy.Rational``; nothing is
ever rounded.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import sympy as sp

from GenFlag.errors import NonSquareError, NotIndependentError

logger = logging.getLogger(__name__)

Scalar = Fraction


def scalar(value) -> Fraction:
    """Coerces ints, strings like ``"-3/4"``, Fractions and sympy rationals."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, sp.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, sp.Basic):
        raise TypeError(f"not an exact rational: {value!r}")
    return Fraction(value)


def _sympy(value: Fraction) -> sp.Rational:
    return sp.Rational(value.numerator, value.denominator)


class SlotLayout(Enum):
    """Which slots span the window V_n."""

    LINEAR = "linear"
    MIRRORED = "mirrored"
    CENTERED = "centered"

    def keys(self, n: int) -> tuple[int, ...]:
        if self is SlotLayout.LINEAR:
            return tuple(range(1, n + 1))
        negative = tuple(range(-n, 0))
        positive = tuple(range(1, n + 1))
        if self is SlotLayout.MIRRORED:
            return negative + positive
        return negative + (0,) + positive

    def contains(self, key: int, n: int) -> bool:
        if self is SlotLayout.LINEAR:
            return 1 <= key <= n
        if key == 0:
            return self is SlotLayout.CENTERED
        return abs(key) <= n

    def dimension(self, n: int) -> int:
        return len(self.keys(n))


@dataclass(frozen=True)
class VectorFS:
    """A finite-support vector; ``coords`` is sorted by slot and holds no zeros."""

    coords: tuple[tuple[int, Fraction], ...] = ()

    @classmethod
    def of(cls, entries: Mapping[int, object] | Iterable[tuple[int, object]]) -> VectorFS:
        items = entries.items() if isinstance(entries, Mapping) else entries
        merged: dict[int, Fraction] = {}
        for key, value in items:
            merged[int(key)] = merged.get(int(key), Fraction(0)) + scalar(value)
        return cls(tuple(sorted((k, c) for k, c in merged.items() if c != 0)))

    @classmethod
    def unit(cls, key: int) -> VectorFS:
        return cls(((int(key), Fraction(1)),))

    def __getitem__(self, key: int) -> Fraction:
        for k, c in self.coords:
            if k == key:
                return c
        return Fraction(0)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.coords)

    @property
    def reach(self) -> int:
        """Largest |slot| in the support, 0 for the zero vector."""
        return max((abs(k) for k in self.support), default=0)

    def items(self):
        return iter(self.coords)

    def __bool__(self) -> bool:
        return bool(self.coords)

    def __add__(self, other: VectorFS) -> VectorFS:
        return VectorFS.of(list(self.coords) + list(other.coords))

    def __neg__(self) -> VectorFS:
        return VectorFS(tuple((k, -c) for k, c in self.coords))

    def __sub__(self, other: VectorFS) -> VectorFS:
        return self + (-other)

    def __mul__(self, factor) -> VectorFS:
        factor = scalar(factor)
        if factor == 0:
            return VectorFS()
        return VectorFS(tuple((k, c * factor) for k, c in self.coords))

    __rmul__ = __mul__

    def restricted(self, keys: Iterable[int]) -> VectorFS:
        keep = set(keys)
        return VectorFS(tuple((k, c) for k, c in self.coords if k in keep))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {c}" for k, c in self.coords)
        return f"VectorFS({{{body}}})"


def combination(coefficients: Sequence, vectors: Sequence[VectorFS]) -> VectorFS:
    pairs = []
    for c, v in zip(coefficients, vectors):
        c = scalar(c)
        if c:
            pairs.extend((k, c * x) for k, x in v.coords)
    return VectorFS.of(pairs)


@dataclass(frozen=True)
class MatrixQ:
    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> MatrixQ:
        entries = tuple(tuple(scalar(x) for x in row) for row in rows)
        if len({len(row) for row in entries}) > 1:
            raise ValueError("ragged matrix")
        return cls(entries)

    @classmethod
    def identity(cls, n: int) -> MatrixQ:
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @classmethod
    def from_sympy(cls, m: sp.Matrix) -> MatrixQ:
        return cls(tuple(tuple(scalar(m[i, j]) for j in range(m.cols)) for i in range(m.rows)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i][j]

    def to_sympy(self) -> sp.Matrix:
        flat = [_sympy(x) for row in self.entries for x in row]
        return sp.Matrix(self.rows, self.cols, flat)

    def __matmul__(self, other: MatrixQ) -> MatrixQ:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        return MatrixQ.from_sympy(self.to_sympy() * other.to_sympy())

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)


def _keys_of(vectors: Iterable[VectorFS], keys: Sequence[int] | None = None) -> list[int]:
    if keys is not None:
        return list(keys)
    return sorted({k for v in vectors for k in v.support})


def _rows_matrix(vectors: Sequence[VectorFS], keys: Sequence[int]) -> sp.Matrix:
    flat = [_sympy(v[k]) for v in vectors for k in keys]
    return sp.Matrix(len(vectors), len(keys), flat)


def _columns_matrix(vectors: Sequence[VectorFS], keys: Sequence[int]) -> sp.Matrix:
    flat = [_sympy(v[k]) for k in keys for v in vectors]
    return sp.Matrix(len(keys), len(vectors), flat)


def _row_vector(m: sp.Matrix, i: int, keys: Sequence[int]) -> VectorFS:
    return VectorFS.of((k, scalar(m[i, j])) for j, k in enumerate(keys))


def rank(vs: Sequence[VectorFS]) -> int:
    """Dimension of the span of ``vs``."""
    vs = [v for v in vs if v]
    if not vs:
        return 0
    keys = _keys_of(vs)
    return _rows_matrix(vs, keys).rank()


def is_independent(vs: Sequence[VectorFS]) -> bool:
    return rank(vs) == len(vs)


def det(m: MatrixQ) -> Fraction:
    """Exact determinant (Bareiss elimination)."""
    if m.rows != m.cols:
        raise NonSquareError(f"determinant of a {m.rows}x{m.cols} matrix")
    if m.rows == 0:
        return Fraction(1)
    return scalar(m.to_sympy().det(method="bareiss"))


def span_basis(vs: Sequence[VectorFS], keys: Sequence[int] | None = None) -> tuple[VectorFS, ...]:
    """Reduced row echelon basis of span(vs); equal spans give equal tuples
    as long as the same key order is used."""
    vs = [v for v in vs if v]
    if not vs:
        return ()
    keys = _keys_of(vs, keys)
    reduced, pivots = _rows_matrix(vs, keys).rref()
    return tuple(_row_vector(reduced, i, keys) for i in range(len(pivots)))


def pivot_key(v: VectorFS, keys: Sequence[int] | None = None) -> int:
    """First slot (in ``keys`` order) where ``v`` is non-zero."""
    if keys is None:
        return v.support[0]
    for k in keys:
        if v[k]:
            return k
    raise ValueError("zero vector has no pivot")


def solve(gens: Sequence[VectorFS], target: VectorFS) -> list[Fraction] | None:
    """Coefficients c with sum(c_i gens_i) == target, free variables set to zero."""
    if not gens:
        return [] if not target else None
    keys = _keys_of(list(gens) + [target])
    if not keys:
        return [Fraction(0)] * len(gens)
    augmented = _columns_matrix(list(gens) + [target], keys)
    reduced, pivots = augmented.rref()
    if len(gens) in pivots:
        return None
    solution = [Fraction(0)] * len(gens)
    for row, column in enumerate(pivots):
        solution[column] = scalar(reduced[row, len(gens)])
    return solution


def contains(basis: Sequence[VectorFS], v: VectorFS) -> bool:
    return solve(basis, v) is not None


def coordinates(basis: Sequence[VectorFS], v: VectorFS) -> list[Fraction]:
    """Coordinates of ``v`` in an independent family; raises when ``v`` is outside the span."""
    found = solve(basis, v)
    if found is None:
        raise NotIndependentError("vector lies outside the span of the basis")
    return found


def is_subspace(small: Sequence[VectorFS], big: Sequence[VectorFS]) -> bool:
    return rank(list(big) + list(small)) == rank(big)


def same_span(u: Sequence[VectorFS], w: Sequence[VectorFS]) -> bool:
    r = rank(list(u) + list(w))
    return r == rank(u) and r == rank(w)


def intersect(u: Sequence[VectorFS], w: Sequence[VectorFS]) -> tuple[VectorFS, ...]:
    """Basis of span(u) ∩ span(w)."""
    u = [x for x in u if x]
    w = [x for x in w if x]
    if not u or not w:
        return ()
    keys = _keys_of(u + w)
    stacked = _columns_matrix(u + [-x for x in w], keys)
    found = []
    for kernel_vector in stacked.nullspace():
        found.append(combination([scalar(kernel_vector[i]) for i in range(len(u))], u))
    return span_basis(found)


def intersect_window(gens: Sequence[VectorFS], n: int,
                     layout: SlotLayout = SlotLayout.LINEAR) -> tuple[VectorFS, ...]:
    """Basis of span(gens) ∩ V_n, V_n being the slots ``layout.keys(n)``."""
    gens = [g for g in gens if g]
    window = set(layout.keys(n))
    outside = sorted({k for g in gens for k in g.support if k not in window})
    if not outside:
        return span_basis(gens)
    constraints = _columns_matrix(gens, outside)
    survivors = []
    for kernel_vector in constraints.nullspace():
        survivors.append(combination([scalar(kernel_vector[i]) for i in range(len(gens))], gens))
    logger.debug(f"intersect_window: {len(gens)} generators, {len(outside)} escaping slots, "
                 f"{len(survivors)} survivors at level {n}")
    return span_basis(survivors)


def annihilator(basis: Sequence[VectorFS], keys: Sequence[int]) -> tuple[VectorFS, ...]:
    """Functionals on span(keys), written as vectors, vanishing on span(basis)."""
    basis = [b for b in basis if b]
    if not basis:
        return tuple(VectorFS.unit(k) for k in keys)
    matrix = _rows_matrix(basis, keys)
    return tuple(
        VectorFS.of((k, scalar(column[j])) for j, k in enumerate(keys))
        for column in matrix.nullspace()
    )


def extend_basis(base: Sequence[VectorFS], candidates: Iterable[VectorFS]) -> list[VectorFS]:
    """Candidates, in order, that enlarge span(base); the returned vectors
    complete ``base`` to a basis of span(base + candidates)."""
    chosen: list[VectorFS] = []
    current = rank(base)
    for v in candidates:
        trial = rank(list(base) + chosen + [v])
        if trial > current:
            chosen.append(v)
            current = trial
    return chosen


def matrix_of(vectors: Sequence[VectorFS], keys: Sequence[int]) -> MatrixQ:
    """Matrix whose j-th column holds the coordinates of ``vectors[j]`` on ``keys``."""
    return MatrixQ(tuple(tuple(v[k] for v in vectors) for k in keys))


def columns_to_vectors(m: MatrixQ, keys: Sequence[int]) -> list[VectorFS]:
    return [VectorFS.of(zip(keys, m.column(j))) for j in range(m.cols)]


def inverse(m: MatrixQ) -> MatrixQ:
    if m.rows != m.cols:
        raise NonSquareError(f"inverse of a {m.rows}x{m.cols} matrix")
    if det(m) == 0:
        raise NotIndependentError("matrix is singular")
    return MatrixQ.from_sympy(m.to_sympy().inv())
