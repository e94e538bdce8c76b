"""Big cells C(F, E; L).

For a basis L compatible with F, write U_b for the span of the l_k at position b.
A family Φ of maps Φ_b : F'_b -> U_b defines the unipotent
u = (1 + Φ_p) ... (1 + Φ_1) and the flag Φ(F) = u(F). A flag G lies in the cell
exactly when every G_b meets span{l_k : position > b} trivially; then u is unique
and Φ_b = u[b, <b] u[<b, <b]^-1 in L coordinates.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import sympy as sp

from GenFlag.algebra.basis import BasisSpec
from GenFlag.algebra.exactlin import (
    MatrixQ,
    VectorFS,
    combination,
    contains,
    extend_basis,
    intersect,
    matrix_of,
    scalar,
    span_basis,
)
from GenFlag.algebra.flag_spec import FlagSpecBase, GeneralizedFlagSpec, validate_spec
from GenFlag.algebra.labels import Coloring, PositionLabel
from GenFlag.errors import (
    IncompatibleBasisError,
    NotInCellError,
    SingularBasisError,
    TypeMismatchError,
)
from GenFlag.varieties.commens import require_commensurable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CellMap:
    """Φ_b: column k holds the coefficients of Φ_b(l_k) on the l_j, j in ``targets``."""

    position: PositionLabel
    sources: tuple[int, ...]
    targets: tuple[int, ...]
    matrix: MatrixQ

    @property
    def rank(self) -> int:
        return self.matrix.to_sympy().rank()

    def image(self, slot: int, basis: BasisSpec) -> VectorFS:
        column = self.matrix.column(self.sources.index(slot))
        return combination(column, [basis.vector(j) for j in self.targets])


@dataclass(frozen=True)
class CellCoords:
    maps: tuple[CellMap, ...]
    level: int = field(default=1, compare=False)

    in_cell = True

    def map_at(self, position: PositionLabel) -> CellMap | None:
        return next((m for m in self.maps if m.position == position), None)


@dataclass(frozen=True)
class NotInCell:
    """G_position meets span{l_k : position(k) > position} in ``intersection_dim`` dimensions."""

    position: PositionLabel
    intersection_dim: int

    in_cell = False

    def error(self) -> NotInCellError:
        return NotInCellError(
            f"dim(G_{self.position} ∩ W_{self.position}) = {self.intersection_dim}, expected 0")


def check_compatible(basis: BasisSpec, reference: FlagSpecBase, n: int) -> None:
    """Every l_k must lie in F'' at the position of slot k."""
    try:
        basis.validate()
    except SingularBasisError as e:
        raise IncompatibleBasisError(f"not a basis: {e}") from e
    for k in reference.slots(n):
        a = reference.slot_label(k)
        if not contains(reference.space(a, n), basis.vector(k)):
            raise IncompatibleBasisError(f"l_{k} = {basis.vector(k)} is not in F''_{a}")


def _cell_level(reference: GeneralizedFlagSpec, basis: BasisSpec, *others: int) -> int:
    return max(reference.n_spec, basis.extent, *others)


def _blocks(reference: GeneralizedFlagSpec, n: int) -> list[tuple[PositionLabel, list[int], list[int]]]:
    """(position, its slots, the slots below it) for every position visible at level n."""
    labels = reference.labels_at(n)
    return [
        (a, [k for k, b in labels.items() if b == a], [k for k, b in labels.items() if b < a])
        for a in reference.visible_labels(n)
    ]


def _maps_from_unipotent(u: sp.Matrix, reference: GeneralizedFlagSpec, n: int) -> tuple[CellMap, ...]:
    index = {k: i for i, k in enumerate(reference.slots(n))}
    found = []
    for a, block, below in _blocks(reference, n):
        if not below:
            continue
        rows = [index[k] for k in block]
        cols = [index[k] for k in below]
        phi = u.extract(rows, cols) * u.extract(cols, cols).inv()
        if phi.is_zero_matrix:
            continue
        found.append(CellMap(a, tuple(below), tuple(block), MatrixQ.from_sympy(phi)))
    return tuple(found)


def big_cell_coords(g: GeneralizedFlagSpec, basis: BasisSpec,
                    reference: GeneralizedFlagSpec) -> CellCoords | NotInCell:
    """Φ with Φ(F) = g relative to ``basis``, or the position where transversality fails."""
    witness = require_commensurable(reference, g)
    n = _cell_level(reference, basis, witness.level)
    check_compatible(basis, reference, n)
    keys = reference.slots(n)
    index = {k: i for i, k in enumerate(keys)}
    to_basis = matrix_of([basis.vector(k) for k in keys], keys).to_sympy().inv()
    u = sp.eye(len(keys))
    for a, block, below in _blocks(reference, n):
        lower = [index[k] for k in below + block]
        upper = [i for i in range(len(keys)) if i not in set(lower)]
        if not upper:
            continue
        coords = to_basis * matrix_of(g.space(witness.phi(a), n), keys).to_sympy()
        square = coords.extract(lower, list(range(coords.cols)))
        if square.rows != square.cols or square.det() == 0:
            meet = coords.cols - square.rank()
            logger.info(f"not in the cell of the given basis: position {a} meets the opposite flag in {meet} dims")
            return NotInCell(a, meet)
        graph = coords.extract(upper, list(range(coords.cols))) * square.inv()
        for k in block:
            column = lower.index(index[k])
            for row, i in enumerate(upper):
                u[i, index[k]] = graph[row, column]
    coords = CellCoords(_maps_from_unipotent(u, reference, n), n)
    logger.debug(f"cell coordinates at level {n}: {len(coords.maps)} nonzero maps")
    return coords


def require_cell_coords(g: GeneralizedFlagSpec, basis: BasisSpec, reference: GeneralizedFlagSpec) -> CellCoords:
    found = big_cell_coords(g, basis, reference)
    if not found.in_cell:
        raise found.error()
    return found


def apply_cell_coords(reference: GeneralizedFlagSpec, basis: BasisSpec, coords: CellCoords) -> GeneralizedFlagSpec:
    """The flag Φ(F) as a spec labeled by the positions of F."""
    reach = [abs(k) for m in coords.maps for k in m.sources + m.targets]
    n = _cell_level(reference, basis, coords.level, *reach)
    check_compatible(basis, reference, n)
    keys = reference.slots(n)
    index = {k: i for i, k in enumerate(keys)}
    u = sp.eye(len(keys))
    for m in sorted(coords.maps, key=lambda m: m.position):
        if any(reference.slot_label(k) != m.position for k in m.targets) or any(
                reference.slot_label(k) >= m.position for k in m.sources):
            raise TypeMismatchError(f"map at {m.position} does not send F' into the slots of its position")
        step = sp.zeros(len(keys), len(keys))
        phi = m.matrix.to_sympy()
        for r, j in enumerate(m.targets):
            for c, k in enumerate(m.sources):
                step[index[j], index[k]] = phi[r, c]
        u = (sp.eye(len(keys)) + step) * u
    l_vectors = [basis.vector(k) for k in keys]
    vectors = {
        k: combination([scalar(u[i, index[k]]) for i in range(len(keys))], l_vectors)
        for k in keys
    }
    labels = {k: reference.slot_label(k) for k in keys}
    return validate_spec(GeneralizedFlagSpec(BasisSpec.build(vectors), Coloring.build(labels, reference.coloring.tail)))


def _common_complement(f: Sequence[VectorFS], g: Sequence[VectorFS], above: list[VectorFS],
                       keys: Sequence[int]) -> list[VectorFS]:
    """Enlarges ``above`` to a complement of both f and g.

    ``above`` must meet f and g trivially and f, g must have the same dimension.
    Modulo ``above``: pair a completion of A ∩ B to A with one to B (a_i + b_i avoids
    both), then fill up the rest of V_n with units.
    """
    a = span_basis(list(f) + above, keys)
    b = span_basis(list(g) + above, keys)
    common = list(intersect(a, b))
    paired = [x + y for x, y in zip(extend_basis(common, a), extend_basis(common, b))]
    rest = extend_basis(list(a) + list(b), [VectorFS.unit(k) for k in keys])
    return above + paired + rest


def find_covering_cell(g: GeneralizedFlagSpec, reference: GeneralizedFlagSpec) -> BasisSpec:
    """A basis L compatible with F whose big cell contains g.

    From the top position down, W_a = span{l_k : position(k) > a} is grown into a
    common complement of F''_a and G''_φ(a) at the witness level. The slots of
    position a then receive a basis of F''_a ∩ W_b, b the position just below a.
    """
    witness = require_commensurable(reference, g)
    if big_cell_coords(g, reference.basis, reference).in_cell:
        return reference.basis
    n = max(witness.level, reference.n_spec)
    keys = reference.slots(n)
    steps = [(a, reference.space(a, n), g.space(witness.phi(a), n)) for a in reference.visible_labels(n)]
    opposite = {steps[-1][0]: []}
    for (a, f, h), (upper, _, _) in zip(reversed(steps[:-1]), reversed(steps[1:])):
        opposite[a] = _common_complement(f, h, opposite[upper], keys)
    vectors = {}
    below = [VectorFS.unit(k) for k in keys]
    for a, f, _ in steps:
        block = [k for k in keys if reference.slot_label(k) == a]
        vectors.update(zip(block, intersect(f, below)))
        below = opposite[a]
    found = BasisSpec.build(vectors)
    logger.debug(f"covering cell at level {n}: basis replaces slots {found.replaced}")
    return found
