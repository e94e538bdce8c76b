"""Elements of G(E) moving one flag onto a commensurable one, and stabilizer dimensions."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

import sympy as sp

from GenFlag.algebra.exactlin import (
    MatrixQ,
    SlotLayout,
    VectorFS,
    annihilator,
    columns_to_vectors,
    det,
    inverse,
    matrix_of,
    span_basis,
)
from GenFlag.algebra.flag_spec import FlagSpecBase
from GenFlag.algebra.labels import PositionLabel
from GenFlag.errors import DeterminantObstructionError
from GenFlag.varieties.commens import CommWitness, require_commensurable
from GenFlag.varieties.isotropic import MIDDLE, FormKind, FormSpec, IsotropicFlagSpec, form_eval
from GenFlag.varieties.tower import FiniteFlag, truncate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupElement:
    """An automorphism of V acting by ``block`` on V_window and as the identity elsewhere."""

    window: int
    block: MatrixQ
    layout: SlotLayout = SlotLayout.LINEAR

    @classmethod
    def identity(cls, window: int = 1, layout: SlotLayout = SlotLayout.LINEAR) -> GroupElement:
        return cls(window, MatrixQ.identity(layout.dimension(window)), layout)

    @property
    def keys(self) -> tuple[int, ...]:
        return self.layout.keys(self.window)

    @property
    def det(self) -> Fraction:
        return det(self.block)

    @property
    def support(self) -> tuple[int, ...]:
        """Slots whose image differs from themselves."""
        images = columns_to_vectors(self.block, self.keys)
        return tuple(k for k, image in zip(self.keys, images) if image != VectorFS.unit(k))

    @property
    def is_identity(self) -> bool:
        return not self.support

    def apply(self, v: VectorFS) -> VectorFS:
        keys = self.keys
        images = columns_to_vectors(self.block, keys)
        inside = dict(zip(keys, images))
        out = VectorFS()
        for k, c in v.items():
            out = out + (inside[k] if k in inside else VectorFS.unit(k)) * c
        return out

    def act(self, flag: FiniteFlag) -> tuple[tuple[VectorFS, ...], ...]:
        """Canonical step bases of g(flag); the flag level must cover the window."""
        keys = self.layout.keys(max(flag.level, self.window))
        return tuple(span_basis([self.apply(v) for v in step], keys) for step in flag.steps)

    def preserves_form(self, kind: FormKind) -> bool:
        w = FormSpec(kind)
        images = dict(zip(self.keys, columns_to_vectors(self.block, self.keys)))
        return all(
            form_eval(w, images[a], images[b]) == form_eval(w, VectorFS.unit(a), VectorFS.unit(b))
            for a in self.keys for b in self.keys
        )


def _slot_order(k: int) -> tuple[int, bool]:
    return abs(k), k < 0


def _slot_matching(s1: FlagSpecBase, s2: FlagSpecBase, witness: CommWitness) -> dict[int, int]:
    """σ with label_2(σ(k)) = φ(label_1(k)); slots of one label are matched in order."""
    n = witness.level
    by_label_1: dict[PositionLabel, list[int]] = {}
    by_label_2: dict[PositionLabel, list[int]] = {}
    for k, a in s1.labels_at(n).items():
        by_label_1.setdefault(witness.phi(a), []).append(k)
    for k, a in s2.labels_at(n).items():
        by_label_2.setdefault(a, []).append(k)
    sigma = {}
    for a, slots in by_label_1.items():
        for k, j in zip(sorted(slots, key=_slot_order), sorted(by_label_2[a], key=_slot_order)):
            sigma[k] = j
    return sigma


def _transport(s1: FlagSpecBase, s2: FlagSpecBase, sigma: dict[int, int], keys, scale: dict[int, Fraction]):
    source = matrix_of([s1.basis.vector(k) for k in keys], keys)
    target = matrix_of([s2.basis.vector(sigma[k]) * scale.get(k, 1) for k in keys], keys)
    return target @ inverse(source)


def _isotropic_signs(spec: IsotropicFlagSpec, sigma: dict[int, int]) -> dict[int, Fraction]:
    """Keeps w(g l_k, g l_-k) = w(l_k, l_-k) for a skew form when σ flips the sign of a slot."""
    if spec.form.kind is not FormKind.C:
        return {}
    return {-k: Fraction(-1) for k, j in sigma.items() if k > 0 and j < 0}


def _repair_orientation(s1: IsotropicFlagSpec, sigma: dict[int, int], n: int) -> tuple[dict[int, int], dict[int, Fraction]]:
    kind = s1.form.kind
    if kind is FormKind.B:
        return sigma, {0: Fraction(-1)}
    middle = [k for k, a in s1.labels_at(n).items() if k > 0 and a == MIDDLE]
    if not middle:
        raise DeterminantObstructionError(
            "type D transport has determinant -1 and no self-dual pair to reflect")
    k = middle[0]
    repaired = dict(sigma)
    repaired[k], repaired[-k] = sigma[-k], sigma[k]
    return repaired, {}


def mapping_element(s1: FlagSpecBase, s2: FlagSpecBase) -> GroupElement:
    """g in G(E) (an isometry for isotropic specs) with g(s1) = s2.

    Adapted bases of both specs at the witness level are matched label by label
    through φ; one basis vector is then rescaled so that det g = 1.
    """
    witness = require_commensurable(s1, s2)
    n = witness.level
    keys = s1.slots(n)
    sigma = _slot_matching(s1, s2, witness)
    if isinstance(s1, IsotropicFlagSpec):
        scale = _isotropic_signs(s1, sigma)
        block = _transport(s1, s2, sigma, keys, scale)
        if det(block) != 1:
            sigma, scale = _repair_orientation(s1, sigma, n)
            block = _transport(s1, s2, sigma, keys, scale)
    else:
        block = _transport(s1, s2, sigma, keys, {})
        value = det(block)
        if value != 1:
            block = _transport(s1, s2, sigma, keys, {keys[0]: 1 / value})
    g = GroupElement(n, block, s1.layout)
    logger.debug(f"mapping element at level {n}: support {g.support}, det {g.det}")
    return g


def maps_onto(g: GroupElement, s1: FlagSpecBase, s2: FlagSpecBase, n: int) -> bool:
    """Whether g carries the level-n truncation of s1 onto that of s2."""
    return g.act(truncate(s1, n)) == truncate(s2, n).steps


def _rational(value: Fraction) -> sp.Rational:
    return sp.Rational(value.numerator, value.denominator)


def _preservation_rows(steps, keys) -> list[list[sp.Rational]]:
    size = len(keys)
    rows = []
    for step in steps:
        for f in annihilator(step, keys):
            for v in step:
                # f . X v, X[r][c] at index r * size + c
                row = [sp.Integer(0)] * (size * size)
                for r, kr in enumerate(keys):
                    for c, kc in enumerate(keys):
                        value = f[kr] * v[kc]
                        if value:
                            row[r * size + c] = _rational(value)
                rows.append(row)
    return rows


def _form_rows(spec: IsotropicFlagSpec, keys) -> list[list[sp.Rational]]:
    w = spec.form
    size = len(keys)
    index = {k: i for i, k in enumerate(keys)}
    rows = []
    for a in keys:
        for b in keys:
            # w(X e_a, e_b) + w(e_a, X e_b) = 0
            row = [sp.Integer(0)] * (size * size)
            for r in keys:
                value = form_eval(w, VectorFS.unit(r), VectorFS.unit(b))
                if value:
                    row[index[r] * size + index[a]] += _rational(value)
                value = form_eval(w, VectorFS.unit(a), VectorFS.unit(r))
                if value:
                    row[index[r] * size + index[b]] += _rational(value)
            rows.append(row)
    return rows


def stabilizer_dim(spec: FlagSpecBase, n: int) -> int:
    """Dimension of the Lie algebra stabilizer of the level-n truncation.

    Type A: inside trace-zero matrices on V_n. Isotropic: inside the Lie algebra
    of the form.
    """
    flag = truncate(spec, n)
    keys = spec.slots(n)
    size = len(keys)
    rows = _preservation_rows(flag.steps[:-1], keys)
    if isinstance(spec, IsotropicFlagSpec):
        rows += _form_rows(spec, keys)
    else:
        rows.append([sp.Integer(1) if r == c else sp.Integer(0) for r in range(size) for c in range(size)])
    conditions = sp.Matrix(rows).rank() if rows else 0
    logger.debug(f"stabilizer at level {n}: {size * size} unknowns, {conditions} independent conditions")
    return size * size - conditions
