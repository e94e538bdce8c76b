"""Truncations of a generalized flag and the embeddings between consecutive levels.

A spec s determines, for every level n >= n_spec, the finite flag of the distinct
intersections with V_n. Going from n to n + 1 inserts the new basis vectors at the
position of their label; this is the embedding of Fl(d_n; V_n) into
Fl(d_{n+1}; V_{n+1}) and it commutes with truncation.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

from GenFlag.algebra.basis import BasisSpec
from GenFlag.algebra.exactlin import SlotLayout, VectorFS, is_subspace, span_basis
from GenFlag.algebra.flag_spec import (
    FlagSpecBase,
    GeneralizedFlagSpec,
    validate_spec,
)
from GenFlag.algebra.labels import Coloring, PositionLabel
from GenFlag.errors import LevelTooSmallError, TypeMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiniteFlag:
    """Nonzero steps of a flag in V_n, each as a canonical echelon basis; the last is V_n."""

    level: int
    steps: tuple[tuple[VectorFS, ...], ...]
    labels: tuple[PositionLabel, ...]
    layout: SlotLayout = SlotLayout.LINEAR

    @classmethod
    def build(cls, level: int, steps, labels, layout: SlotLayout = SlotLayout.LINEAR) -> FiniteFlag:
        """Canonicalizes the step bases and checks that they form a flag ending at V_level."""
        keys = layout.keys(level)
        labels = tuple(labels)
        if len(labels) != len(steps) or list(labels) != sorted(set(labels)):
            raise TypeMismatchError("step labels must be distinct, increasing and one per step")
        canonical = tuple(span_basis(step, keys) for step in steps)
        for step in steps:
            if any(not layout.contains(k, level) for v in step for k in v.support):
                raise TypeMismatchError(f"a step vector leaves V_{level}")
        for smaller, larger in zip(canonical, canonical[1:]):
            if len(smaller) >= len(larger) or not is_subspace(smaller, larger):
                raise TypeMismatchError("steps must be strictly increasing subspaces")
        if not canonical or len(canonical[-1]) != len(keys):
            raise TypeMismatchError(f"the last step must be V_{level}")
        return cls(level, canonical, labels, layout)

    @property
    def dims(self) -> tuple[int, ...]:
        return (0,) + tuple(len(step) for step in self.steps)

    @property
    def length(self) -> int:
        """s_n, the number of nonzero steps."""
        return len(self.steps)

    def step_of(self, label: PositionLabel) -> tuple[VectorFS, ...]:
        return self.steps[self.labels.index(label)]


def flag_type(spec: FlagSpecBase, n: int) -> tuple[tuple[PositionLabel, ...], tuple[int, ...]]:
    """Visible labels and dimension sequence d_n of a spec at level n."""
    labels = spec.labels_at(n)
    visible = tuple(sorted(set(labels.values())))
    dims = (0,) + tuple(sum(1 for a in labels.values() if a <= b) for b in visible)
    return visible, dims


def _check_type(flag: FiniteFlag, spec: FlagSpecBase) -> None:
    labels, dims = flag_type(spec, flag.level)
    if flag.labels != labels or flag.dims != dims:
        raise TypeMismatchError(
            f"finite flag of type {flag.dims} does not match type {dims} of the reference at level {flag.level}")


def truncate(spec: FlagSpecBase, n: int) -> FiniteFlag:
    spec.check_level(n)
    visible = spec.visible_labels(n)
    steps = tuple(spec.space(a, n) for a in visible)
    logger.debug(f"truncated at level {n}: dims {(0,) + tuple(len(s) for s in steps)}")
    return FiniteFlag(n, steps, tuple(visible), spec.layout)


def embedding_data(spec: FlagSpecBase, n: int) -> tuple[int, int, int]:
    """(j_n, s_n, s_{n+1}): the 1-based step index receiving e_{n+1}, and the flag lengths."""
    before, _ = flag_type(spec, n)
    after, _ = flag_type(spec, n + 1)
    return after.index(spec.slot_label(n + 1)) + 1, len(before), len(after)


def embed_step(flag: FiniteFlag, spec: FlagSpecBase) -> FiniteFlag:
    """The image of ``flag`` under the embedding from level n into level n + 1."""
    _check_type(flag, spec)
    n = flag.level
    keys = spec.slots(n + 1)
    fresh = [k for k in keys if k not in set(spec.slots(n))]
    fresh_labels = {k: spec.slot_label(k) for k in fresh}
    labels = sorted(set(flag.labels) | set(fresh_labels.values()))
    steps = []
    for a in labels:
        older = [b for b in flag.labels if b <= a]
        base = list(flag.step_of(older[-1])) if older else []
        base += [VectorFS.unit(k) for k in fresh if fresh_labels[k] <= a]
        steps.append(span_basis(base, keys))
    j, s_n, s_next = embedding_data(spec, n)
    logger.debug(f"embedding level {n} -> {n + 1}: j = {j}, s = {s_n} -> {s_next}")
    return FiniteFlag(n + 1, tuple(steps), tuple(labels), flag.layout)


def lift(flag: FiniteFlag, spec: GeneralizedFlagSpec) -> GeneralizedFlagSpec:
    """The spec agreeing with ``flag`` at its level and with ``spec`` beyond it."""
    if flag.level < spec.n_spec:
        raise LevelTooSmallError(flag.level, spec.n_spec)
    _check_type(flag, spec)
    n = flag.level
    vectors: dict[int, VectorFS] = {}
    labels: dict[int, PositionLabel] = {}
    keys = spec.slots(n)
    seen: set[int] = set()
    for a, step in zip(flag.labels, flag.steps):
        rows = span_basis(step, keys)
        pivots = set()
        for row in rows:
            p = next(k for k in keys if row[k])
            pivots.add(p)
            if p not in seen:
                vectors[p], labels[p] = row, a
        seen = pivots
    lifted = GeneralizedFlagSpec(BasisSpec.build(vectors), Coloring.build(labels, spec.coloring.tail))
    return validate_spec(lifted)

