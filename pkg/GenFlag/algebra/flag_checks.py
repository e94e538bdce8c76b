"""Order-type and span checks on flag specs."""
from __future__ import annotations

import logging
from typing import Sequence

from GenFlag.algebra.exactlin import VectorFS, contains, intersect, is_independent, same_span, solve
from GenFlag.algebra.flag_spec import FlagSpecBase, GeneralizedFlagSpec, validate_spec
from GenFlag.algebra.labels import ClassKind, tail_classes_meet
from GenFlag.errors import NontrivialBasisError, NotIndependentError

logger = logging.getLogger(__name__)


def is_maximal(spec: FlagSpecBase) -> bool:
    """True iff every position carries exactly one basis index."""
    colorings = spec.colorings()
    if any(c.kind is ClassKind.CONSTANT for c in spec.tail_classes()):
        return False
    window = spec.window_labels()
    if len(window) != len(set(window)):
        return False
    for coloring in colorings:
        if any(coloring.tail.first_hit(a, coloring.window_size) is not None for a in window):
            return False
    for x, first in enumerate(colorings):
        for second in colorings[x + 1:]:
            if any(tail_classes_meet(c, d) for c in first.tail_classes() for d in second.tail_classes()):
                return False
    return True


def is_flag(spec: FlagSpecBase) -> bool:
    """True iff the position order embeds into the integers."""
    classes = spec.tail_classes()
    if any(c.kind is ClassKind.DENSE for c in classes):
        return False
    tiers = [a.tier for a in spec.window_labels()] + [c.tier for c in classes]
    for c in classes:
        if c.kind is ClassKind.ASCENDING and any(t > c.tier for t in tiers):
            logger.debug(f"ascending class in tier {c.tier} sits below a higher tier")
            return False
        if c.kind is ClassKind.DESCENDING and any(t < c.tier for t in tiers):
            logger.debug(f"descending class in tier {c.tier} sits above a lower tier")
            return False
    return True


def reconstruct_check(spec: FlagSpecBase, n: int) -> bool:
    """F' is the union of the smaller F'' and F'' the intersection of the larger F',
    checked on every position visible at level n."""
    spec.check_level(n)
    visible = spec.visible_labels(n)
    window = [VectorFS.unit(k) for k in spec.slots(n)]
    for index, a in enumerate(visible):
        below = [spec.space(b, n) for b in visible[:index]]
        union = [v for space in below for v in space]
        if not same_span(union, spec.space(a, n, strict=True)):
            logger.debug(f"union of smaller F'' differs from F' at {a}, level {n}")
            return False
        meet = window
        for c in visible[index + 1:]:
            meet = intersect(meet, spec.space(c, n, strict=True))
        if not same_span(meet, spec.space(a, n)):
            logger.debug(f"intersection of larger F' differs from F'' at {a}, level {n}")
            return False
    return True


def dual(spec: GeneralizedFlagSpec) -> GeneralizedFlagSpec:
    """The flag of complements F^c with reversed order; needs E adapted to the flag."""
    if not spec.basis.is_trivial:
        raise NontrivialBasisError("the dual flag is only defined when E itself is adapted")
    return validate_spec(spec.with_coloring(spec.coloring.negated()))


def compatible_basis_finite(ls: Sequence[VectorFS], steps: Sequence[Sequence[VectorFS]]) -> list[VectorFS]:
    """Greedy adapted basis e_1..e_n with span{l_1..l_k} = span{e_1..e_k} for every k.

    ``steps`` are bases of the nonzero flag members in increasing order. Each e_k is
    l_k corrected by earlier e_j so that it lands in the smallest possible step.
    """
    if not is_independent(ls):
        raise NotIndependentError("input vectors are linearly dependent")
    chosen: list[VectorFS] = []
    for l in ls:
        picked = l
        for step in steps:
            if contains(step, l):
                break
            found = solve(list(step) + chosen, l)
            if found is not None:
                picked = l
                for c, e in zip(found[len(step):], chosen):
                    picked = picked - e * c
                logger.debug(f"corrected {l} into {picked}")
                break
        chosen.append(picked)
    return chosen
