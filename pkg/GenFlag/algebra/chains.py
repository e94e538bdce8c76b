"""Chains of subspaces and their normalization ``fl`` to generalized flags.

A chain shares one basis L. Each explicit member is span{l_i : i in I} for an index
set I that is explicit up to ``upto`` and periodic beyond it. A chain may also carry
a ``family`` coloring, meaning that every F'_a and F''_a of that coloring is a member;
this is how chains with infinitely many members are presented.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from GenFlag.algebra.basis import BasisSpec
from GenFlag.algebra.exactlin import VectorFS, coordinates
from GenFlag.algebra.flag_spec import GeneralizedFlagSpec, validate_spec
from GenFlag.algebra.labels import (
    AffineResidue,
    ClassKind,
    Coloring,
    DenseInTier,
    PositionLabel,
    ResidueAffine,
)
from GenFlag.config import DEFAULT_CHAIN_TIER
from GenFlag.errors import NotAChainError, UnrepresentableChainError, ZeroVectorError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubspaceSpec:
    upto: int
    indices: frozenset[int]
    modulus: int = 1
    residues: frozenset[int] = frozenset()

    def __post_init__(self):
        if any(i < 1 or i > self.upto for i in self.indices):
            raise ValueError(f"explicit member indices must lie in 1..{self.upto}")
        if self.modulus < 1 or any(r < 0 or r >= self.modulus for r in self.residues):
            raise ValueError(f"member residues must lie in 0..{self.modulus - 1}")

    @classmethod
    def finite(cls, indices: Iterable[int]) -> SubspaceSpec:
        indices = frozenset(indices)
        return cls(max(indices, default=0), indices)

    @classmethod
    def everything(cls) -> SubspaceSpec:
        return cls(0, frozenset(), 1, frozenset({0}))

    def contains_index(self, i: int) -> bool:
        if i <= self.upto:
            return i in self.indices
        return i % self.modulus in self.residues

    def contains_residue(self, rho: int) -> bool:
        """Membership of the indices i = rho (mod M) beyond ``upto``, M a multiple of ``modulus``."""
        return rho % self.modulus in self.residues


def _is_subset(small: SubspaceSpec, big: SubspaceSpec) -> bool:
    horizon = max(small.upto, big.upto)
    if any(small.contains_index(i) and not big.contains_index(i) for i in range(1, horizon + 1)):
        return False
    modulus = math.lcm(small.modulus, big.modulus)
    return all(big.contains_residue(r) for r in range(modulus) if small.contains_residue(r))


@dataclass(frozen=True)
class ChainSpec:
    basis: BasisSpec
    members: tuple[SubspaceSpec, ...] = ()
    family: Coloring | None = None

    @property
    def horizon(self) -> int:
        """Index beyond which membership and family labels are periodic."""
        uptos = [m.upto for m in self.members]
        if self.family is not None:
            uptos.append(self.family.window_size)
        return max(uptos + [self.basis.extent, 1])

    @property
    def period(self) -> int:
        moduli = [m.modulus for m in self.members]
        if self.family is not None:
            moduli.append(self.family.tail.modulus)
        return math.lcm(*moduli) if moduli else 1


@dataclass(frozen=True)
class MembershipProfile:
    """Members (by index in the chain) containing a vector, and its family position."""

    members: frozenset[int]
    position: PositionLabel | None = None


def ordered_members(chain: ChainSpec) -> list[SubspaceSpec]:
    """Explicit members sorted by inclusion; raises when they are not a chain."""
    ordered: list[SubspaceSpec] = []
    for member in chain.members:
        slot = 0
        for existing in ordered:
            below = _is_subset(member, existing)
            above = _is_subset(existing, member)
            if below and above:
                raise NotAChainError("chain members must be pairwise distinct")
            if not below and not above:
                raise NotAChainError("two members are not comparable by inclusion")
            if above:
                slot += 1
        ordered.insert(slot, member)
    return ordered


def _depth(members: list[SubspaceSpec], contains) -> int:
    """1-based index of the first member containing the index, len + 1 if none."""
    for k, member in enumerate(members, start=1):
        if contains(member):
            return k
    return len(members) + 1


def partition_class(chain: ChainSpec, v: VectorFS) -> MembershipProfile:
    if not v:
        raise ZeroVectorError("partition classes are defined for nonzero vectors")
    n = max(chain.horizon, v.reach)
    coords = coordinates([chain.basis.vector(k) for k in range(1, n + 1)], v)
    support = [k for k, c in zip(range(1, n + 1), coords) if c]
    members = frozenset(
        index for index, member in enumerate(chain.members)
        if all(member.contains_index(i) for i in support)
    )
    position = max(chain.family.label(i) for i in support) if chain.family is not None else None
    return MembershipProfile(members, position)


def _check_family_order(family: Coloring, horizon: int,
                        period: int, depth_of_index, depth_of_residue) -> None:
    """label(i) < label(j) must imply depth(i) <= depth(j)."""
    groups: dict[int, list[tuple]] = {}
    for i in range(1, horizon + 1):
        bound = (family.label(i).tier, 0, family.label(i).offset, 0)
        groups.setdefault(depth_of_index(i), []).append((bound, bound))
    tail = family.tail
    classes = tail.refine(period).classes(horizon) if isinstance(tail, ResidueAffine) else tail.classes(horizon)
    for c in classes:
        groups.setdefault(depth_of_residue(c.residue), []).append((c.inf(), c.sup()))
    depths = sorted(groups)
    for x, lower in enumerate(depths):
        top = max(s for _, s in groups[lower])
        for upper in depths[x + 1:]:
            if top > min(i for i, _ in groups[upper]):
                raise NotAChainError(f"members at depth {lower} and {upper} cross the family order")


def fl(chain: ChainSpec) -> GeneralizedFlagSpec:
    """The unique generalized flag inducing the same partition of V as ``chain``."""
    chain.basis.validate()
    members = ordered_members(chain)
    horizon, period = chain.horizon, chain.period

    def depth_of_index(i: int) -> int:
        return _depth(members, lambda m: m.contains_index(i))

    def depth_of_residue(rho: int) -> int:
        return _depth(members, lambda m: m.contains_residue(rho))

    residue_depths = [depth_of_residue(rho) for rho in range(period)]

    if chain.family is None:
        window = {i: PositionLabel(DEFAULT_CHAIN_TIER, depth_of_index(i)) for i in range(1, horizon + 1)}
        tail = ResidueAffine(period, tuple(
            AffineResidue(DEFAULT_CHAIN_TIER, 0, k) for k in residue_depths))
        logger.debug(f"fl: {len(members)} members, no family, period {period}")
        return validate_spec(GeneralizedFlagSpec(chain.basis, Coloring.build(window, tail)))

    family = chain.family.validated()
    if isinstance(family.tail, DenseInTier) and len(set(residue_depths)) > 1:
        raise UnrepresentableChainError("periodic members cannot split a dense tail")
    _check_family_order(family, horizon, period, depth_of_index, depth_of_residue)

    if isinstance(family.tail, ResidueAffine):
        classes = family.tail.refine(period).classes(horizon)
    else:
        classes = []

    # depths met by each label carried by more than one index
    shared: dict[PositionLabel, set[int]] = {}
    for i in range(1, horizon + 1):
        shared.setdefault(family.label(i), set()).add(depth_of_index(i))
    for c in classes:
        if c.kind is ClassKind.CONSTANT:
            shared.setdefault(c.label(c.first_index), set()).add(residue_depths[c.residue])
    extra_indices: list[int] = []
    for a in list(shared):
        for c in family.tail.classes(horizon):
            j = c.first_hit(a)
            if j is not None and c.kind is not ClassKind.CONSTANT:
                shared[a].add(residue_depths[j % period])
                extra_indices.append(j)

    encoding: dict[tuple[PositionLabel, int], PositionLabel] = {}
    for a, depths in shared.items():
        if len(depths) < 2:
            continue
        ceiling = family.next_offset_above(a)
        step = (ceiling - a.offset) / len(depths) if ceiling is not None else Fraction(1)
        for rank, k in enumerate(sorted(depths)):
            encoding[(a, k)] = PositionLabel(a.tier, a.offset + rank * step)
        logger.debug(f"fl: position {a} splits into {len(depths)} positions")

    def encode(a: PositionLabel, k: int) -> PositionLabel:
        return encoding.get((a, k), a)

    if isinstance(family.tail, ResidueAffine):
        residues = []
        for c in classes:
            if c.kind is ClassKind.CONSTANT:
                label = encode(c.label(c.first_index), residue_depths[c.residue])
                residues.append(AffineResidue(label.tier, 0, label.offset))
            else:
                residues.append(AffineResidue(c.tier, c.slope, c.intercept))
        tail = ResidueAffine(period, tuple(residues))
    else:
        tail = family.tail

    reach = max([horizon] + extra_indices)
    window = {i: encode(family.label(i), depth_of_index(i)) for i in range(1, reach + 1)}
    return validate_spec(GeneralizedFlagSpec(chain.basis, Coloring.build(window, tail)))


def chain_of(spec: GeneralizedFlagSpec) -> ChainSpec:
    """The chain of all F'_a and F''_a of a spec."""
    return ChainSpec(spec.basis, (), spec.coloring)
