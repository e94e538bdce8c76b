"""Forms of types B, C and D and the flags isotropic with respect to them.

Slots: e_i is +i, e^i is -i and the self-paired vector e_0 of type B is 0. The
standard pairing is w(e_i, e^j) = δ_ij, all other slot pairs vanish except
w(e_0, e_0) = 1. Kind C is skew-symmetric, kinds B and D are symmetric.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

import sympy as sp

from GenFlag.algebra.basis import BasisSpec
from GenFlag.algebra.exactlin import SlotLayout, VectorFS, annihilator, same_span, span_basis
from GenFlag.algebra.flag_spec import FlagSpecBase
from GenFlag.algebra.labels import Coloring, PositionLabel, ResidueAffine
from GenFlag.errors import (
    DegeneratePrefixError,
    FieldObstructionError,
    NonIsotropicBasisError,
)
from GenFlag.varieties.tower import FiniteFlag, embed_step, truncate

logger = logging.getLogger(__name__)

MIDDLE = PositionLabel(0)


class FormKind(Enum):
    B = "B"
    C = "C"
    D = "D"


@dataclass(frozen=True)
class FormSpec:
    kind: FormKind

    @property
    def symmetric(self) -> bool:
        return self.kind is not FormKind.C

    @property
    def layout(self) -> SlotLayout:
        return SlotLayout.CENTERED if self.kind is FormKind.B else SlotLayout.MIRRORED

    def slot_pairing(self, k: int) -> tuple[int, Fraction]:
        """The slot j with w(e_k, e_j) != 0, and that value."""
        if k == 0:
            return 0, Fraction(1)
        if k > 0 or self.symmetric:
            return -k, Fraction(1)
        return -k, Fraction(-1)


def form_eval(w: FormSpec, u: VectorFS, v: VectorFS) -> Fraction:
    total = Fraction(0)
    for k, c in u.items():
        j, value = w.slot_pairing(k)
        total += c * value * v[j]
    return total


def pairing_functional(w: FormSpec, u: VectorFS) -> VectorFS:
    """The vector f with f·x = w(u, x) for every x."""
    return VectorFS.of((w.slot_pairing(k)[0], c * w.slot_pairing(k)[1]) for k, c in u.items())


def perp_truncated(gens: Sequence[VectorFS], n: int, w: FormSpec) -> tuple[VectorFS, ...]:
    keys = w.layout.keys(n)
    functionals = [pairing_functional(w, g) for g in gens if g]
    return span_basis(annihilator(functionals, keys), keys)


@dataclass(frozen=True)
class IsotropicFlagSpec(FlagSpecBase):
    """A flag given by a w-isotropic basis and labels of e_i, e^i (and e_0).

    ``lower`` labels e^i; when omitted it mirrors ``upper`` (label(e^i) = -label(e_i)).
    """

    form: FormSpec
    basis: BasisSpec
    upper: Coloring
    lower: Coloring | None = None
    center: PositionLabel = field(default=MIDDLE)

    @property
    def layout(self) -> SlotLayout:
        return self.form.layout

    @property
    def lower_coloring(self) -> Coloring:
        return self.lower if self.lower is not None else self.upper.negated()

    @property
    def n_spec(self) -> int:
        return max(1, self.upper.window_size, self.lower_coloring.window_size, self.basis.extent)

    def slot_label(self, slot: int) -> PositionLabel:
        if slot > 0:
            return self.upper.label(slot)
        if slot < 0:
            return self.lower_coloring.label(-slot)
        return self.center

    def colorings(self) -> tuple[Coloring, ...]:
        return (self.upper, self.lower_coloring)

    def extra_labels(self) -> tuple[PositionLabel, ...]:
        return (self.center,) if self.form.kind is FormKind.B else ()


def isotropic_ascending(kind: FormKind = FormKind.C) -> IsotropicFlagSpec:
    """label(e_i) = (0, i), label(e^i) = (0, -i)."""
    return IsotropicFlagSpec(FormSpec(kind), BasisSpec(), Coloring.build({}, ResidueAffine.linear(0, 1)))


def isotropic_descending(kind: FormKind = FormKind.C) -> IsotropicFlagSpec:
    """label(e_i) = (0, -i), label(e^i) = (0, i)."""
    return IsotropicFlagSpec(FormSpec(kind), BasisSpec(), Coloring.build({}, ResidueAffine.linear(0, -1)))


def standard_pairing_failure(spec: IsotropicFlagSpec) -> str | None:
    """Describes the first slot pair where L does not pair like E, if any."""
    keys = spec.layout.keys(max(spec.basis.extent, 1))
    w = spec.form
    for a in keys:
        for b in keys:
            expected = form_eval(w, VectorFS.unit(a), VectorFS.unit(b))
            found = form_eval(w, spec.basis.vector(a), spec.basis.vector(b))
            if found != expected:
                return f"w(l_{a}, l_{b}) = {found}, expected {expected}"
    return None


def validate_isotropic_spec(spec: IsotropicFlagSpec) -> IsotropicFlagSpec:
    """Checks the basis and returns the spec with canonical colorings."""
    spec.basis.validate()
    failure = standard_pairing_failure(spec)
    if failure is not None:
        raise NonIsotropicBasisError(failure)
    upper = spec.upper.validated()
    lower = spec.lower.validated() if spec.lower is not None else None
    if lower is not None and lower == upper.negated().canonical():
        lower = None
    return IsotropicFlagSpec(spec.form, spec.basis, upper, lower, spec.center)


def mirror_failure(spec: IsotropicFlagSpec) -> str | None:
    upper, lower = spec.upper.canonical(), spec.lower_coloring.canonical()
    horizon = max(upper.window_size, lower.window_size)
    for i in range(1, horizon + 1):
        if lower.label(i) != -upper.label(i):
            return f"label(e^{i}) = {lower.label(i)} is not the mirror of label(e_{i}) = {upper.label(i)}"
    if lower.tail != upper.tail.negated().canonical():
        return "the tail of e^i labels is not the mirror of the tail of e_i labels"
    if spec.form.kind is FormKind.B and spec.center != -spec.center:
        return f"label(e_0) = {spec.center} is not self-dual"
    return None


@dataclass(frozen=True)
class IsotropicReport:
    ok: bool
    failure: str | None
    tau_prime: tuple[VectorFS, ...]
    middle_dim: int


def tau_prime(spec: IsotropicFlagSpec, n: int) -> tuple[tuple[VectorFS, ...], int]:
    """Basis of F'_τ ∩ V_n and dim (F''_τ/F'_τ) at level n."""
    spec.check_level(n)
    labels = spec.labels_at(n)
    below = [spec.basis.vector(k) for k, a in labels.items() if a < MIDDLE]
    middle = sum(1 for a in labels.values() if a == MIDDLE)
    return span_basis(below, spec.slots(n)), middle


def validate_isotropic(spec: IsotropicFlagSpec, n: int) -> IsotropicReport:
    """Mirror symmetry, τ and (F')^⊥ = τ(F)'' on every position visible at level n."""
    spec.check_level(n)
    prime, middle = tau_prime(spec, n)
    failure = standard_pairing_failure(spec) or mirror_failure(spec)
    if failure is None:
        visible = spec.visible_labels(n)
        for a in visible:
            if -a not in visible:
                failure = f"τ does not map position {a} to a position"
                break
            perp = perp_truncated(spec.space(a, n, strict=True), n, spec.form)
            if not same_span(perp, spec.space(-a, n)):
                failure = f"(F')^⊥ differs from τ(F)'' at position {a}"
                break
    if failure is None and spec.form.kind is FormKind.C and middle % 2:
        failure = f"self-dual block has odd dimension {middle}"
    if failure is not None:
        logger.warning(f"isotropic check failed at level {n}: {failure}")
    return IsotropicReport(failure is None, failure, prime, middle)


def truncate_isotropic(spec: IsotropicFlagSpec, n: int) -> FiniteFlag:
    return truncate(spec, n)


def embed_step_isotropic(flag: FiniteFlag, spec: IsotropicFlagSpec) -> FiniteFlag:
    """Inserts e_{n+1} at its label and e^{n+1} at the mirrored one."""
    return embed_step(flag, spec)


@dataclass(frozen=True)
class GramSchmidtResult:
    pairs: tuple[tuple[VectorFS, VectorFS], ...]
    center: VectorFS | None = None


def _orthogonalize(w: FormSpec, g: VectorFS, pairs: list[tuple[VectorFS, VectorFS]]) -> VectorFS:
    out = g
    for e, e_dual in pairs:
        out = out - e_dual * form_eval(w, e, g) - e * form_eval(w, g, e_dual)
    return out


def _rational_sqrt(q: Fraction) -> Fraction | None:
    root = sp.sqrt(sp.Rational(q.numerator, q.denominator))
    if not root.is_Rational:
        return None
    return Fraction(int(root.p), int(root.q))


def isotropic_gram_schmidt(gs: Sequence[VectorFS], spec: IsotropicFlagSpec,
                           center: VectorFS | None = None) -> GramSchmidtResult:
    """Turns generators g_1, g_2, ... into pairs (e_k, e^k) with standard pairings.

    e_{k} = g_k minus its pairings against the previous pairs; the partner e^k
    comes from the basis vectors of the mirrored position, rescaled so that
    w(e_k, e^k) = 1, then orthogonalized the same way. For type B, ``center`` is
    orthogonalized last and normalized to w(e_0, e_0) = 1.
    """
    w = spec.form
    level = max([spec.n_spec] + [g.reach for g in gs])
    if w.kind is FormKind.C and tau_prime(spec, level)[1] % 2:
        raise DegeneratePrefixError("self-dual block of a skew form must be even dimensional")
    pairs: list[tuple[VectorFS, VectorFS]] = []
    for g in gs:
        e = _orthogonalize(w, g, pairs)
        if not e:
            raise DegeneratePrefixError(f"generator {g} depends on the previous ones")
        if w.symmetric and form_eval(w, e, e) != 0:
            raise DegeneratePrefixError(f"generator {g} is not isotropic after orthogonalization")
        position = spec.position_of(e)
        n = max(spec.n_spec, e.reach)
        partner = None
        for k, a in spec.labels_at(n).items():
            candidate = spec.basis.vector(k)
            value = form_eval(w, e, candidate)
            if a == -position and value != 0:
                partner = candidate * (1 / value)
                break
        if partner is None:
            raise DegeneratePrefixError(f"no vector at position {-position} pairs with {e}")
        e_dual = _orthogonalize(w, partner, pairs)
        if w.symmetric:
            e_dual = e_dual - e * (form_eval(w, e_dual, e_dual) / 2)
        logger.debug(f"gram-schmidt pair {len(pairs) + 1}: {e} / {e_dual}")
        pairs.append((e, e_dual))
    normalized = None
    if center is not None:
        if w.kind is not FormKind.B:
            raise DegeneratePrefixError(f"kind {w.kind.value} has no self-paired vector")
        e0 = _orthogonalize(w, center, pairs)
        square = form_eval(w, e0, e0)
        if square == 0:
            raise DegeneratePrefixError("the self-paired generator is isotropic")
        root = _rational_sqrt(square)
        if root is None:
            raise FieldObstructionError(f"w(e_0, e_0) = {square} is not a square in Q")
        normalized = e0 * (1 / root)
    return GramSchmidtResult(tuple(pairs), normalized)


def default_generators(spec: IsotropicFlagSpec, n: int) -> tuple[list[VectorFS], VectorFS | None]:
    """Negative-half basis vectors, then the e_i of the self-dual block, then e_0."""
    labels = spec.labels_at(n)
    lower = [spec.basis.vector(k) for k, a in sorted(labels.items(), key=lambda x: (x[1], x[0])) if a < MIDDLE]
    middle = [spec.basis.vector(k) for k, a in sorted(labels.items()) if a == MIDDLE and k > 0]
    center = spec.basis.vector(0) if spec.form.kind is FormKind.B else None
    return lower + middle, center
