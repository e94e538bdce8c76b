"""E-commensurability of flag specs.

Both specs are weakly compatible with E by construction, so two specs are
commensurable exactly when their tails agree, their window-only positions can be
matched in order between consecutive tail positions, and the matched positions cut
V_N in subspaces of equal dimension, N being the larger spec level.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

from GenFlag.algebra.exactlin import VectorFS, intersect_window, is_subspace
from GenFlag.algebra.flag_spec import FlagSpecBase
from GenFlag.algebra.labels import PositionLabel
from GenFlag.errors import IncommensurableError, LevelTooSmallError
from GenFlag.varieties.isotropic import IsotropicFlagSpec

logger = logging.getLogger(__name__)

TAIL_MISMATCH = "TailMismatch"
WINDOW_MISMATCH = "WindowMismatch"
DIMENSION_MISMATCH = "DimensionMismatch"


@dataclass(frozen=True)
class CommWitness:
    """φ as its finite table of window-only positions (identity elsewhere) and U = V_level."""

    correspondence: tuple[tuple[PositionLabel, PositionLabel], ...]
    level: int

    commensurable = True

    def phi(self, label: PositionLabel) -> PositionLabel:
        return dict(self.correspondence).get(label, label)

    def phi_inverse(self, label: PositionLabel) -> PositionLabel:
        return {b: a for a, b in self.correspondence}.get(label, label)


@dataclass(frozen=True)
class Incommensurable:
    reason: str
    detail: str = ""

    commensurable = False

    def error(self) -> IncommensurableError:
        return IncommensurableError(self.reason, self.detail)


def _structure_mismatch(s1: FlagSpecBase, s2: FlagSpecBase) -> str | None:
    if isinstance(s1, IsotropicFlagSpec) != isinstance(s2, IsotropicFlagSpec):
        return "one spec is isotropic and the other is not"
    if isinstance(s1, IsotropicFlagSpec) and s1.form != s2.form:
        return f"forms {s1.form.kind.value} and {s2.form.kind.value} differ"
    return None


def _tail_mismatch(s1: FlagSpecBase, s2: FlagSpecBase) -> str | None:
    structure = _structure_mismatch(s1, s2)
    if structure is not None:
        return structure
    for c1, c2 in zip(s1.colorings(), s2.colorings()):
        if c1.tail.canonical() != c2.tail.canonical():
            return "tail rules differ"
    if s1.extra_labels() != s2.extra_labels():
        return "self-paired slots carry different labels"
    return None


def _anchor_between(spec: FlagSpecBase, n: int, low: PositionLabel | None, high: PositionLabel | None) -> bool:
    """Is some tail position (carried by an index beyond level n) strictly between low and high?"""
    for coloring in spec.colorings():
        for c in coloring.tail.classes(max(n, coloring.window_size)):
            if c.meets_interval(low, high):
                return True
    return False


def _tail_labels_beyond(spec: FlagSpecBase, n: int, label: PositionLabel) -> bool:
    return any(coloring.tail.first_hit(label, max(n, coloring.window_size)) is not None
               for coloring in spec.colorings()) or label in spec.extra_labels()


def _window_only(spec: FlagSpecBase, n: int) -> list[PositionLabel]:
    return [a for a in spec.visible_labels(n) if not _tail_labels_beyond(spec, n, a)]


def match_positions(s1: FlagSpecBase, s2: FlagSpecBase, n: int) -> CommWitness | Incommensurable:
    """Tail-pinned correspondence at level n, or the reason it does not exist."""
    mismatch = _tail_mismatch(s1, s2)
    if mismatch is not None:
        return Incommensurable(TAIL_MISMATCH, mismatch)
    first, second = _window_only(s1, n), _window_only(s2, n)
    merged = sorted([(a, 0) for a in first] + [(b, 1) for b in second])
    table = []
    group: list[tuple[PositionLabel, int]] = []
    for item in merged + [None]:
        closes = item is None or bool(group) and _anchor_between(s1, n, group[-1][0], item[0])
        if closes and group:
            mine = [a for a, side in group if side == 0]
            theirs = [b for b, side in group if side == 1]
            if len(mine) != len(theirs):
                return Incommensurable(
                    WINDOW_MISMATCH,
                    f"{len(mine)} against {len(theirs)} window positions between tail positions near {group[0][0]}")
            table.extend(zip(mine, theirs))
            group = []
        if item is not None:
            group.append(item)
    correspondence = tuple((a, b) for a, b in table if a != b)
    return CommWitness(correspondence, n)


def _count_below(spec: FlagSpecBase, n: int, label: PositionLabel, strict: bool) -> int:
    return sum(1 for a in spec.labels_at(n).values() if (a < label if strict else a <= label))


def _test_positions(s1: FlagSpecBase, s2: FlagSpecBase, n: int, witness: CommWitness) -> list[PositionLabel]:
    found = set(s1.visible_labels(n)) | {witness.phi_inverse(b) for b in s2.visible_labels(n)}
    return sorted(found)


def commensurable(s1: FlagSpecBase, s2: FlagSpecBase) -> CommWitness | Incommensurable:
    """Decides E-commensurability; a witness carries φ and the level N with U = V_N."""
    n = max(s1.n_spec, s2.n_spec)
    found = match_positions(s1, s2, n)
    if not found.commensurable:
        logger.info(f"not commensurable: {found.reason}: {found.detail}")
        return found
    for a in _test_positions(s1, s2, n, found):
        for strict in (True, False):
            d1 = _count_below(s1, n, a, strict)
            d2 = _count_below(s2, n, found.phi(a), strict)
            if d1 != d2:
                kind = "F'" if strict else "F''"
                result = Incommensurable(
                    DIMENSION_MISMATCH, f"dim {kind}_{a} ∩ V_{n} is {d1} against {d2}")
                logger.info(f"not commensurable: {result.reason}: {result.detail}")
                return result
    logger.debug(f"commensurable at level {n} with {len(found.correspondence)} moved positions")
    return found


def _truncated_spaces(spec: FlagSpecBase, level: int) -> dict[PositionLabel, tuple]:
    return {a: (spec.space(a, level, True), spec.space(a, level)) for a in spec.visible_labels(level)}


def _agree_modulo_window(f_spaces: tuple, g_spaces: tuple, n: int, s1: FlagSpecBase, s2: FlagSpecBase) -> bool:
    """F ⊆ G + V_n, G ⊆ F + V_n and dim F ∩ V_n = dim G ∩ V_n, for the F' and F'' pair."""
    window = [VectorFS.unit(k) for k in s1.slots(n)]
    for f, g in zip(f_spaces, g_spaces):
        if not is_subspace(f, list(g) + window) or not is_subspace(g, list(f) + window):
            return False
        if len(intersect_window(f, n, s1.layout)) != len(intersect_window(g, n, s2.layout)):
            return False
    return True


def commensurable_oracle(s1: FlagSpecBase, s2: FlagSpecBase, n: int) -> bool:
    """Conditions (i) and (ii) with U = V_n, by linear algebra at a level beyond n.

    φ is read off the spaces: the partner of a position of s1 is the position of s2
    with the same dimensions of F' and F'' at that level (there is at most one), and
    the two must agree modulo V_n. The table has to be an order-preserving bijection
    fixing tail positions, and no tail position may sit between a window position
    and its image.
    """
    minimum = max(s1.n_spec, s2.n_spec)
    if n < minimum:
        raise LevelTooSmallError(n, minimum)
    if _tail_mismatch(s1, s2) is not None:
        return False
    period = max(c.tail.modulus for c in s1.colorings())
    level = n + 2 * period
    first, second = _truncated_spaces(s1, level), _truncated_spaces(s2, level)
    by_dims = {(len(strict), len(wide)): b for b, (strict, wide) in second.items()}
    phi = {}
    for a, spaces in first.items():
        b = by_dims.get((len(spaces[0]), len(spaces[1])))
        if b is None or not _agree_modulo_window(spaces, second[b], n, s1, s2):
            return False
        phi[a] = b
    images = list(phi.values())
    if len(images) != len(second) or any(x >= y for x, y in zip(images, images[1:])):
        return False
    for a, b in phi.items():
        if a == b:
            continue
        if _tail_labels_beyond(s1, n, a) or _tail_labels_beyond(s2, n, b):
            return False
        if _anchor_between(s1, n, min(a, b), max(a, b)):
            return False
    return True


def require_commensurable(s1: FlagSpecBase, s2: FlagSpecBase) -> CommWitness:
    found = commensurable(s1, s2)
    if not found.commensurable:
        raise found.error()
    return found
