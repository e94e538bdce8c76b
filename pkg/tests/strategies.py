"""Hypothesis strategies for specs, chains, commensurable pairs and weights."""
from fractions import Fraction

from hypothesis import strategies as st

from GenFlag.algebra.basis import BasisSpec
from GenFlag.algebra.chains import ChainSpec, SubspaceSpec
from GenFlag.algebra.exactlin import MatrixQ, VectorFS, is_independent
from GenFlag.algebra.flag_spec import GeneralizedFlagSpec, validate_spec
from GenFlag.algebra.labels import AffineResidue, Coloring, DenseInTier, PositionLabel, ResidueAffine
from GenFlag.varieties.cells import CellCoords, CellMap
from GenFlag.varieties.isotropic import FormKind, FormSpec, IsotropicFlagSpec, validate_isotropic_spec
from GenFlag.varieties.picard import PicElement, WeightRule

MAX_WINDOW = 6

TAILS = [
    ResidueAffine.linear(0, 1),
    ResidueAffine.linear(1, -1),
    ResidueAffine.constant(PositionLabel(0, 2)),
    ResidueAffine(2, (AffineResidue(1, Fraction(-1, 2), 0), AffineResidue(0, Fraction(1, 2), Fraction(1, 2)))),
    ResidueAffine(2, (AffineResidue(0, 0, Fraction(1, 2)), AffineResidue(0, 1, 0))),
    DenseInTier(0),
    DenseInTier(1, descending=True),
]

# Tails without constant classes or dense tiers, where every position is a single index.
FLAG_TAILS = [ResidueAffine.linear(0, 1), ResidueAffine.linear(1, -1)]

LABELS = [PositionLabel(t, Fraction(p, q)) for t in (0, 1) for p, q in ((-1, 1), (1, 2), (1, 1), (3, 1), (7, 2))]

coefficients = st.integers(min_value=-2, max_value=2).map(Fraction)


@st.composite
def unitriangular_bases(draw, size: int) -> BasisSpec:
    """l_k = e_k + sum of earlier e_j, so the replacement block has determinant 1."""
    replacements = {}
    for k in range(2, size + 1):
        entries = {k: Fraction(1)}
        for j in range(1, k):
            entries[j] = draw(coefficients)
        replacements[k] = VectorFS.of(entries)
    return BasisSpec.build(replacements)


@st.composite
def windows(draw, labels=LABELS) -> dict:
    size = draw(st.integers(min_value=0, max_value=MAX_WINDOW))
    return {i: draw(st.sampled_from(labels)) for i in range(1, size + 1)}


@st.composite
def flag_specs(draw, tails=TAILS) -> GeneralizedFlagSpec:
    window = draw(windows())
    basis = draw(unitriangular_bases(max(len(window), 1))) if draw(st.booleans()) else BasisSpec()
    tail = draw(st.sampled_from(tails))
    return validate_spec(GeneralizedFlagSpec(basis, Coloring.build(window, tail)))


@st.composite
def commensurable_pairs(draw):
    """The same coloring presented by two bases, hence commensurable."""
    window = draw(windows())
    tail = draw(st.sampled_from(TAILS))
    size = max(len(window), 1)
    first = validate_spec(GeneralizedFlagSpec(draw(unitriangular_bases(size)), Coloring.build(window, tail)))
    second = validate_spec(GeneralizedFlagSpec(draw(unitriangular_bases(size)), Coloring.build(window, tail)))
    return first, second


@st.composite
def spec_pairs(draw):
    """Two specs with the same tail rule; commensurable or not."""
    tail = draw(st.sampled_from(TAILS))
    first = validate_spec(GeneralizedFlagSpec(BasisSpec(), Coloring.build(draw(windows()), tail)))
    second = validate_spec(GeneralizedFlagSpec(draw(unitriangular_bases(MAX_WINDOW)), Coloring.build(draw(windows()), tail)))
    return first, second


@st.composite
def chains(draw) -> ChainSpec:
    """Nested finite members span{e_1..e_k} for increasing k, possibly with a periodic part."""
    cuts = sorted(set(draw(st.lists(st.integers(min_value=1, max_value=MAX_WINDOW), max_size=3))))
    members = [SubspaceSpec.finite(range(1, k + 1)) for k in cuts]
    if draw(st.booleans()):
        top = cuts[-1] if cuts else 0
        members.append(SubspaceSpec(top, frozenset(range(1, top + 1)), 2, frozenset({1})))
    return ChainSpec(BasisSpec(), tuple(members))


nonzero_vectors = st.dictionaries(
    st.integers(min_value=1, max_value=MAX_WINDOW + 2), coefficients, min_size=1, max_size=4
).map(VectorFS.of).filter(bool)


@st.composite
def pic_elements(draw, spec) -> PicElement:
    """Explicit weights on a few visible positions plus an affine rule mod 2 (constant where needed)."""
    n = spec.n_spec + 2
    visible = spec.visible_labels(n)
    explicit = {a: draw(st.integers(-3, 3)) for a in draw(st.lists(st.sampled_from(visible), max_size=3))}
    has_constant = any(c.kind.value in ("constant", "dense") for c in spec.tail_classes())
    slopes = st.just(0) if has_constant else st.integers(-2, 2)
    if has_constant:
        v = draw(st.integers(-3, 3))
        rule = WeightRule(2, ((0, v), (0, v)))
    else:
        rule = WeightRule(2, tuple((draw(slopes), draw(st.integers(-3, 3))) for _ in range(2)))
    return PicElement.build(spec, explicit, rule)


# Tails with a label separating the window labels of LABELS into their two gaps.
SEPARATED_TAILS = [
    (ResidueAffine.constant(PositionLabel(0, 2)), PositionLabel(0, 2)),
    (ResidueAffine.linear(1, -1), PositionLabel(1, -2)),
]


@st.composite
def commensurable_triples(draw):
    """Three specs whose window labels are moved, in order, inside the gaps of one tail."""
    tail, separator = draw(st.sampled_from(SEPARATED_TAILS))
    window = draw(windows())
    size = max(len(window), 1)
    specs = []
    for _ in range(3):
        relabel = {}
        for below in (True, False):
            used = sorted({a for a in window.values() if (a < separator) is below})
            pool = [a for a in LABELS if (a < separator) is below]
            chosen = draw(st.lists(st.sampled_from(pool), min_size=len(used), max_size=len(used), unique=True))
            relabel.update(zip(used, sorted(chosen)))
        moved = {i: relabel[a] for i, a in window.items()}
        specs.append(validate_spec(GeneralizedFlagSpec(draw(unitriangular_bases(size)), Coloring.build(moved, tail))))
    return tuple(specs)


@st.composite
def invertible_bases(draw, size: int = 4) -> BasisSpec:
    """Arbitrary bases of V_size, E beyond it."""
    rows = st.lists(coefficients, min_size=size, max_size=size)
    vectors = draw(st.lists(rows, min_size=size, max_size=size).map(
        lambda m: [VectorFS.of(zip(range(1, size + 1), row)) for row in m]).filter(is_independent))
    return BasisSpec.build(dict(zip(range(1, size + 1), vectors)))


@st.composite
def cell_coordinates(draw, reference: GeneralizedFlagSpec, n: int) -> CellCoords:
    """Random Φ at level n: one map from F' into the slots of each visible position."""
    labels = reference.labels_at(n)
    maps = []
    for a in reference.visible_labels(n):
        block = [k for k, b in labels.items() if b == a]
        below = [k for k, b in labels.items() if b < a]
        if not below:
            continue
        rows = draw(st.lists(st.lists(coefficients, min_size=len(below), max_size=len(below)),
                             min_size=len(block), max_size=len(block)))
        if any(c for row in rows for c in row):
            maps.append(CellMap(a, tuple(below), tuple(block), MatrixQ.from_rows(rows)))
    return CellCoords(tuple(maps), n)


def _paired_matrix(draw, size: int, symmetric: bool) -> dict:
    entries = {}
    for i in range(1, size + 1):
        for j in range(i, size + 1):
            c = draw(coefficients) if symmetric or i != j else Fraction(0)
            entries[i, j] = c
            entries[j, i] = c if symmetric else -c
    return entries


@st.composite
def sheared_isotropic_specs(draw, kind: FormKind, size: int = 3) -> IsotropicFlagSpec:
    """The ascending isotropic coloring on the image of E under two shears.

    e_i -> e_i + sum_j S_ji e^j, then e^i -> e^i + sum_j T_ji e_j. Both preserve w when
    S and T are symmetric for the skew form and skew-symmetric for the symmetric ones.
    """
    symmetric = kind is FormKind.C
    s = _paired_matrix(draw, size, symmetric)
    t = _paired_matrix(draw, size, symmetric)
    keys = range(1, size + 1)

    def raise_lower(v: VectorFS) -> VectorFS:
        out = v
        for k, c in v.items():
            if k < 0:
                out = out + VectorFS.of((j, t[j, -k] * c) for j in keys)
        return out

    vectors = {}
    for i in keys:
        vectors[i] = raise_lower(VectorFS.unit(i) + VectorFS.of((-j, s[j, i]) for j in keys))
        vectors[-i] = raise_lower(VectorFS.unit(-i))
    basis = BasisSpec.build(vectors)
    return validate_isotropic_spec(IsotropicFlagSpec(FormSpec(kind), basis, Coloring.build({}, ResidueAffine.linear(0, 1))))


@st.composite
def admissible_prefixes(draw, spec: IsotropicFlagSpec, size: int = 3) -> list[VectorFS]:
    """g_k = l^i plus multiples of the l^j below it, taken in increasing label order."""
    prefix = []
    for i in range(size, 0, -1):
        g = spec.basis.vector(-i)
        for j in range(i + 1, size + 1):
            g = g + spec.basis.vector(-j) * draw(coefficients)
        prefix.append(g)
    return prefix
