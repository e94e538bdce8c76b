from .exactlin import MatrixQ, SlotLayout, VectorFS, det, intersect_window, rank
from .labels import (
    AffineResidue,
    Coloring,
    DenseInTier,
    PositionLabel,
    ResidueAffine,
    TailRule,
    calkin_wilf,
)
from .basis import BasisSpec
from .flag_spec import FlagSpecBase, GeneralizedFlagSpec, validate_spec
from .chains import ChainSpec, MembershipProfile, SubspaceSpec, chain_of, fl, partition_class
from .flag_checks import compatible_basis_finite, dual, is_flag, is_maximal, reconstruct_check
from .fixtures import asc, dense, grassmannian, zeta
