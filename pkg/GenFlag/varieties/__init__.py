# varieties/__init__.py

from .tower import FiniteFlag, embed_step, embedding_data, flag_type, lift, truncate
from .isotropic import (
    MIDDLE,
    FormKind,
    FormSpec,
    IsotropicFlagSpec,
    default_generators,
    isotropic_ascending,
    isotropic_descending,
    isotropic_gram_schmidt,
    tau_prime,
    validate_isotropic,
    validate_isotropic_spec,
)
from .commens import CommWitness, Incommensurable, commensurable, commensurable_oracle, require_commensurable
from .group import GroupElement, mapping_element, maps_onto, stabilizer_dim
from .cells import (
    CellCoords,
    CellMap,
    NotInCell,
    apply_cell_coords,
    big_cell_coords,
    find_covering_cell,
    require_cell_coords,
)
from .picard import (
    PicElement,
    PicPresentation,
    WeightRule,
    is_projective,
    is_very_ample,
    kernel_check,
    level_map,
    pic_preimage,
    pic_presentation,
    restrict_pic,
    transition_det,
    very_ample_witness,
)
