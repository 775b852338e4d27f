"""Ergotropic gap of tripartite d x d x d states and the separability bounds on it."""

from .bounds import (
    ENTANGLED,
    INCONCLUSIVE,
    WitnessVerdict,
    bound_M,
    bound_Y,
    bound_Z,
    fixed_operator_witness,
    majorizes,
    nielsen_kempe_check,
    separable_bound,
    witness,
)
from .ergotropy import (
    GapReport,
    ergotropic_gap,
    global_ergotropy,
    local_ergotropy,
    passive_energy,
    passive_state,
)
from .gallery import (
    FamilySpec,
    build,
    classical_ghz_diag,
    ghz,
    ghz_colored_noise,
    ghz_w_superposition,
    ghz_white_noise,
    product_mixture,
    random_mixed,
    random_pure,
    w_state,
)
from .ladder import LadderSpec, SlotTable, decompose_level, degeneracy, slot_table
from .state import DensityMatrix, from_pure, global_spectrum, marginal_spectrum, mix

__version__ = "0.1.0"
