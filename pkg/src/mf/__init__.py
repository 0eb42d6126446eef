from .factorization import (
    CyclicIndex,
    MatrixFactorization,
    MFCheck,
    mf_shift,
    mf_sum,
    mf_verify,
    min_gens,
    proj_P,
    proj_sum,
    theta,
    zero_mf,
)
from .morphism import (
    is_admissible_epi,
    is_admissible_mono,
    Morphism,
    morphism_compose,
    morphism_verify,
    MorphismCheck,
)
