from .roots import find_roots, RootData
from .sigma import (
    commutes_with_action,
    EigenData,
    eigenspace_decompose,
    functor_A,
    functor_B,
    functor_B_morphism,
    projector_check,
    SigmaModule,
)
from .skew import psi_iso, PsiIso, skew_associativity_check, skew_mul, SkewAlgebra, SkewElement
