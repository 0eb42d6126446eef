from .algebra import associativity_check, eij_factorization, EijChain, GammaAlgebra, GammaElement, gamma_mul, gamma_z_power
from .module import functor_F, functor_F_morphism, functor_H, GammaModule, regular_module, resolution_image
