from __future__ import annotations
from dataclasses import dataclass
from typing import Any, Dict, Optional

from errors import UsageError
from linalg import block, hstack, identity, vstack, zeros
from mf import MatrixFactorization, Morphism
from .structure import StructureMaps, structure_maps


@dataclass
class ConeTriangle:
    """X --alpha--> X' --q--> C(alpha) --p--> Omega^-(X), with beta: I(X) -> C(alpha) filling the diagram."""

    alpha: Morphism
    cone: MatrixFactorization
    q: Morphism
    p: Morphism
    beta: Morphism
    maps: StructureMaps

    def check(self) -> Dict[str, Any]:
        m = self.maps
        return {
            "cone_valid": self.cone.verify().valid,
            "q_verified": self.q.verify().valid,
            "p_verified": self.p.verify().valid,
            "beta_verified": self.beta.verify().valid,
            "p_q_zero": self.p.compose(self.q).is_zero(),
            "beta_lambda_eq_q_alpha": self.beta.compose(m.lam) == self.q.compose(self.alpha),
            "p_beta_eq_eta": self.p.compose(self.beta) == m.eta,
        }


def mapping_cone(alpha: Morphism, maps: Optional[StructureMaps] = None) -> ConeTriangle:
    """C(alpha)_k on F'_k + F^_k: Delta_k = (phi'_k, (0 ... 0 alpha_k); 0, Omega^-_k)."""
    if not alpha.verify().valid:
        raise UsageError("mapping cone needs a verified morphism")
    x, y = alpha.source, alpha.target
    maps = structure_maps(x) if maps is None else maps
    d, n, n2, ring = x.d, x.n, y.n, x.ring
    hat = (d - 1) * n
    deltas = []
    for k in range(1, d + 1):
        top = hstack(zeros(ring, n2, (d - 2) * n), alpha.alpha(k))
        deltas.append(block([[y.phi(k), top], [zeros(ring, hat, n2), maps.omega_minus.phi(k)]]))
    cone = MatrixFactorization(ring, x.f, deltas)
    q = Morphism(y, cone, [vstack(identity(ring, n2), zeros(ring, hat, n2))] * d)
    p = Morphism(cone, maps.omega_minus, [hstack(zeros(ring, hat, n2), identity(ring, hat))] * d)
    beta = Morphism(
        maps.I,
        cone,
        [
            block([[alpha.alpha(k), zeros(ring, n2, hat)], [-maps.xi_col(k), identity(ring, hat)]])
            for k in range(1, d + 1)
        ],
    )
    return ConeTriangle(alpha, cone, q, p, beta, maps)
