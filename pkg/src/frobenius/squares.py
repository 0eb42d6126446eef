from __future__ import annotations
from dataclasses import dataclass
from typing import Any, Dict, List

from errors import UsageError
from linalg import block, direct_sum, EXACT, hstack, identity, left_reduce, PivotPolicy, PolyMatrix, right_reduce, vstack, zeros
from mf import MatrixFactorization, Morphism


def _mf_holds(x: MatrixFactorization, policy: PivotPolicy) -> bool:
    target = identity(x.ring, x.n).scale(x.f)
    return all(policy.same(x.rotation_product(k), target) for k in range(1, x.d + 1))


def _morphism_holds(a: Morphism, policy: PivotPolicy) -> bool:
    src, tgt = a.source, a.target
    return all(policy.same(a.alpha(k) @ src.phi(k), tgt.phi(k) @ a.alpha(k + 1)) for k in range(1, a.d + 1))


@dataclass
class CompletedSquare:
    """A commuting square: for a pushout side o given == top o other, for a pullback given o side == other o top."""

    kind: str
    given: Morphism
    other: Morphism
    corner: MatrixFactorization
    side: Morphism
    top: Morphism
    policy: PivotPolicy = EXACT

    def check(self) -> Dict[str, Any]:
        pol = self.policy
        if self.kind == "pushout":
            lhs, rhs = self.side.compose(self.given), self.top.compose(self.other)
        else:
            lhs, rhs = self.given.compose(self.side), self.other.compose(self.top)
        commutes = all(pol.same(a, b) for a, b in zip(lhs.components, rhs.components))
        return {
            "kind": self.kind,
            "corner_valid": _mf_holds(self.corner, pol),
            "side_verified": _morphism_holds(self.side, pol),
            "top_verified": _morphism_holds(self.top, pol),
            "commutes": commutes,
            "rank": self.corner.n,
            **pol.describe(),
        }


def _at(seq: List[PolyMatrix], k: int) -> PolyMatrix:
    return seq[(k - 1) % len(seq)]


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise UsageError(message)


def pushout(q: Morphism, beta: Morphism, policy: PivotPolicy = EXACT) -> CompletedSquare:
    """Push the admissible mono q: X >-> Y out along beta: X -> X'.

    With L_k q_k = (1; 0), L_j psi_j L_{j+1}^-1 = (phi_j B_j; 0 D_j) and the corner is
    chi_j = (phi'_j, beta_j B_j; 0, D_j) of rank n' + m - n.
    """
    _require(q.source == beta.source, "pushout needs q and beta with a common source")
    _require(q.verify().valid and beta.verify().valid, "pushout needs verified morphisms")
    _require(q.is_admissible_mono(), "pushout needs an admissible monomorphism")
    x, y, x2 = q.source, q.target, beta.target
    d, n, m, n2, ring = x.d, x.n, y.n, x2.n, x.ring
    reductions = [left_reduce(q.alpha(k), policy) for k in range(1, d + 1)]
    L, Linv = [r[0] for r in reductions], [r[1] for r in reductions]
    tail = list(range(n, m))
    chis = []
    for j in range(1, d + 1):
        psi = policy.clean_matrix(_at(L, j) @ y.phi(j) @ _at(Linv, j + 1))
        b = psi.submatrix(range(n), tail)
        dd = psi.submatrix(tail, tail)
        chis.append(policy.clean_matrix(block([[x2.phi(j), beta.alpha(j) @ b], [zeros(ring, m - n, n2), dd]])))
    corner = MatrixFactorization(ring, x.f, chis)
    side = Morphism(
        y, corner, [policy.clean_matrix(direct_sum(beta.alpha(k), identity(ring, m - n)) @ _at(L, k)) for k in range(1, d + 1)]
    )
    top = Morphism(x2, corner, [vstack(identity(ring, n2), zeros(ring, m - n, n2))] * d)
    return CompletedSquare("pushout", q, beta, corner, side, top, policy)


def pullback(p: Morphism, beta: Morphism, policy: PivotPolicy = EXACT) -> CompletedSquare:
    """Pull the admissible epi p: Y ->> X' back along beta: X -> X'.

    With p_k R_k = (1 0), R_j^-1 psi_j R_{j+1} = (phi'_j 0; C_j D_j) and the corner is
    chi_j = (phi_j, 0; C_j beta_{j+1}, D_j) of rank n + m - n'.
    """
    _require(p.target == beta.target, "pullback needs p and beta with a common target")
    _require(p.verify().valid and beta.verify().valid, "pullback needs verified morphisms")
    _require(p.is_admissible_epi(), "pullback needs an admissible epimorphism")
    y, x2, x = p.source, p.target, beta.source
    d, n, m, n2, ring = x.d, x.n, y.n, x2.n, x.ring
    reductions = [right_reduce(p.alpha(k), policy) for k in range(1, d + 1)]
    R, Rinv = [r[0] for r in reductions], [r[1] for r in reductions]
    tail = list(range(n2, m))
    chis = []
    for j in range(1, d + 1):
        psi = policy.clean_matrix(_at(Rinv, j) @ y.phi(j) @ _at(R, j + 1))
        c = psi.submatrix(tail, range(n2))
        dd = psi.submatrix(tail, tail)
        chis.append(policy.clean_matrix(block([[x.phi(j), zeros(ring, n, m - n2)], [c @ beta.alpha(j + 1), dd]])))
    corner = MatrixFactorization(ring, x.f, chis)
    side = Morphism(
        corner, y, [policy.clean_matrix(_at(R, k) @ direct_sum(beta.alpha(k), identity(ring, m - n2))) for k in range(1, d + 1)]
    )
    top = Morphism(corner, x, [hstack(identity(ring, n), zeros(ring, n, m - n2))] * d)
    return CompletedSquare("pullback", p, beta, corner, side, top, policy)
