from __future__ import annotations
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from errors import DomainError, UsageError
from linalg import block, direct_sum, identity, PolyMatrix, residue_rank, zeros
from mf import MatrixFactorization, Morphism
from ring import Poly, PolyRing
from .roots import RootData


@dataclass
class SigmaModule:
    """A module over R[sigma] free over S, given by the actions Zmat of z and Smat of sigma."""

    ring: PolyRing
    f: Poly
    roots: RootData
    zmat: PolyMatrix
    smat: PolyMatrix

    def __post_init__(self) -> None:
        if self.zmat.shape != self.smat.shape or not self.zmat.is_square():
            raise UsageError(f"z and sigma act by {self.zmat.shape} and {self.smat.shape} matrices")
        if self.ring.field != self.roots.field:
            raise UsageError(f"module over {self.ring.field} with roots in {self.roots.field}")

    @property
    def rank(self) -> int:
        return self.zmat.rows

    def check(self) -> Dict[str, bool]:
        d, n, omega = self.roots.d, self.rank, self.roots.omega
        ident = identity(self.ring, n)
        s_power, z_power = ident, ident
        for _ in range(d):
            s_power = s_power @ self.smat
            z_power = z_power @ self.zmat
        out = {
            "sigma_order": s_power == ident,
            "z_relation": z_power == ident.scale(-self.f),
            "commutation": self.smat @ self.zmat == (self.zmat @ self.smat).scale(omega),
        }
        out["valid"] = all(out.values())
        return out


def _require_field(x: MatrixFactorization, roots: RootData) -> None:
    if x.field != roots.field:
        raise UsageError(f"factorization over {x.field}, roots in {roots.field}; reduce it mod {roots.p} first")


def functor_B(x: MatrixFactorization, roots: RootData) -> SigmaModule:
    """F_d + ... + F_1; z sends x_{k+1} to mu^-1 phi_k(x_{k+1}) and sigma scales F_i by omega^{d-i}."""
    _require_field(x, roots)
    d, n, ring, fld = x.d, x.n, x.ring, x.field
    if d != roots.d:
        raise UsageError(f"factorization has d={d}, roots are for d={roots.d}")
    mu_inv = fld.inv(roots.mu)
    z = zeros(ring, n, n)

    def pos(k: int) -> int:
        return d - k

    grid = [[z] * d for _ in range(d)]
    for k in range(1, d + 1):
        grid[pos(k)][pos(int(x.idx(k + 1)))] = x.phi(k).scale(mu_inv)
    zmat = block(grid)
    smat = direct_sum(*[identity(ring, n).scale(fld.power(roots.omega, d - i)) for i in range(d, 0, -1)])
    return SigmaModule(ring, x.f, roots, zmat, smat)


def functor_B_morphism(alpha: Morphism) -> PolyMatrix:
    return direct_sum(*[alpha.alpha(k) for k in range(alpha.d, 0, -1)])


def commutes_with_action(source: SigmaModule, target: SigmaModule, matrix: PolyMatrix) -> bool:
    return matrix @ source.zmat == target.zmat @ matrix and matrix @ source.smat == target.smat @ matrix


@dataclass
class EigenData:
    projectors: List[PolyMatrix]
    ranks: List[int]

    def to_dict(self) -> Dict[str, Any]:
        return {"ranks": self.ranks}


def eigenspace_decompose(module: SigmaModule) -> EigenData:
    """pi_k = (1/d) sum_i omega^{-ik} Smat^i projects onto the omega^k eigenspace."""
    roots, ring, fld = module.roots, module.ring, module.ring.field
    d, n = roots.d, module.rank
    if d % fld.characteristic == 0:
        raise DomainError(f"characteristic {fld.characteristic} divides d = {d}")
    inv_d = fld.inv(fld.elem(d))
    powers = [identity(ring, n)]
    for _ in range(1, d):
        powers.append(powers[-1] @ module.smat)
    projectors = []
    for k in range(d):
        total = zeros(ring, n, n)
        for i in range(d):
            total = total + powers[i].scale(fld.power(roots.omega, -i * k))
        projectors.append(total.scale(inv_d))
    ranks = [residue_rank(pi) for pi in projectors]
    return EigenData(projectors, ranks)


def projector_check(data: EigenData) -> Dict[str, bool]:
    ps = data.projectors
    ring, n = ps[0].ring, ps[0].rows
    total = zeros(ring, n, n)
    for p in ps:
        total = total + p
    orthogonal = all(
        (a @ b == (a if i == j else zeros(ring, n, n))) for i, a in enumerate(ps) for j, b in enumerate(ps)
    )
    return {"sum_identity": total == identity(ring, n), "orthogonal_idempotents": orthogonal}


def _diagonal(m: PolyMatrix) -> Optional[List[int]]:
    """Diagonal entries if m is a diagonal matrix over the field, else None."""
    out = []
    for i in range(m.rows):
        for j in range(m.cols):
            a = m[i, j]
            if i != j and not a.is_zero():
                return None
        if not m[i, i].is_constant():
            return None
        out.append(m[i, i].constant_term())
    return out


def functor_A(module: SigmaModule) -> MatrixFactorization:
    """phi_k = mu Zmat from the omega^{d-k-1} eigenblock to the omega^{d-k} eigenblock."""
    roots, fld = module.roots, module.ring.field
    d = roots.d
    eigen = _diagonal(module.smat)
    if eigen is None:
        raise DomainError("functor_A needs a basis in which sigma acts diagonally")
    slots = {k: [t for t, e in enumerate(eigen) if e == fld.power(roots.omega, d - k)] for k in range(1, d + 1)}
    sizes = sorted({len(v) for v in slots.values()})
    if len(sizes) != 1 or sum(len(v) for v in slots.values()) != module.rank:
        raise DomainError(f"eigenblocks have ranks {[len(slots[k]) for k in range(1, d + 1)]}")
    factors = [
        module.zmat.submatrix(slots[k], slots[k % d + 1]).scale(roots.mu) for k in range(1, d + 1)
    ]
    return MatrixFactorization(module.ring, module.f, factors)
