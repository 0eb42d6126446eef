from __future__ import annotations
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from errors import DomainError, UsageError
from frobenius import PeriodicResolution
from linalg import block, direct_sum, generic_rank, identity, PolyMatrix, RankConfig, zeros
from mf import MatrixFactorization, Morphism
from .algebra import GammaAlgebra, GammaElement


@dataclass
class GammaModule:
    """A Gamma-module free over S: action[i-1][j-1] is the matrix of e_ij.

    `blocks` is set for adapted bases, ordered by the idempotent blocks e_11 M, ..., e_dd M.
    """

    algebra: GammaAlgebra
    rank: int
    action: Sequence[Sequence[PolyMatrix]]
    blocks: Optional[List[int]] = None

    def __post_init__(self) -> None:
        d = self.algebra.d
        if len(self.action) != d or any(len(row) != d for row in self.action):
            raise UsageError(f"a Gamma-module over d={d} needs a {d}x{d} grid of action matrices")
        for row in self.action:
            for m in row:
                if m.shape != (self.rank, self.rank):
                    raise UsageError(f"action matrix is {m.rows}x{m.cols}, expected {self.rank}x{self.rank}")
        if self.blocks is not None and sum(self.blocks) != self.rank:
            raise UsageError(f"block ranks {self.blocks} do not add up to {self.rank}")

    @property
    def adapted(self) -> bool:
        return self.blocks is not None

    def act(self, a: GammaElement) -> PolyMatrix:
        out = zeros(self.algebra.ring, self.rank, self.rank)
        for i, j, c in a.support():
            out = out + self.action[i - 1][j - 1].scale(c)
        return out

    def check(self) -> Dict[str, Any]:
        alg, d = self.algebra, self.algebra.d
        relations = True
        for i, j in alg.basis():
            for p, q in alg.basis():
                lhs = self.action[i - 1][j - 1] @ self.action[p - 1][q - 1]
                if lhs != self.act(alg.mul(alg.e(i, j), alg.e(p, q))):
                    relations = False
        unit = self.act(alg.one()) == identity(alg.ring, self.rank)
        out = {"relations": relations, "unit": unit, "rank": self.rank, "blocks": self.blocks}
        if self.adapted:
            out["adapted"] = all(self.action[k][k] == _block_projector(alg, self.blocks, k) for k in range(d))
        out["valid"] = relations and unit and out.get("adapted", True)
        return out

    def is_homomorphism(self, target: GammaModule, matrix: PolyMatrix) -> bool:
        return all(
            matrix @ self.action[i - 1][j - 1] == target.action[i - 1][j - 1] @ matrix
            for i, j in self.algebra.basis()
        )

    def block_of(self, k: int, m: PolyMatrix) -> PolyMatrix:
        """Rows of block k, columns of block k+1 (cyclic) of a matrix on this module."""
        d = self.algebra.d
        rows = _block_range(self.blocks, (k - 1) % d)
        cols = _block_range(self.blocks, k % d)
        return m.submatrix(rows, cols)


def _block_range(blocks: List[int], k: int) -> range:
    start = sum(blocks[:k])
    return range(start, start + blocks[k])


def _block_projector(alg: GammaAlgebra, blocks: List[int], k: int) -> PolyMatrix:
    parts = [identity(alg.ring, b) if t == k else zeros(alg.ring, b, b) for t, b in enumerate(blocks)]
    return direct_sum(*parts)


def functor_F(x: MatrixFactorization, algebra: Optional[GammaAlgebra] = None) -> GammaModule:
    """Hom(P, X) on the basis F_1 + ... + F_d: e_ij acts by theta_{ji} from block i to block j."""
    d, n, ring = x.d, x.n, x.ring
    algebra = GammaAlgebra(ring, x.f, d) if algebra is None else algebra
    if algebra.d != d or algebra.f != x.f:
        raise UsageError("Gamma algebra does not match the factorization")
    z = zeros(ring, n, n)
    action = []
    for i in range(1, d + 1):
        row = []
        for j in range(1, d + 1):
            grid = [[z] * d for _ in range(d)]
            grid[j - 1][i - 1] = x.theta(j, i)
            row.append(block(grid))
        action.append(row)
    return GammaModule(algebra, d * n, action, [n] * d)


def functor_F_morphism(alpha: Morphism) -> PolyMatrix:
    return direct_sum(*alpha.components)


def functor_H(module: GammaModule) -> MatrixFactorization:
    """phi_k is left multiplication by z from e_{k+1,k+1} M to e_kk M."""
    if not module.adapted:
        raise DomainError("functor_H needs a basis adapted to the idempotents e_11, ..., e_dd")
    if len(set(module.blocks)) != 1:
        raise DomainError(f"idempotent blocks have unequal ranks {module.blocks}")
    alg = module.algebra
    z = module.act(alg.z())
    return MatrixFactorization(alg.ring, alg.f, [module.block_of(k, z) for k in range(1, alg.d + 1)])


def regular_module(algebra: GammaAlgebra) -> GammaModule:
    """Gamma over itself; block k is spanned by e_1k, ..., e_dk."""
    d, ring = algebra.d, algebra.ring

    def position(p: int, q: int) -> int:
        return (q - 1) * d + (p - 1)

    action = []
    for i in range(1, d + 1):
        row = []
        for j in range(1, d + 1):
            entries = [[ring.zero() for _ in range(d * d)] for _ in range(d * d)]
            for p, q in algebra.basis():
                hit = algebra.structure_constant(i, j, p, q)
                if hit is not None:
                    r, s, wrap = hit
                    entries[position(r, s)][position(p, q)] = algebra.f**wrap
            row.append(PolyMatrix(ring, entries))
        action.append(row)
    return GammaModule(algebra, d * d, action, [d] * d)


def resolution_image(
    res: PeriodicResolution, rank_cfg: Optional[RankConfig] = None, rng: Optional[np.random.Generator] = None
) -> Dict[str, Any]:
    """F applied to I(X) -> P(X) -> I(X): composites vanish and ranks add up to d*d*n."""
    rank_cfg = RankConfig() if rank_cfg is None else rank_cfg
    rng = np.random.default_rng(0) if rng is None else rng
    fp, fq = functor_F_morphism(res.p), functor_F_morphism(res.q)
    rp = generic_rank(fp, rank_cfg.trials, rng, rank_cfg.sample_bound)
    rq = generic_rank(fq, rank_cfg.trials, rng, rank_cfg.sample_bound)
    size = res.x.d * res.x.d * res.x.n
    out = {
        "pq_zero": (fp @ fq).is_zero(),
        "qp_zero": (fq @ fp).is_zero(),
        "ranks": [rp, rq],
        "rank_additive": rp + rq == size,
    }
    out["valid"] = out["pq_zero"] and out["qp_zero"] and out["rank_additive"]
    return out
