from __future__ import annotations
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from linalg import block, generic_rank, hstack, identity, invert_unitriangular, PolyMatrix, RankConfig, residue_rank, vstack, zeros
from mf import MatrixFactorization, Morphism


@dataclass
class StructureMaps:
    """Theta, Xi and the maps rho, epsilon, lambda, eta around P(X) and I(X).

    P(X)_k and I(X)_k are F_k + F^_k with F^_k = F_{k+1} + ... + F_{k-1}, in that order.
    """

    x: MatrixFactorization
    Theta: Tuple[PolyMatrix, ...]
    Xi: Tuple[PolyMatrix, ...]
    P: MatrixFactorization
    I: MatrixFactorization
    omega: MatrixFactorization
    omega_minus: MatrixFactorization
    rho: Morphism  # P(X) -> X
    eps: Morphism  # Omega(X) -> P(X)
    lam: Morphism  # X -> I(X)
    eta: Morphism  # I(X) -> Omega^-(X)

    def theta_row(self, k: int) -> PolyMatrix:
        return self.Theta[int(self.x.idx(k)) - 1]

    def xi_col(self, k: int) -> PolyMatrix:
        return self.Xi[int(self.x.idx(k)) - 1]

    def rho_lambda(self, k: int) -> PolyMatrix:
        """rho_k lambda_k = I + Theta_k Xi_k, recorded for inspection."""
        return self.rho.alpha(k) @ self.lam.alpha(k)


@dataclass
class ShortExactSeq:
    inclusion: Morphism
    surjection: Morphism

    def check(self, rank_cfg: Optional[RankConfig] = None, rng: Optional[np.random.Generator] = None) -> Dict[str, Any]:
        rank_cfg = RankConfig() if rank_cfg is None else rank_cfg
        rng = np.random.default_rng(0) if rng is None else rng
        inc, sur = self.inclusion, self.surjection

        def rank(m: PolyMatrix) -> int:
            return generic_rank(m, rank_cfg.trials, rng, rank_cfg.sample_bound)

        ranks = [(rank(inc.alpha(k)), rank(sur.alpha(k))) for k in range(1, inc.d + 1)]
        middle = inc.target.n
        additive = all(a == inc.source.n and b == sur.target.n and a + b == middle for a, b in ranks)
        out = {
            "morphisms_verified": inc.verify().valid and sur.verify().valid,
            "composite_zero": sur.compose(inc).is_zero(),
            "rank_additive": additive,
            "ranks": [list(r) for r in ranks],
        }
        out["admissible_mono"] = out["morphisms_verified"] and inc.is_admissible_mono()
        out["admissible_epi"] = out["morphisms_verified"] and sur.is_admissible_epi()
        out["exact"] = all(out[key] for key in ("composite_zero", "rank_additive", "admissible_mono", "admissible_epi"))
        return out


def _hat(x: MatrixFactorization, k: int) -> List[int]:
    """Indices of the summands of F^_k: k+1, ..., k+d-1."""
    return [int(x.idx(k + t)) for t in range(1, x.d)]


def _P_factor(x: MatrixFactorization, twisted: bool) -> PolyMatrix:
    """D_k (twisted=False) or D'_k (twisted=True): a permutation of f on one strand and 1 on the rest."""
    d, n, ring = x.d, x.n, x.ring
    ident, fI, z = identity(ring, n), identity(ring, n).scale(x.f), zeros(ring, n, n)
    grid = [[z] * d for _ in range(d)]
    if twisted:
        grid[0][d - 1] = ident
        grid[1][0] = fI
        for r in range(2, d):
            grid[r][r - 1] = ident
    else:
        grid[0][d - 1] = fI
        for r in range(1, d):
            grid[r][r - 1] = ident
    return block(grid)


def _omega_factor(x: MatrixFactorization, k: int) -> PolyMatrix:
    """Omega_k: F^_{k+1} -> F^_k, top row -theta_{(k+1)(k+2+c)}, identities below the diagonal."""
    d, n, ring = x.d, x.n, x.ring
    z, ident = zeros(ring, n, n), identity(ring, n)
    grid = [[z] * (d - 1) for _ in range(d - 1)]
    for c in range(d - 1):
        grid[0][c] = -x.theta(k + 1, k + 2 + c)
    for r in range(1, d - 1):
        grid[r][r - 1] = ident
    return block(grid)


def _omega_minus_factor(x: MatrixFactorization, k: int) -> PolyMatrix:
    """Omega^-_k: F^_{k+1} -> F^_k, last column -theta_{(k+1+r)k}, identities below the diagonal."""
    d, n, ring = x.d, x.n, x.ring
    z, ident = zeros(ring, n, n), identity(ring, n)
    grid = [[z] * (d - 1) for _ in range(d - 1)]
    for r in range(1, d - 1):
        grid[r][r - 1] = ident
    for r in range(d - 1):
        grid[r][d - 2] = -x.theta(k + 1 + r, k)
    return block(grid)


def structure_maps(x: MatrixFactorization) -> StructureMaps:
    d, n, ring = x.d, x.n, x.ring
    ks = range(1, d + 1)
    Theta = tuple(hstack(*[x.theta(k, i) for i in _hat(x, k)]) for k in ks)
    Xi = tuple(vstack(*[x.theta(i, k) for i in _hat(x, k)]) for k in ks)
    P = MatrixFactorization(ring, x.f, [_P_factor(x, twisted=False)] * d)
    I = MatrixFactorization(ring, x.f, [_P_factor(x, twisted=True)] * d)
    omega = MatrixFactorization(ring, x.f, [_omega_factor(x, k) for k in ks])
    omega_minus = MatrixFactorization(ring, x.f, [_omega_minus_factor(x, k) for k in ks])
    hat_ident = identity(ring, (d - 1) * n)
    ident = identity(ring, n)
    rho = Morphism(P, x, [hstack(ident, Theta[k - 1]) for k in ks])
    eps = Morphism(omega, P, [vstack(-Theta[k - 1], hat_ident) for k in ks])
    lam = Morphism(x, I, [vstack(ident, Xi[k - 1]) for k in ks])
    eta = Morphism(I, omega_minus, [hstack(-Xi[k - 1], hat_ident) for k in ks])
    return StructureMaps(x, Theta, Xi, P, I, omega, omega_minus, rho, eps, lam, eta)


def syzygy(x: MatrixFactorization, maps: Optional[StructureMaps] = None) -> Tuple[MatrixFactorization, ShortExactSeq]:
    """Omega(X) with the sequence Omega(X) >-> P(X) ->> X."""
    maps = structure_maps(x) if maps is None else maps
    return maps.omega, ShortExactSeq(maps.eps, maps.rho)


def cosyzygy(x: MatrixFactorization, maps: Optional[StructureMaps] = None) -> Tuple[MatrixFactorization, ShortExactSeq]:
    """Omega^-(X) with the sequence X >-> I(X) ->> Omega^-(X)."""
    maps = structure_maps(x) if maps is None else maps
    return maps.omega_minus, ShortExactSeq(maps.lam, maps.eta)


@dataclass
class SyzygyIso:
    forward: Morphism  # Omega(X) -> Omega^-(X)
    inverse: Morphism  # Omega^-(X) -> Omega(X)

    def check(self) -> Dict[str, Any]:
        fwd, inv = self.forward, self.inverse
        src, tgt = fwd.source, fwd.target
        return {
            "forward_verified": fwd.verify().valid,
            "inverse_verified": inv.verify().valid,
            "left_inverse": inv.compose(fwd) == Morphism.identity(src),
            "right_inverse": fwd.compose(inv) == Morphism.identity(tgt),
        }


def syzygy_cosyzygy_iso(x: MatrixFactorization, maps: Optional[StructureMaps] = None) -> SyzygyIso:
    """Upper unitriangular alpha_k with block (r, c) = theta_{(k+1+r)(k+1+c)} for r < c."""
    maps = structure_maps(x) if maps is None else maps
    d, n, ring = x.d, x.n, x.ring
    z, ident = zeros(ring, n, n), identity(ring, n)
    components = []
    for k in range(1, d + 1):
        grid = [[z] * (d - 1) for _ in range(d - 1)]
        for r in range(d - 1):
            grid[r][r] = ident
            for c in range(r + 1, d - 1):
                grid[r][c] = x.theta(k + 1 + r, k + 1 + c)
        components.append(block(grid))
    forward = Morphism(maps.omega, maps.omega_minus, components)
    inverse = Morphism(maps.omega_minus, maps.omega, [invert_unitriangular(a) for a in components])
    return SyzygyIso(forward, inverse)


def interleave_permutation(d: int, n: int, n2: int) -> List[int]:
    """Reorders F^ of X + X' (blockwise interleaved) into F^ of X followed by F^ of X'."""
    width = n + n2
    first = [b * width + o for b in range(d - 1) for o in range(n)]
    second = [b * width + n + o for b in range(d - 1) for o in range(n2)]
    return first + second


def strand_order(d: int, n: int, k: int, offset: int) -> List[int]:
    """Reorders P(X)_k (offset 0) or I(X)_k (offset 1) into slot order of P_1^n + ... + P_d^n.

    Strand F_i carries f in slot i - offset; its coordinates sit in block (i - k) mod d.
    """
    order = []
    for slot in range(1, d + 1):
        strand = slot + offset
        pos = (strand - k) % d
        order.extend(pos * n + j for j in range(n))
    return order


def cok_rank_bookkeeping(x: MatrixFactorization, maps: Optional[StructureMaps] = None) -> List[Dict[str, int]]:
    """Per slot: mu(cok Omega_k) against mu(cok theta_{(k+1)k}) and the free rank m_k."""
    maps = structure_maps(x) if maps is None else maps
    d, n = x.d, x.n
    out = []
    for k in range(1, d + 1):
        out.append(
            {
                "k": k,
                "mu_omega": (d - 1) * n - residue_rank(maps.omega.phi(k)),
                "mu_theta": n - residue_rank(x.theta(k + 1, k)),
                "m": n - x.min_gens(k),
            }
        )
    return out


def omega_signature(x: MatrixFactorization) -> Dict[str, List[int]]:
    """Residue ranks of Omega^-(Omega(X)) per slot against those of X + P^{(d-2)n}."""
    d, n = x.d, x.n
    twice = structure_maps(structure_maps(x).omega).omega_minus
    observed = [residue_rank(twice.phi(k)) for k in range(1, d + 1)]
    expected = [residue_rank(x.phi(k)) + (d - 1) * (d - 2) * n for k in range(1, d + 1)]
    return {"observed": observed, "expected": expected, "size": [twice.n, n + d * (d - 2) * n]}
