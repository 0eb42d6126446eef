from __future__ import annotations
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from errors import UsageError
from linalg import hstack, PolyMatrix, zeros
from mf import CyclicIndex, MatrixFactorization, Morphism, proj_P
from .structure import StructureMaps, structure_maps


@dataclass
class Homotopy:
    """s_j: F_j -> F'_{j-1} for j in Z_d, stored in order s_1..s_d."""

    maps: Sequence[PolyMatrix]

    def __post_init__(self) -> None:
        self.maps = tuple(self.maps)

    @property
    def d(self) -> int:
        return len(self.maps)

    def s(self, j: int) -> PolyMatrix:
        return self.maps[int(CyclicIndex(int(j), self.d)) - 1]

    @classmethod
    def zero(cls, source: MatrixFactorization, target: MatrixFactorization) -> Homotopy:
        return cls([zeros(source.ring, target.n, source.n)] * source.d)

    @classmethod
    def random(
        cls,
        source: MatrixFactorization,
        target: MatrixFactorization,
        rng: np.random.Generator,
        degree: int = 1,
        num_terms: int = 2,
    ) -> Homotopy:
        ring = source.ring
        maps = []
        for _ in range(source.d):
            rows = [[ring.random_poly(rng, degree, num_terms) for _ in range(source.n)] for _ in range(target.n)]
            maps.append(PolyMatrix(ring, rows, target.n, source.n))
        return cls(maps)


@dataclass
class HomotopyCheck:
    valid: bool
    indices: List[bool]

    def to_dict(self) -> Dict[str, Any]:
        return {"valid": self.valid, "indices": self.indices}


def homotopy_sum(alpha: Morphism, s: Homotopy, i: int) -> PolyMatrix:
    """sum over m in Z_d of theta'_{i(m-1)} s_m theta_{mi}"""
    x, y = alpha.source, alpha.target
    total = zeros(x.ring, y.n, x.n)
    for m in range(1, x.d + 1):
        total = total + y.theta(i, m - 1) @ s.s(m) @ x.theta(m, i)
    return total


def homotopy_verify(alpha: Morphism, s: Homotopy) -> HomotopyCheck:
    if s.d != alpha.d:
        raise UsageError(f"homotopy has {s.d} maps, morphism has {alpha.d} components")
    for j in range(1, s.d + 1):
        if s.s(j).shape != (alpha.target.n, alpha.source.n):
            raise UsageError(f"s_{j} has shape {s.s(j).rows}x{s.s(j).cols}, expected {alpha.target.n}x{alpha.source.n}")
    indices = [homotopy_sum(alpha, s, i) == alpha.alpha(i) for i in range(1, alpha.d + 1)]
    return HomotopyCheck(all(indices), indices)


def null_homotopic_morphism(
    x: MatrixFactorization, y: MatrixFactorization, s: Homotopy, maps: Optional[StructureMaps] = None
) -> Morphism:
    """gamma: I(X) -> X' built from s; its column for F_{k+c} is theta'_{k(k+c-1)} s_{k+c}."""
    maps = structure_maps(x) if maps is None else maps
    d = x.d
    components = [hstack(*[y.theta(k, k + c - 1) @ s.s(k + c) for c in range(d)]) for k in range(1, d + 1)]
    return Morphism(maps.I, y, components)


def homotopy_from_morphism(beta: Morphism) -> Homotopy:
    """For beta: I(X) -> X', the composite beta o lambda is null-homotopic via s_j = beta_{(j-1)j}.

    The sign is +, matching alpha_i = sum_m theta'_{i(m-1)} s_m theta_{mi} as checked by
    homotopy_verify. Worked examples that print -beta use the opposite convention for s.
    """
    d, n = beta.d, beta.target.n
    size = beta.source.n // d
    assert beta.source.n == d * size
    maps = []
    for j in range(1, d + 1):
        # F_j is the second summand of I(X)_{j-1} = F_{j-1} + F_j + ...
        maps.append(beta.alpha(j - 1).submatrix(range(n), range(size, 2 * size)))
    return Homotopy(maps)


def identity_homotopy(i: int, d: int, f) -> Homotopy:
    """s_{i+1} = 1 and s_j = 0 otherwise witnesses 1_{P_i} ~ 0."""
    p = proj_P(i, d, f)
    ring = p.ring
    return Homotopy([PolyMatrix(ring, [[1 if CyclicIndex(j, d) == CyclicIndex(i + 1, d) else 0]]) for j in range(1, d + 1)])
