from __future__ import annotations
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from errors import UsageError
from ring import Poly, PolyRing, Scalar


Coeffs = Tuple[Tuple[Poly, ...], ...]


@dataclass
class GammaAlgebra:
    """End(P_1 + ... + P_d)^op over S with basis e_ij: P_j -> P_i.

    e_ij e_pq = 0 unless i = q; otherwise it is e_pj, times f when the two strands
    (i - j) mod d and (p - i) mod d wrap around the cycle together.
    """

    ring: PolyRing
    f: Poly
    d: int
    _table: Dict[Tuple[int, int, int, int], Tuple[int, int, int]] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.d < 2:
            raise UsageError(f"Gamma needs d >= 2, got {self.d}")
        d = self.d
        for i in range(1, d + 1):
            for j in range(1, d + 1):
                for p in range(1, d + 1):
                    wrap = int((i - j) % d + (p - i) % d >= d)
                    self._table[i, j, p, i] = (p, j, wrap)

    def structure_constant(self, i: int, j: int, p: int, q: int) -> Optional[Tuple[int, int, int]]:
        """(row, col, power of f) of e_ij e_pq, or None when the product vanishes."""
        return self._table.get((i, j, p, q))

    def element(self, coeffs: Sequence[Sequence[Union[Poly, Scalar]]]) -> GammaElement:
        return GammaElement(self, tuple(tuple(self.ring.coerce(c) for c in row) for row in coeffs))

    def zero(self) -> GammaElement:
        return self.element([[0] * self.d for _ in range(self.d)])

    def e(self, i: int, j: int, c: Union[Poly, Scalar] = 1) -> GammaElement:
        i, j = (i - 1) % self.d + 1, (j - 1) % self.d + 1
        return self.element([[c if (r, s) == (i, j) else 0 for s in range(1, self.d + 1)] for r in range(1, self.d + 1)])

    def one(self) -> GammaElement:
        return self.element([[1 if r == s else 0 for s in range(self.d)] for r in range(self.d)])

    def z(self) -> GammaElement:
        """sum of e_{i(i-1)}"""
        out = self.zero()
        for i in range(1, self.d + 1):
            out = out + self.e(i, i - 1)
        return out

    def basis(self) -> List[Tuple[int, int]]:
        return [(i, j) for i in range(1, self.d + 1) for j in range(1, self.d + 1)]

    def mul(self, a: GammaElement, b: GammaElement) -> GammaElement:
        d, ring = self.d, self.ring
        grid = [[ring.zero() for _ in range(d)] for _ in range(d)]
        for i, j, ca in a.support():
            for p, q, cb in b.support():
                hit = self.structure_constant(i, j, p, q)
                if hit is None:
                    continue
                r, s, wrap = hit
                grid[r - 1][s - 1] = grid[r - 1][s - 1] + ca * cb * self.f**wrap
        return self.element(grid)

    def power(self, a: GammaElement, s: int) -> GammaElement:
        if s < 0:
            raise UsageError(f"negative power {s}")
        out = self.one()
        for _ in range(s):
            out = self.mul(out, a)
        return out


@dataclass(frozen=True)
class GammaElement:
    algebra: GammaAlgebra
    coeffs: Coeffs

    def __getitem__(self, idx: Tuple[int, int]) -> Poly:
        i, j = idx
        return self.coeffs[i - 1][j - 1]

    def support(self) -> List[Tuple[int, int, Poly]]:
        return [(i + 1, j + 1, c) for i, row in enumerate(self.coeffs) for j, c in enumerate(row) if not c.is_zero()]

    def __add__(self, other: GammaElement) -> GammaElement:
        return self.algebra.element([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> GammaElement:
        return self.algebra.element([[-a for a in row] for row in self.coeffs])

    def __sub__(self, other: GammaElement) -> GammaElement:
        return self + (-other)

    def __mul__(self, other: GammaElement) -> GammaElement:
        return self.algebra.mul(self, other)

    def scale(self, c: Union[Poly, Scalar]) -> GammaElement:
        c = self.algebra.ring.coerce(c)
        return self.algebra.element([[a * c for a in row] for row in self.coeffs])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GammaElement):
            return NotImplemented
        return self.algebra.d == other.algebra.d and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not self.support()

    def __str__(self) -> str:
        terms = [f"({c})*e{i}{j}" for i, j, c in self.support()]
        return " + ".join(terms) if terms else "0"


def gamma_mul(a: GammaElement, b: GammaElement) -> GammaElement:
    return a.algebra.mul(a, b)


def gamma_z_power(algebra: GammaAlgebra, s: int) -> GammaElement:
    """z^s = f^q sum_i e_{i(i-r)} with s = dq + r."""
    if s < 1:
        raise UsageError(f"z power needs s >= 1, got {s}")
    q, r = divmod(s, algebra.d)
    out = algebra.zero()
    for i in range(1, algebra.d + 1):
        out = out + algebra.e(i, i - r, algebra.f**q)
    return out


@dataclass
class EijChain:
    i: int
    j: int
    factors: List[Tuple[int, int]]
    product: GammaElement
    target: GammaElement

    @property
    def valid(self) -> bool:
        return self.product == self.target

    def to_dict(self) -> Dict[str, Any]:
        return {"i": self.i, "j": self.j, "factors": [list(p) for p in self.factors], "valid": self.valid}


def eij_factorization(algebra: GammaAlgebra, i: int, j: int) -> EijChain:
    """e_ij = e_{(j+1)j} e_{(j+2)(j+1)} ... e_{i(i-1)}, a chain of (i - j) mod d factors."""
    d = algebra.d
    i, j = (i - 1) % d + 1, (j - 1) % d + 1
    if i == j:
        raise UsageError("e_ii is an idempotent, not a chain")
    length = (i - j) % d
    factors = [((j + t) % d + 1, (j + t - 1) % d + 1) for t in range(length)]
    product = algebra.e(*factors[0])
    for pair in factors[1:]:
        product = algebra.mul(product, algebra.e(*pair))
    return EijChain(i, j, factors, product, algebra.e(i, j))


def associativity_check(algebra: GammaAlgebra, samples: int, rng: np.random.Generator) -> Dict[str, Any]:
    """(ab)c == a(bc) on random basis triples."""
    basis = algebra.basis()
    failures = 0
    for _ in range(samples):
        a, b, c = (algebra.e(*basis[int(t)]) for t in rng.integers(0, len(basis), size=3))
        if algebra.mul(algebra.mul(a, b), c) != algebra.mul(a, algebra.mul(b, c)):
            failures += 1
    return {"samples": samples, "failures": failures, "valid": failures == 0}
