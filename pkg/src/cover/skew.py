from __future__ import annotations
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple, Union

import numpy as np

from errors import UsageError
from gamma import GammaAlgebra, GammaElement
from linalg import PolyMatrix, scalar_det
from ring import Poly, PolyRing, Scalar
from .roots import RootData


@dataclass
class SkewAlgebra:
    """R[sigma] with R = S[z]/(f + z^d) and sigma(z) = omega z; basis z^a sigma^b, 0 <= a, b < d."""

    ring: PolyRing
    f: Poly
    roots: RootData
    _products: Dict[Tuple[int, int, int, int], Tuple[int, int, Poly]] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.ring.field != self.roots.field:
            raise UsageError(f"skew algebra over {self.ring.field} with roots in {self.roots.field}")
        d, fld, omega = self.d, self.ring.field, self.roots.omega
        for a, b, c, e in ((a, b, c, e) for a in range(d) for b in range(d) for c in range(d) for e in range(d)):
            coeff = self.ring.const(fld.power(omega, b * c))
            power = a + c
            if power >= d:
                power -= d
                coeff = -coeff * self.f
            self._products[a, b, c, e] = (power, (b + e) % d, coeff)

    @property
    def d(self) -> int:
        return self.roots.d

    def element(self, coeffs: Sequence[Sequence[Union[Poly, Scalar]]]) -> SkewElement:
        return SkewElement(self, tuple(tuple(self.ring.coerce(c) for c in row) for row in coeffs))

    def zero(self) -> SkewElement:
        return self.element([[0] * self.d for _ in range(self.d)])

    def basis_element(self, a: int, b: int, c: Union[Poly, Scalar] = 1) -> SkewElement:
        return self.element([[c if (r, s) == (a, b) else 0 for s in range(self.d)] for r in range(self.d)])

    def one(self) -> SkewElement:
        return self.basis_element(0, 0)

    def z(self) -> SkewElement:
        return self.basis_element(1, 0)

    def sigma(self) -> SkewElement:
        return self.basis_element(0, 1)

    def basis(self) -> List[Tuple[int, int]]:
        return [(a, b) for a in range(self.d) for b in range(self.d)]

    def mul(self, x: SkewElement, y: SkewElement) -> SkewElement:
        d, ring = self.d, self.ring
        grid = [[ring.zero() for _ in range(d)] for _ in range(d)]
        for a, b, cx in x.support():
            for c, e, cy in y.support():
                power, shift, coeff = self._products[a, b, c, e]
                grid[power][shift] = grid[power][shift] + cx * cy * coeff
        return self.element(grid)


@dataclass(frozen=True)
class SkewElement:
    algebra: SkewAlgebra
    coeffs: Tuple[Tuple[Poly, ...], ...]

    def support(self) -> List[Tuple[int, int, Poly]]:
        return [(a, b, c) for a, row in enumerate(self.coeffs) for b, c in enumerate(row) if not c.is_zero()]

    def __add__(self, other: SkewElement) -> SkewElement:
        return self.algebra.element([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other: SkewElement) -> SkewElement:
        return self.algebra.mul(self, other)

    def scale(self, c: Union[Poly, Scalar]) -> SkewElement:
        c = self.algebra.ring.coerce(c)
        return self.algebra.element([[a * c for a in row] for row in self.coeffs])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SkewElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)


def skew_mul(x: SkewElement, y: SkewElement) -> SkewElement:
    return x.algebra.mul(x, y)


def skew_associativity_check(algebra: SkewAlgebra, samples: int, rng: np.random.Generator) -> Dict[str, Any]:
    basis = algebra.basis()
    failures = 0
    for _ in range(samples):
        a, b, c = (algebra.basis_element(*basis[int(t)]) for t in rng.integers(0, len(basis), size=3))
        if (a * b) * c != a * (b * c):
            failures += 1
    return {"samples": samples, "failures": failures, "valid": failures == 0}


@dataclass
class PsiIso:
    """psi(z) = mu sum_i e_{i(i-1)}, psi(sigma) = sum_i omega^-i e_ii, extended multiplicatively."""

    skew: SkewAlgebra
    gamma: GammaAlgebra
    images: Dict[Tuple[int, int], GammaElement]

    def __call__(self, x: SkewElement) -> GammaElement:
        out = self.gamma.zero()
        for a, b, c in x.support():
            out = out + self.images[a, b].scale(c)
        return out

    def coefficient_matrix(self) -> PolyMatrix:
        """Column (a, b) holds the coordinates of psi(z^a sigma^b) in the basis e_ij."""
        basis = self.skew.basis()
        rows = [[self.images[ab][i, j] for ab in basis] for i, j in self.gamma.basis()]
        return PolyMatrix(self.gamma.ring, rows)

    def check(self) -> Dict[str, Any]:
        skew, gam, d = self.skew, self.gamma, self.skew.d
        basis = skew.basis()
        multiplicative = all(
            self(skew.mul(skew.basis_element(*x), skew.basis_element(*y)))
            == gam.mul(self.images[x], self.images[y])
            for x in basis
            for y in basis
        )
        coeff = self.coefficient_matrix()
        det = scalar_det(gam.ring.field, coeff.constant_part())
        fld, omega = gam.ring.field, self.skew.roots.omega
        inv_d = fld.inv(fld.elem(d))
        idempotents = True
        for k in range(1, d + 1):
            total = gam.zero()
            for j in range(d):
                total = total + self.images[0, j].scale(fld.power(omega, j * k))
            idempotents = idempotents and total.scale(inv_d) == gam.e(k, k)
        z_power = gam.power(self.images[1, 0], d) == gam.one().scale(-skew.f)
        return {
            "multiplicative": multiplicative,
            "unit": self(skew.one()) == gam.one(),
            "determinant": fld.format(det),
            "bijective": det != fld.zero(),
            "idempotents": idempotents,
            "z_power": z_power,
            "valid": multiplicative and det != fld.zero() and idempotents and z_power,
        }


def psi_iso(roots: RootData, ring: PolyRing, f: Poly) -> PsiIso:
    skew = SkewAlgebra(ring, f, roots)
    gamma = GammaAlgebra(ring, f, roots.d)
    d, fld = roots.d, ring.field
    psi_z = gamma.zero()
    psi_sigma = gamma.zero()
    for i in range(1, d + 1):
        psi_z = psi_z + gamma.e(i, i - 1, roots.mu)
        psi_sigma = psi_sigma + gamma.e(i, i, fld.power(roots.omega, -i))
    images = {(a, b): gamma.mul(gamma.power(psi_z, a), gamma.power(psi_sigma, b)) for a, b in skew.basis()}
    return PsiIso(skew, gamma, images)
