from __future__ import annotations
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence

from errors import UsageError
from linalg import direct_sum, identity, PolyMatrix, residue_rank, zeros
from ring import FieldSpec, Poly, PolyRing


@dataclass(frozen=True)
class CyclicIndex:
    """An index in Z_d, represented by its value in 1..d."""

    value: int
    d: int

    def __post_init__(self) -> None:
        assert self.d >= 1
        object.__setattr__(self, "value", (self.value - 1) % self.d + 1)

    def __add__(self, other: int) -> CyclicIndex:
        return CyclicIndex(self.value + int(other), self.d)

    def __sub__(self, other: int) -> CyclicIndex:
        return CyclicIndex(self.value - int(other), self.d)

    def __int__(self) -> int:
        return self.value

    __index__ = __int__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CyclicIndex):
            return (self.value, self.d) == (other.value, other.d)
        if isinstance(other, int):
            return self.value == (other - 1) % self.d + 1
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.d))

    def walk(self, length: int) -> Iterator[CyclicIndex]:
        """self, self+1, ..., self+length-1"""
        for t in range(length):
            yield self + t


@dataclass
class MFCheck:
    valid: bool
    rotations: List[bool]

    @property
    def failing(self) -> List[int]:
        return [k for k, ok in enumerate(self.rotations, start=1) if not ok]

    def to_dict(self) -> Dict[str, Any]:
        return {"valid": self.valid, "rotations": self.rotations, "failing_rotations": self.failing}


@dataclass
class MatrixFactorization:
    """phi_1..phi_d with phi_k: F_{k+1} -> F_k and phi_k phi_{k+1} ... phi_{k-1} = f * I_n."""

    ring: PolyRing
    f: Poly
    factors: Sequence[PolyMatrix]
    name: Optional[str] = None
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.factors = tuple(self.factors)
        if len(self.factors) < 2:
            raise UsageError(f"a matrix factorization needs d >= 2 factors, got {len(self.factors)}")
        if self.f.ring != self.ring:
            raise UsageError(f"f lives in {self.f.ring}, factors in {self.ring}")
        n = self.factors[0].rows
        for k, phi in enumerate(self.factors, start=1):
            if phi.ring != self.ring:
                raise UsageError(f"factor {k} lives in {phi.ring}, expected {self.ring}")
            if phi.shape != (n, n):
                raise UsageError(f"factor {k} has shape {phi.rows}x{phi.cols}, expected {n}x{n}")

    @property
    def d(self) -> int:
        return len(self.factors)

    @property
    def n(self) -> int:
        return self.factors[0].rows

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    def idx(self, k: int) -> CyclicIndex:
        return CyclicIndex(int(k), self.d)

    def phi(self, k: int) -> PolyMatrix:
        return self.factors[int(self.idx(k)) - 1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixFactorization):
            return NotImplemented
        return self.ring == other.ring and self.f == other.f and self.factors == other.factors

    def rotation_product(self, k: int) -> PolyMatrix:
        prod = identity(self.ring, self.n)
        for i in self.idx(k).walk(self.d):
            prod = prod @ self.phi(i)
        return prod

    def verify(self) -> MFCheck:
        target = identity(self.ring, self.n).scale(self.f)
        rotations = [self.rotation_product(k) == target for k in range(1, self.d + 1)]
        return MFCheck(all(rotations), rotations)

    def theta(self, k: int, i: int) -> PolyMatrix:
        """theta_{ki} = I if i = k, else phi_k phi_{k+1} ... phi_{i-1}: F_i -> F_k."""
        k, i = self.idx(k), self.idx(i)
        prod = identity(self.ring, self.n)
        j = k
        while j != i:
            prod = prod @ self.phi(j)
            j = j + 1
        return prod

    def shift(self, j: int) -> MatrixFactorization:
        """T^j(phi_1, ..., phi_d) = (phi_{j+1}, ..., phi_j)."""
        return MatrixFactorization(self.ring, self.f, [self.phi(k + j) for k in range(1, self.d + 1)])

    def direct_sum(self, other: MatrixFactorization) -> MatrixFactorization:
        self.check_compatible(other)
        factors = [direct_sum(a, b) for a, b in zip(self.factors, other.factors)]
        return MatrixFactorization(self.ring, self.f, factors)

    __add__ = direct_sum

    def check_compatible(self, other: MatrixFactorization) -> None:
        if self.ring != other.ring:
            raise UsageError(f"factorizations over different rings: {self.ring} and {other.ring}")
        if self.f != other.f:
            raise UsageError(f"factorizations of different elements: {self.f} and {other.f}")
        if self.d != other.d:
            raise UsageError(f"factorizations with different factor counts: {self.d} and {other.d}")

    def min_gens(self, k: int) -> int:
        """mu(cok phi_k) = n - rank of phi_k(0)."""
        return self.n - residue_rank(self.phi(k))

    def is_reduced(self) -> bool:
        return all(not a.is_unit() for phi in self.factors for row in phi.entries for a in row)

    def change_field(self, target: FieldSpec) -> MatrixFactorization:
        ring = self.ring.change_field(target)
        factors = [phi.map_field(ring) for phi in self.factors]
        return MatrixFactorization(ring, self.f.map_field(ring), factors, self.name, dict(self.meta))

    def with_factors(self, factors: Sequence[PolyMatrix]) -> MatrixFactorization:
        return MatrixFactorization(self.ring, self.f, factors)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"MatrixFactorization{label}(d={self.d}, n={self.n}, f={self.f})"


def mf_verify(x: MatrixFactorization) -> MFCheck:
    return x.verify()


def mf_shift(x: MatrixFactorization, j: int) -> MatrixFactorization:
    return x.shift(j)


def mf_sum(x: MatrixFactorization, y: MatrixFactorization) -> MatrixFactorization:
    return x.direct_sum(y)


def theta(x: MatrixFactorization, k: int, i: int) -> PolyMatrix:
    return x.theta(k, i)


def min_gens(x: MatrixFactorization, k: int) -> int:
    return x.min_gens(k)


def zero_mf(ring: PolyRing, f: Poly, d: int) -> MatrixFactorization:
    return MatrixFactorization(ring, f, [zeros(ring, 0, 0)] * d)


def proj_P(i: int, d: int, f: Poly) -> MatrixFactorization:
    """The size-1 projective with f in slot i and 1 elsewhere."""
    ring = f.ring
    i = int(CyclicIndex(i, d))
    factors = [PolyMatrix(ring, [[f if k == i else ring.one()]]) for k in range(1, d + 1)]
    return MatrixFactorization(ring, f, factors, name=f"P{i}")


def proj_sum(multiplicities: Sequence[int], f: Poly) -> MatrixFactorization:
    """P_1^{s_1} + ... + P_d^{s_d}, summands in slot order."""
    d = len(multiplicities)
    out = zero_mf(f.ring, f, d)
    for i, s in enumerate(multiplicities, start=1):
        for _ in range(s):
            out = out.direct_sum(proj_P(i, d, f))
    return out
