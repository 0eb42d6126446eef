from __future__ import annotations
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence

from errors import UsageError
from linalg import identity, PolyMatrix, residue_rank, zeros
from .factorization import CyclicIndex, MatrixFactorization


@dataclass
class MorphismCheck:
    valid: bool
    squares: List[bool]

    def to_dict(self) -> Dict[str, Any]:
        return {"valid": self.valid, "squares": self.squares}


@dataclass
class Morphism:
    """alpha_k: F_k -> F'_k with alpha_k phi_k = phi'_k alpha_{k+1}."""

    source: MatrixFactorization
    target: MatrixFactorization
    components: Sequence[PolyMatrix]

    def __post_init__(self) -> None:
        self.source.check_compatible(self.target)
        self.components = tuple(self.components)
        if len(self.components) != self.source.d:
            raise UsageError(f"morphism has {len(self.components)} components, expected {self.source.d}")
        for k, a in enumerate(self.components, start=1):
            if a.shape != (self.target.n, self.source.n):
                raise UsageError(
                    f"component {k} has shape {a.rows}x{a.cols}, expected {self.target.n}x{self.source.n}"
                )

    @classmethod
    def identity(cls, x: MatrixFactorization) -> Morphism:
        return cls(x, x, [identity(x.ring, x.n)] * x.d)

    @classmethod
    def zero(cls, x: MatrixFactorization, y: MatrixFactorization) -> Morphism:
        return cls(x, y, [zeros(x.ring, y.n, x.n)] * x.d)

    @property
    def d(self) -> int:
        return self.source.d

    def alpha(self, k: int) -> PolyMatrix:
        return self.components[int(CyclicIndex(int(k), self.d)) - 1]

    def verify(self) -> MorphismCheck:
        squares = [
            self.alpha(k) @ self.source.phi(k) == self.target.phi(k) @ self.alpha(k + 1) for k in range(1, self.d + 1)
        ]
        return MorphismCheck(all(squares), squares)

    def compose(self, other: Morphism) -> Morphism:
        """self o other: apply other first."""
        if other.target != self.source:
            raise UsageError("cannot compose: target of the first morphism is not the source of the second")
        return Morphism(other.source, self.target, [a @ b for a, b in zip(self.components, other.components)])

    __matmul__ = compose

    def __add__(self, other: Morphism) -> Morphism:
        if other.source != self.source or other.target != self.target:
            raise UsageError("cannot add morphisms between different factorizations")
        return Morphism(self.source, self.target, [a + b for a, b in zip(self.components, other.components)])

    def __neg__(self) -> Morphism:
        return Morphism(self.source, self.target, [-a for a in self.components])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.components == other.components

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.components)

    def shift(self, j: int) -> Morphism:
        return Morphism(self.source.shift(j), self.target.shift(j), [self.alpha(k + j) for k in range(1, self.d + 1)])

    def _require_verified(self) -> None:
        if not self.verify().valid:
            raise UsageError("admissibility is only defined for verified morphisms")

    def is_admissible_mono(self) -> bool:
        """Every alpha_k split injective, i.e. alpha_k(0) has full column rank."""
        self._require_verified()
        return all(residue_rank(a) == self.source.n for a in self.components)

    def is_admissible_epi(self) -> bool:
        """Every alpha_k surjective, i.e. alpha_k(0) has full row rank (Nakayama)."""
        self._require_verified()
        return all(residue_rank(a) == self.target.n for a in self.components)


def morphism_verify(alpha: Morphism) -> MorphismCheck:
    return alpha.verify()


def morphism_compose(alpha: Morphism, beta: Morphism) -> Morphism:
    return alpha.compose(beta)


def is_admissible_mono(alpha: Morphism) -> bool:
    return alpha.is_admissible_mono()


def is_admissible_epi(alpha: Morphism) -> bool:
    return alpha.is_admissible_epi()
