from __future__ import annotations
from dataclasses import dataclass
from typing import Any, Dict

from sympy.ntheory import n_order

from errors import DomainError, UsageError
from ring import GF, FieldSpec, is_prime


@dataclass(frozen=True)
class RootData:
    """omega of order exactly d and mu with mu^d = -1 in GF(p)."""

    p: int
    d: int
    omega: int
    mu: int

    def __post_init__(self) -> None:
        p, d = self.p, self.d
        if self.omega % p == 0 or n_order(self.omega, p) != d:
            raise DomainError(f"{self.omega} is not a primitive {d}-th root of unity mod {p}")
        if pow(self.mu, d, p) != p - 1:
            raise DomainError(f"{self.mu}^{d} is not -1 mod {p}")

    @property
    def field(self) -> FieldSpec:
        return GF(self.p)

    def to_dict(self) -> Dict[str, Any]:
        return {"p": self.p, "d": self.d, "omega": self.omega, "mu": self.mu}


def find_roots(p: int, d: int) -> RootData:
    """Smallest witnesses in GF(p); both exist iff 2d divides p - 1."""
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    if d < 2:
        raise UsageError(f"roots need d >= 2, got {d}")
    if d % p == 0:
        raise DomainError(f"characteristic {p} divides d = {d}")
    omega = next((w for w in range(2, p) if n_order(w, p) == d), None)
    if omega is None:
        raise DomainError(f"no primitive {d}-th root of unity in GF({p}): {d} does not divide {p - 1}")
    mu = next((m for m in range(1, p) if pow(m, d, p) == p - 1), None)
    if mu is None:
        raise DomainError(f"x^{d} + 1 has no root in GF({p}): {2 * d} does not divide {p - 1}")
    return RootData(p, d, omega, mu)
