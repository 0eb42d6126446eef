from __future__ import annotations
from dataclasses import dataclass

from errors import DomainError, UsageError
from .poly import Poly


@dataclass(frozen=True)
class TruncatedSeries:
    poly: Poly
    precision: int

    def __post_init__(self) -> None:
        assert self.precision >= 0
        assert self.poly.total_degree() <= self.precision or self.poly.is_zero()

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        if other.precision != self.precision:
            raise UsageError(f"precision mismatch: {self.precision} vs {other.precision}")
        return TruncatedSeries((self.poly * other.poly).truncate(self.precision), self.precision)

    def __str__(self) -> str:
        return f"{self.poly} + O(deg {self.precision + 1})"


def series_inverse(p: Poly, precision: int) -> TruncatedSeries:
    """Inverse of a unit of k[[x]] modulo terms of total degree > precision."""
    if not p.is_unit():
        raise DomainError(f"{p} is not a unit (zero constant term)")
    field = p.field
    c = field.inv(p.constant_term())
    # p = c^-1 (1 - q) with q in the maximal ideal, so p^-1 = c (1 + q + q^2 + ...)
    q = p.ring.one() - p.scale(c)
    acc = p.ring.one()
    for _ in range(precision):
        acc = (p.ring.one() + q * acc).truncate(precision)
    return TruncatedSeries(acc.scale(c).truncate(precision), precision)
