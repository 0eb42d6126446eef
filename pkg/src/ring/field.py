from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import re
from typing import Any, Optional, Union

import numpy as np
from sympy import isprime
from sympy.polys.domains import Domain, FiniteField, QQ as RationalField

from errors import DomainError, UsageError


Scalar = Union[int, Fraction]

_GF_NAME = re.compile(r"^GF\((\d+)\)$")


def is_prime(p: int) -> bool:
    return bool(isprime(p))


@lru_cache(maxsize=None)
def _domain(p: Optional[int]) -> Domain:
    return RationalField if p is None else FiniteField(p)


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "QQ" or "GF"
    p: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind == "QQ":
            assert self.p is None
        elif self.kind == "GF":
            if self.p is None or not is_prime(self.p):
                raise UsageError(f"GF(p) needs a prime modulus, got {self.p}")
        else:
            raise UsageError(f"unknown field kind: {self.kind}")

    @classmethod
    def from_name(cls, name: str) -> FieldSpec:
        if name == "QQ":
            return QQ
        m = _GF_NAME.match(name)
        if m is None:
            raise UsageError(f"unknown field: {name!r} (expected QQ or GF(p))")
        return GF(int(m.group(1)))

    @property
    def name(self) -> str:
        return "QQ" if self.kind == "QQ" else f"GF({self.p})"

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "GF"

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "QQ" else self.p

    @property
    def domain(self) -> Domain:
        """The sympy ground domain backing polynomials and matrices over this field."""
        return _domain(self.p)

    def __repr__(self) -> str:
        return self.name

    # Elements are Fraction over QQ and int in [0, p) over GF(p).

    def elem(self, x: Scalar) -> Scalar:
        if self.kind == "QQ":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DomainError(f"{x} has no image in {self.name}")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def to_domain(self, x: Scalar) -> Any:
        x = self.elem(x)
        if self.kind == "QQ":
            return self.domain(x.numerator, x.denominator)
        return self.domain(x)

    def from_domain(self, a: Any) -> Scalar:
        if self.kind == "QQ":
            r = self.domain.to_sympy(a)
            return Fraction(int(r.p), int(r.q))
        return int(self.domain.to_sympy(a)) % self.p

    def zero(self) -> Scalar:
        return self.elem(0)

    def one(self) -> Scalar:
        return self.elem(1)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return a + b if self.kind == "QQ" else (a + b) % self.p

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return a - b if self.kind == "QQ" else (a - b) % self.p

    def neg(self, a: Scalar) -> Scalar:
        return -a if self.kind == "QQ" else (-a) % self.p

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b if self.kind == "QQ" else (a * b) % self.p

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise DomainError(f"division by zero in {self.name}")
        return 1 / Fraction(a) if self.kind == "QQ" else pow(int(a), -1, self.p)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def power(self, a: Scalar, e: int) -> Scalar:
        if e < 0:
            return self.power(self.inv(a), -e)
        return a ** e if self.kind == "QQ" else pow(int(a), e, self.p)

    def format(self, a: Scalar) -> str:
        return str(a)

    def random_element(self, rng: np.random.Generator, bound: int = 1000, nonzero: bool = False) -> Scalar:
        """Small integers for QQ, uniform residues for GF(p)."""
        if self.kind == "QQ":
            while True:
                x = int(rng.integers(-bound, bound + 1))
                if x != 0 or not nonzero:
                    return Fraction(x)
        low = 1 if nonzero else 0
        return int(rng.integers(low, self.p))


QQ = FieldSpec("QQ")


def GF(p: int) -> FieldSpec:
    return FieldSpec("GF", p)
