from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import keyword
import re
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Poly as SymbolicPoly, Symbol
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.domains import QQ as RationalField
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import PolynomialError
from sympy.polys.rings import PolyElement, PolyRing as SparseRing

from errors import ParseError, UsageError
from .field import FieldSpec, Scalar


Monomial = Tuple[int, ...]

_VAR_NAME = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")
_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*/^()]))")
# names emitted by the expression transformations
_RESERVED = frozenset({"Integer", "Rational", "Float", "Symbol"})
_TRANSFORMATIONS = standard_transformations + (convert_xor,)


def grlex_key(m: Monomial) -> Tuple[int, Monomial]:
    return sum(m), m


@lru_cache(maxsize=None)
def _sparse_ring(field: FieldSpec, names: Tuple[str, ...]) -> SparseRing:
    return SparseRing([Symbol(v) for v in names], field.domain, grlex)


@dataclass(frozen=True)
class PolyRing:
    """Polynomials k[x_1..x_m], read as elements of the local ring k[[x_1..x_m]]."""

    field: FieldSpec
    vars: Tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vars", tuple(self.vars))
        if not self.vars:
            raise UsageError("a polynomial ring needs at least one variable")
        if len(set(self.vars)) != len(self.vars):
            raise UsageError(f"repeated variable names: {self.vars}")
        for v in self.vars:
            if not _VAR_NAME.match(v) or keyword.iskeyword(v) or v in _RESERVED:
                raise UsageError(f"invalid variable name: {v!r}")

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def sparse(self) -> SparseRing:
        return _sparse_ring(self.field, self.vars)

    def __repr__(self) -> str:
        return f"{self.field.name}[{','.join(self.vars)}]"

    def poly(self, terms: Dict[Monomial, Scalar]) -> Poly:
        to_domain = self.field.to_domain
        return Poly(self, self.sparse.from_dict({m: to_domain(c) for m, c in terms.items()}))

    def zero(self) -> Poly:
        return Poly(self, self.sparse.zero)

    def one(self) -> Poly:
        return Poly(self, self.sparse.one)

    def const(self, c: Scalar) -> Poly:
        return self.poly({(0,) * self.nvars: c})

    def gen(self, i: int) -> Poly:
        return Poly(self, self.sparse.gens[i])

    def var(self, name: str) -> Poly:
        if name not in self.vars:
            raise UsageError(f"unknown variable {name!r} (ring has {', '.join(self.vars)})")
        return self.gen(self.vars.index(name))

    def gens(self) -> List[Poly]:
        return [self.gen(i) for i in range(self.nvars)]

    def coerce(self, x: Union[Poly, Scalar, str]) -> Poly:
        if isinstance(x, Poly):
            if x.ring != self:
                raise UsageError(f"polynomial over {x.ring} used in {self}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        return self.const(x)

    def parse(self, text: str, line: Optional[int] = None) -> Poly:
        """The grammar is checked first so errors carry a column; sympy then builds the value over QQ."""
        _Grammar(self, text, line).check()
        symbols = self.sparse.symbols
        try:
            expr = parse_expr(text, local_dict=dict(zip(self.vars, symbols)), transformations=_TRANSFORMATIONS)
            coeffs = SymbolicPoly(expr, *symbols, domain=RationalField).as_dict()
        except (SyntaxError, PolynomialError) as e:
            raise ParseError(f"{e} in {text!r}", line, 1) from e
        return self.poly({m: Fraction(int(c.p), int(c.q)) for m, c in coeffs.items()})

    def change_field(self, field: FieldSpec) -> PolyRing:
        return PolyRing(field, self.vars)

    def random_poly(
        self,
        rng: np.random.Generator,
        degree: int = 2,
        num_terms: int = 3,
        bound: int = 5,
        min_degree: int = 0,
    ) -> Poly:
        terms: Dict[Monomial, Scalar] = {}
        for _ in range(num_terms):
            total = int(rng.integers(min_degree, degree + 1))
            exps = [0] * self.nvars
            for _ in range(total):
                exps[int(rng.integers(0, self.nvars))] += 1
            c = self.field.random_element(rng, bound=bound, nonzero=True)
            m = tuple(exps)
            terms[m] = self.field.add(terms.get(m, self.field.zero()), c)
        return self.poly(terms)


class Poly:
    """An element of a PolyRing, held as a sympy sparse polynomial over the ring's domain."""

    __slots__ = ("ring", "rep")

    def __init__(self, ring: PolyRing, rep: PolyElement) -> None:
        self.ring = ring
        self.rep = rep

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    @property
    def terms(self) -> Dict[Monomial, Scalar]:
        from_domain = self.field.from_domain
        return {m: from_domain(c) for m, c in self.rep.items()}

    def _coerce(self, other: Union[Poly, Scalar]) -> Poly:
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise UsageError(f"mixed rings: {self.ring} and {other.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other: Union[Poly, Scalar]) -> Poly:
        return Poly(self.ring, self.rep + self._coerce(other).rep)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.ring, -self.rep)

    def __sub__(self, other: Union[Poly, Scalar]) -> Poly:
        return Poly(self.ring, self.rep - self._coerce(other).rep)

    def __rsub__(self, other: Union[Poly, Scalar]) -> Poly:
        return self._coerce(other) - self

    def __mul__(self, other: Union[Poly, Scalar]) -> Poly:
        return Poly(self.ring, self.rep * self._coerce(other).rep)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        assert e >= 0
        return Poly(self.ring, self.rep ** e)

    def scale(self, c: Scalar) -> Poly:
        return Poly(self.ring, self.rep.mul_ground(self.field.to_domain(c)))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.rep == other.rep

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.rep.items())))

    def is_zero(self) -> bool:
        return not self.rep

    def constant_term(self) -> Scalar:
        c = self.rep.get(self.rep.ring.zero_monom)
        return self.field.zero() if c is None else self.field.from_domain(c)

    def is_unit(self) -> bool:
        """Units of k[[x]] are exactly the series with nonzero constant term."""
        return self.constant_term() != 0

    def is_constant(self) -> bool:
        return self.rep.is_ground

    def total_degree(self) -> int:
        return max((sum(m) for m in self.rep), default=0)

    def low_degree(self) -> int:
        return min((sum(m) for m in self.rep), default=0)

    def truncate(self, n: int) -> Poly:
        return Poly(self.ring, self.rep.ring.from_dict({m: c for m, c in self.rep.items() if sum(m) <= n}))

    def eval(self, point: Sequence[Scalar]) -> Scalar:
        if len(point) != self.ring.nvars:
            raise UsageError(f"point has {len(point)} coordinates, ring has {self.ring.nvars} variables")
        field = self.field
        return field.from_domain(self.rep(*[field.to_domain(a) for a in point]))

    def map_field(self, ring: PolyRing) -> Poly:
        if ring.vars != self.ring.vars:
            raise UsageError(f"cannot map {self.ring} to {ring}")
        if self.field.is_prime_field and ring.field != self.field:
            raise UsageError(f"cannot lift {self.ring} to {ring}")
        return ring.poly(self.terms)

    def sorted_terms(self) -> List[Tuple[Monomial, Scalar]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(self.ring.vars, m) if e > 0)
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append(f"-{mono}")
            else:
                pieces.append(f"{c}*{mono}")
        out = pieces[0]
        for piece in pieces[1:]:
            out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self}, {self.ring})"


def poly_add(a: Poly, b: Poly) -> Poly:
    return a + b


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def poly_neg(a: Poly) -> Poly:
    return -a


def poly_scale(a: Poly, c: Union[Poly, Scalar]) -> Poly:
    return a * c if isinstance(c, Poly) else a.scale(c)


def poly_sum(polys: Iterable[Poly], ring: PolyRing) -> Poly:
    total = ring.zero()
    for p in polys:
        total = total + p
    return total


def parse_poly(ring: PolyRing, text: str) -> Poly:
    return ring.parse(text)


class _Grammar:
    """Validates polynomial text ahead of evaluation, reporting 1-based columns."""

    # expr := [+-] term ([+-] term)* ; term := power ([*] power | [/] number)* ;
    # power := atom ([^] int)? ; atom := number | var | ( expr )

    def __init__(self, ring: PolyRing, text: str, line: Optional[int]) -> None:
        self.ring = ring
        self.text = text
        self.line = line
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _error(self, message: str, column: Optional[int] = None) -> ParseError:
        if column is None:
            column = self.tokens[self.pos][2] if self.pos < len(self.tokens) else len(self.text) + 1
        return ParseError(f"{message} in {self.text!r}", self.line, column)

    def _tokenize(self, text: str) -> List[Tuple[str, str, int]]:
        tokens, i = [], 0
        while i < len(text):
            if text[i:].strip() == "":
                break
            m = _TOKEN.match(text, i)
            if m is None:
                col = i + 1 + (len(text[i:]) - len(text[i:].lstrip()))
                raise ParseError(f"unexpected character {text[col - 1]!r} in {text!r}", self.line, col)
            kind = m.lastgroup
            tokens.append((kind, m.group(kind), m.start(kind) + 1))
            i = m.end()
        return tokens

    def _peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self, value: Optional[str] = None) -> Tuple[str, str, int]:
        tok = self._peek()
        if tok is None:
            raise self._error("unexpected end of input")
        if value is not None and tok[1] != value:
            raise self._error(f"expected {value!r}, found {tok[1]!r}")
        self.pos += 1
        return tok

    def check(self) -> None:
        if not self.tokens:
            raise ParseError("empty polynomial", self.line, 1)
        self._expr()
        if self._peek() is not None:
            raise self._error(f"unexpected token {self._peek()[1]!r}")

    def _expr(self) -> None:
        tok = self._peek()
        if tok is not None and tok[0] == "op" and tok[1] in ("+", "-"):
            self.pos += 1
        self._term()
        while True:
            tok = self._peek()
            if tok is None or tok[1] not in ("+", "-"):
                return
            self.pos += 1
            self._term()

    def _term(self) -> None:
        self._power()
        while True:
            tok = self._peek()
            if tok is None or tok[1] not in ("*", "/"):
                return
            self.pos += 1
            if tok[1] == "*":
                self._power()
                continue
            kind, value, col = self._take()
            if kind != "num":
                raise self._error("only integer divisors are allowed", col)
            char = self.ring.field.characteristic
            if (int(value) % char if char else int(value)) == 0:
                raise self._error(f"division by {value}", col)

    def _power(self) -> None:
        self._atom()
        tok = self._peek()
        if tok is not None and tok[1] in ("^", "**"):
            self.pos += 1
            kind, _, col = self._take()
            if kind != "num":
                raise self._error("exponent must be a non-negative integer", col)

    def _atom(self) -> None:
        kind, value, col = self._take()
        if kind == "num":
            return
        if kind == "var":
            if value not in self.ring.vars:
                raise self._error(f"unknown variable {value!r}", col)
            return
        if value == "(":
            self._expr()
            self._take(")")
            return
        raise self._error(f"unexpected token {value!r}", col)
