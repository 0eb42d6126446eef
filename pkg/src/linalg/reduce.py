from __future__ import annotations
from dataclasses import dataclass
from typing import Optional, Tuple

from errors import DomainError, UsageError
from ring import Poly, series_inverse
from .matrix import identity, PolyMatrix


@dataclass(frozen=True)
class PivotPolicy:
    """exact: only nonzero scalar pivots. truncated: any unit, inverted as a series up to `precision`."""

    mode: str = "exact"
    precision: Optional[int] = None

    def __post_init__(self) -> None:
        if self.mode not in ("exact", "truncated"):
            raise UsageError(f"unknown mode {self.mode!r} (expected exact or truncated)")
        if self.truncated and (self.precision is None or self.precision < 0):
            raise UsageError("truncated mode needs a non-negative precision")

    @property
    def truncated(self) -> bool:
        return self.mode == "truncated"

    def admits(self, p: Poly) -> bool:
        if self.truncated:
            return p.is_unit()
        return p.is_constant() and not p.is_zero()

    def inverse(self, p: Poly) -> Poly:
        if not self.admits(p):
            raise DomainError(f"{p} is not an admissible pivot in {self.mode} mode")
        if self.truncated:
            return series_inverse(p, self.precision).poly
        return p.ring.const(p.field.inv(p.constant_term()))

    def clean(self, p: Poly) -> Poly:
        return p.truncate(self.precision) if self.truncated else p

    def clean_matrix(self, m: PolyMatrix) -> PolyMatrix:
        return m.truncate(self.precision) if self.truncated else m

    def same(self, a: PolyMatrix, b: PolyMatrix) -> bool:
        """Equality, modulo degree precision+1 in truncated mode."""
        return self.clean_matrix(a) == self.clean_matrix(b)

    def describe(self) -> dict:
        return {"mode": self.mode, "precision": self.precision}


EXACT = PivotPolicy()


@dataclass
class BaseChange:
    left: PolyMatrix
    right: PolyMatrix
    left_inv: PolyMatrix
    right_inv: PolyMatrix
    policy: PivotPolicy = EXACT

    @property
    def mode(self) -> str:
        return self.policy.mode

    def is_invertible(self) -> bool:
        same = self.policy.same
        ring = self.left.ring
        return (
            same(self.left @ self.left_inv, identity(ring, self.left.rows))
            and same(self.left_inv @ self.left, identity(ring, self.left.rows))
            and same(self.right @ self.right_inv, identity(ring, self.right.rows))
            and same(self.right_inv @ self.right, identity(ring, self.right.rows))
        )

    def verify(self, source: PolyMatrix, target: PolyMatrix) -> bool:
        return self.policy.same(self.left @ source @ self.right, target) and self.is_invertible()


def invert_unitriangular(m: PolyMatrix) -> PolyMatrix:
    if not m.is_square():
        raise DomainError(f"{m.rows}x{m.cols} matrix is not square")
    n = m.rows
    upper = all(m[i, j].is_zero() for i in range(n) for j in range(i))
    lower = all(m[i, j].is_zero() for i in range(n) for j in range(i + 1, n))
    if not (upper or lower) or any(m[i, i] != 1 for i in range(n)):
        raise DomainError("matrix is not unitriangular")
    ident = identity(m.ring, n)
    minus_nil = ident - m
    # (I - N)^-1 = I + N + N^2 + ... terminates since N is nilpotent
    result, term = ident, ident
    for _ in range(max(n - 1, 0)):
        term = term @ minus_nil
        if term.is_zero():
            break
        result = result + term
    return result


class _Work:
    """Mutable row-major grid of polynomials for in-place elimination."""

    def __init__(self, m: PolyMatrix, policy: PivotPolicy) -> None:
        self.ring = m.ring
        self.rows = [list(r) for r in m.entries]
        self.ncols = m.cols
        self.clean = policy.clean

    def swap_rows(self, a: int, b: int) -> None:
        self.rows[a], self.rows[b] = self.rows[b], self.rows[a]

    def swap_cols(self, a: int, b: int) -> None:
        for r in self.rows:
            r[a], r[b] = r[b], r[a]

    def scale_row(self, a: int, c: Poly) -> None:
        self.rows[a] = [self.clean(x * c) for x in self.rows[a]]

    def scale_col(self, a: int, c: Poly) -> None:
        for r in self.rows:
            r[a] = self.clean(r[a] * c)

    def add_row(self, a: int, b: int, c: Poly) -> None:
        """row a += c * row b"""
        self.rows[a] = [self.clean(x + c * y) for x, y in zip(self.rows[a], self.rows[b])]

    def add_col(self, a: int, b: int, c: Poly) -> None:
        """col a += c * col b"""
        for r in self.rows:
            r[a] = self.clean(r[a] + c * r[b])

    def matrix(self) -> PolyMatrix:
        return PolyMatrix(self.ring, self.rows, len(self.rows), self.ncols)


class _RowOps:
    """Applies row operations to M while recording L (same ops) and L^-1 (inverse ops on columns)."""

    def __init__(self, m: PolyMatrix, policy: PivotPolicy) -> None:
        self.policy = policy
        self.a = _Work(m, policy)
        self.left = _Work(identity(m.ring, m.rows), policy)
        self.left_inv = _Work(identity(m.ring, m.rows), policy)

    def swap(self, i: int, j: int) -> None:
        if i != j:
            self.a.swap_rows(i, j)
            self.left.swap_rows(i, j)
            self.left_inv.swap_cols(i, j)

    def normalize(self, r: int, col: int) -> None:
        u = self.a.rows[r][col]
        v = self.policy.inverse(u)
        self.a.scale_row(r, v)
        self.left.scale_row(r, v)
        self.left_inv.scale_col(r, u)

    def clear_column(self, r: int, col: int) -> None:
        for i in range(len(self.a.rows)):
            c = self.a.rows[i][col]
            if i != r and not c.is_zero():
                self.a.add_row(i, r, -c)
                self.left.add_row(i, r, -c)
                self.left_inv.add_col(r, i, c)


def elementary_reduce(m: PolyMatrix, policy: PivotPolicy = EXACT) -> Tuple[PolyMatrix, BaseChange, int]:
    """Invertible row and column operations bringing M to [I_r 0; 0 M''].

    Pivots are searched row-major in the trailing block; the loop stops at the first
    trailing block without an admissible pivot (a fixpoint, not an error).
    Returns (M', base change with M' = left @ M @ right, r).
    """
    rows = _RowOps(m, policy)
    right = _Work(identity(m.ring, m.cols), policy)
    right_inv = _Work(identity(m.ring, m.cols), policy)
    a = rows.a
    r = 0
    while r < min(m.rows, m.cols):
        pivot = next(
            ((i, j) for i in range(r, m.rows) for j in range(r, m.cols) if policy.admits(a.rows[i][j])),
            None,
        )
        if pivot is None:
            break
        i, j = pivot
        rows.swap(r, i)
        if j != r:
            a.swap_cols(r, j)
            right.swap_cols(r, j)
            right_inv.swap_rows(r, j)
        rows.normalize(r, r)
        rows.clear_column(r, r)
        for j2 in range(m.cols):
            c = a.rows[r][j2]
            if j2 != r and not c.is_zero():
                a.add_col(j2, r, -c)
                right.add_col(j2, r, -c)
                right_inv.add_row(r, j2, c)
        r += 1
    change = BaseChange(rows.left.matrix(), right.matrix(), rows.left_inv.matrix(), right_inv.matrix(), policy)
    return a.matrix(), change, r


def left_reduce(m: PolyMatrix, policy: PivotPolicy = EXACT) -> Tuple[PolyMatrix, PolyMatrix]:
    """Row operations only: returns (L, L^-1) with L @ M = [I; 0]. M must be split injective."""
    if m.cols > m.rows:
        raise DomainError(f"{m.rows}x{m.cols} matrix cannot be split injective")
    rows = _RowOps(m, policy)
    for col in range(m.cols):
        pivot = next((i for i in range(col, m.rows) if policy.admits(rows.a.rows[i][col])), None)
        if pivot is None:
            hint = "; retry in truncated mode" if not policy.truncated else ""
            raise DomainError(f"no admissible pivot in column {col} ({policy.mode} mode){hint}")
        rows.swap(col, pivot)
        rows.normalize(col, col)
        rows.clear_column(col, col)
    return rows.left.matrix(), rows.left_inv.matrix()


def right_reduce(m: PolyMatrix, policy: PivotPolicy = EXACT) -> Tuple[PolyMatrix, PolyMatrix]:
    """Column operations only: returns (R, R^-1) with M @ R = [I 0]. M must be surjective."""
    left, left_inv = left_reduce(m.T, policy)
    return left.T, left_inv.T

