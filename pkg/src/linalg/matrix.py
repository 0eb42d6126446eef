from __future__ import annotations
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from errors import UsageError
from ring import Poly, PolyRing, Scalar


Entry = Union[Poly, Scalar, str]


class PolyMatrix:
    """Rectangular matrix over a PolyRing; rows x cols may be zero in either direction."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: PolyRing, entries: Sequence[Sequence[Entry]], rows: Optional[int] = None, cols: Optional[int] = None) -> None:
        self.ring = ring
        self.rows = len(entries) if rows is None else rows
        if cols is None:
            cols = len(entries[0]) if entries else 0
        self.cols = cols
        if len(entries) != self.rows:
            raise UsageError(f"expected {self.rows} rows, got {len(entries)}")
        for r in entries:
            if len(r) != self.cols:
                raise UsageError(f"ragged matrix: row of length {len(r)} in a {self.rows}x{self.cols} matrix")
        self.entries: Tuple[Tuple[Poly, ...], ...] = tuple(tuple(ring.coerce(e) for e in r) for r in entries)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx: Tuple[int, int]) -> Poly:
        i, j = idx
        return self.entries[i][j]

    def __iter__(self):
        return iter(self.entries)

    def _check_ring(self, other: PolyMatrix) -> None:
        if other.ring != self.ring:
            raise UsageError(f"mixed rings: {self.ring} and {other.ring}")

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        self._check_ring(other)
        if self.cols != other.rows:
            raise UsageError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        zero = self.ring.zero()
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = []
        for row in self.entries:
            out_row = []
            for col in cols:
                acc = zero
                for a, b in zip(row, col):
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return PolyMatrix(self.ring, out, self.rows, other.cols)

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        self._check_ring(other)
        if self.shape != other.shape:
            raise UsageError(f"cannot add {self.shape} and {other.shape}")
        return PolyMatrix(
            self.ring, [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)], self.rows, self.cols
        )

    def __neg__(self) -> PolyMatrix:
        return PolyMatrix(self.ring, [[-a for a in r] for r in self.entries], self.rows, self.cols)

    def __sub__(self, other: PolyMatrix) -> PolyMatrix:
        return self + (-other)

    def scale(self, c: Union[Poly, Scalar]) -> PolyMatrix:
        c = self.ring.coerce(c)
        return PolyMatrix(self.ring, [[a * c for a in r] for r in self.entries], self.rows, self.cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.ring, self.shape, self.entries))

    @property
    def T(self) -> PolyMatrix:
        if self.rows == 0:
            return zeros(self.ring, self.cols, 0)
        return PolyMatrix(self.ring, [list(c) for c in zip(*self.entries)], self.cols, self.rows)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> PolyMatrix:
        rows, cols = list(rows), list(cols)
        return PolyMatrix(self.ring, [[self.entries[i][j] for j in cols] for i in rows], len(rows), len(cols))

    def permute(self, row_order: Sequence[int], col_order: Sequence[int]) -> PolyMatrix:
        """Entry (a, b) of the result is entry (row_order[a], col_order[b]) of self."""
        assert sorted(row_order) == list(range(self.rows)) and sorted(col_order) == list(range(self.cols))
        return self.submatrix(row_order, col_order)

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.entries for a in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_scalar(self) -> bool:
        return all(a.is_constant() for r in self.entries for a in r)

    def is_identity(self) -> bool:
        return self.is_square() and self == identity(self.ring, self.rows)

    def constant_part(self) -> List[List[Scalar]]:
        return [[a.constant_term() for a in r] for r in self.entries]

    def eval(self, point: Sequence[Scalar]) -> List[List[Scalar]]:
        return [[a.eval(point) for a in r] for r in self.entries]

    def truncate(self, n: int) -> PolyMatrix:
        return PolyMatrix(self.ring, [[a.truncate(n) for a in r] for r in self.entries], self.rows, self.cols)

    def map_field(self, ring: PolyRing) -> PolyMatrix:
        return PolyMatrix(ring, [[a.map_field(ring) for a in r] for r in self.entries], self.rows, self.cols)

    def to_strings(self) -> List[List[str]]:
        return [[str(a) for a in r] for r in self.entries]

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(a) for a in r) for r in self.entries) + "]"

    def __repr__(self) -> str:
        return f"PolyMatrix({self.rows}x{self.cols}, {self})"


def zeros(ring: PolyRing, rows: int, cols: int) -> PolyMatrix:
    zero = ring.zero()
    return PolyMatrix(ring, [[zero] * cols for _ in range(rows)], rows, cols)


def identity(ring: PolyRing, n: int) -> PolyMatrix:
    zero, one = ring.zero(), ring.one()
    return PolyMatrix(ring, [[one if i == j else zero for j in range(n)] for i in range(n)], n, n)


def scalar_matrix(ring: PolyRing, n: int, c: Entry) -> PolyMatrix:
    return identity(ring, n).scale(ring.coerce(c))


def permutation_matrix(ring: PolyRing, order: Sequence[int]) -> PolyMatrix:
    """P with P @ v = v permuted so that (P @ v)[a] = v[order[a]]."""
    return identity(ring, len(order)).submatrix(order, range(len(order)))


def mat_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return a @ b


def mat_add(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return a + b


def block(grid: Sequence[Sequence[PolyMatrix]]) -> PolyMatrix:
    """Assemble a block matrix; heights agree along block rows and widths along block columns."""
    if not grid or not grid[0]:
        raise UsageError("block needs at least one block")
    ring = grid[0][0].ring
    ncols = len(grid[0])
    widths = [grid[0][c].cols for c in range(ncols)]
    entries: List[List[Poly]] = []
    for br, blocks in enumerate(grid):
        if len(blocks) != ncols:
            raise UsageError(f"block row {br} has {len(blocks)} blocks, expected {ncols}")
        height = blocks[0].rows
        for bc, m in enumerate(blocks):
            if m.ring != ring:
                raise UsageError(f"mixed rings in block matrix: {ring} and {m.ring}")
            if m.rows != height or m.cols != widths[bc]:
                raise UsageError(f"block ({br},{bc}) is {m.rows}x{m.cols}, expected {height}x{widths[bc]}")
        for i in range(height):
            entries.append([a for m in blocks for a in m.entries[i]])
    return PolyMatrix(ring, entries, len(entries), sum(widths))


def hstack(*ms: PolyMatrix) -> PolyMatrix:
    return block([list(ms)])


def vstack(*ms: PolyMatrix) -> PolyMatrix:
    return block([[m] for m in ms])


def direct_sum(*ms: PolyMatrix) -> PolyMatrix:
    if not ms:
        raise UsageError("direct_sum needs at least one matrix")
    ring = ms[0].ring
    return block([[m if i == j else zeros(ring, m.rows, other.cols) for j, other in enumerate(ms)] for i, m in enumerate(ms)])
