from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from sympy.polys.matrices import DomainMatrix

from errors import UsageError
from ring import FieldSpec, Scalar
from .matrix import PolyMatrix


@dataclass
class RankConfig:
    trials: int = 5
    sample_bound: int = 1000


def _domain_matrix(field: FieldSpec, rows: Sequence[Sequence[Scalar]]) -> DomainMatrix:
    entries = [[field.to_domain(a) for a in r] for r in rows]
    return DomainMatrix(entries, (len(entries), len(entries[0])), field.domain)


def scalar_rank(field: FieldSpec, rows: Sequence[Sequence[Scalar]]) -> int:
    if not rows or not rows[0]:
        return 0
    return _domain_matrix(field, rows).rank()


def scalar_det(field: FieldSpec, rows: Sequence[Sequence[Scalar]]) -> Scalar:
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise UsageError("determinant of a non-square matrix")
    if n == 0:
        return field.one()
    return field.from_domain(_domain_matrix(field, rows).det())


def residue_rank(m: PolyMatrix) -> int:
    """Rank over k of M(0); n minus this is the minimal number of generators of cok M."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return scalar_rank(m.ring.field, m.constant_part())


def generic_rank(
    m: PolyMatrix,
    trials: int = 5,
    rng: Optional[np.random.Generator] = None,
    sample_bound: int = 1000,
) -> int:
    """Rank over the fraction field, estimated as the max rank at random nonzero points."""
    if trials < 1:
        raise UsageError(f"trials must be >= 1, got {trials}")
    if m.rows == 0 or m.cols == 0:
        return 0
    rng = np.random.default_rng(0) if rng is None else rng
    field = m.ring.field
    full = min(m.rows, m.cols)
    best = 0
    for _ in range(trials):
        point = random_point(field, m.ring.nvars, rng, sample_bound)
        best = max(best, scalar_rank(field, m.eval(point)))
        if best == full:
            break
    return best


def random_point(field: FieldSpec, nvars: int, rng: np.random.Generator, sample_bound: int = 1000) -> List[Scalar]:
    return [field.random_element(rng, bound=sample_bound, nonzero=True) for _ in range(nvars)]
