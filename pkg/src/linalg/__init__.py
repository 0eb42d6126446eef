from .matrix import (
    block,
    direct_sum,
    hstack,
    identity,
    mat_add,
    mat_mul,
    permutation_matrix,
    PolyMatrix,
    scalar_matrix,
    vstack,
    zeros,
)
from .rank import generic_rank, random_point, RankConfig, residue_rank, scalar_det, scalar_rank
from .reduce import BaseChange, elementary_reduce, EXACT, invert_unitriangular, left_reduce, PivotPolicy, right_reduce
