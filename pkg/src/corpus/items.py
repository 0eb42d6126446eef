from __future__ import annotations
from typing import Any, Dict, List, Optional, Sequence

from errors import UsageError
from linalg import PolyMatrix
from mf import MatrixFactorization
from ring import FieldSpec, is_prime, PolyRing
from .document import MFDocument


Grid = Sequence[Sequence[str]]

E6_BETA = (
    [["y", "0", "x"], ["x", "-y^2", "0"], ["0", "x", "-y"]],
    [["-y^2", "0", "2*x"], ["2*x", "-y", "0"], ["0", "2*x", "y"]],
    [["-y", "0", "4*x"], ["4*x", "y", "0"], ["0", "4*x", "-y^2"]],
)
E6_ALPHA = [["y^3", "x^2", "x*y^2"], ["x*y", "-y^2", "x^2"], ["x^2", "-x*y", "-y^3"]]
IDENTITY_3 = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]


def _build(name: str, field: str, f: str, factors: Sequence[Grid], meta: Dict[str, Any]) -> MFDocument:
    ring = PolyRing(FieldSpec.from_name(field), ("x", "y"))
    n = len(factors[0])
    mats = [PolyMatrix(ring, [[ring.parse(a) for a in row] for row in grid], n, n) for grid in factors]
    x = MatrixFactorization(ring, ring.parse(f), mats, name, meta)
    return MFDocument.from_mf(x)


def corpus() -> List[MFDocument]:
    docs = [
        _build(
            "dinfty",
            "QQ",
            "x^2*y",
            [[["x", "y"], ["0", "-x"]], [["0", "y"], ["x^2", "-x"]], [["1", "0"], ["x", "y"]]],
            {"source": "D_infinity triple", "min_gens": [2, 2, 1], "predicted_m": [0, 0, 1], "stable_size": 3,
             "reduced": False, "pseudoprojective": False},
        ),
        _build(
            "triple",
            "QQ",
            "x^2*y + x*y^2",
            [[["x"]], [["y"]], [["x + y"]]],
            {"source": "product of three linear forms", "min_gens": [1, 1, 1], "predicted_m": [0, 0, 0],
             "stable_size": 2, "reduced": True, "pseudoprojective": False},
        ),
        _build(
            "e6",
            "GF(7)",
            "x^3 + y^4",
            E6_BETA,
            {"source": "E6 triple", "min_gens": [3, 3, 3], "predicted_m": [0, 0, 0], "stable_size": 6,
             "reduced": True, "pseudoprojective": False},
        ),
        _build(
            "e7",
            "GF(7)",
            "x^3 + x*y^3",
            [
                [["y", "0", "x"], ["-x", "x*y", "0"], ["0", "-x", "y"]],
                [["x*y", "0", "2*x"], ["-2*x", "y", "0"], ["0", "-2*x", "y"]],
                [["y", "0", "4*x"], ["-4*x", "y", "0"], ["0", "-4*x", "x*y"]],
            ],
            {"source": "E7 triple", "min_gens": [3, 3, 3], "predicted_m": [0, 0, 0], "stable_size": 6,
             "reduced": True, "pseudoprojective": False},
        ),
        _build(
            "e8a",
            "GF(7)",
            "x^3 + y^5",
            [
                [["y", "-x", "0"], ["0", "y", "-x"], ["x", "0", "y^3"]],
                [["y^3", "-2*x", "0"], ["0", "y", "-2*x"], ["2*x", "0", "y"]],
                [["y", "-4*x", "0"], ["0", "y^3", "-4*x"], ["4*x", "0", "y"]],
            ],
            {"source": "E8 first triple", "min_gens": [3, 3, 3], "predicted_m": [0, 0, 0], "stable_size": 6,
             "reduced": True, "pseudoprojective": False},
        ),
        _build(
            "e8b",
            "GF(7)",
            "x^3 + y^5",
            [
                [["y", "-x", "0"], ["0", "y^2", "-x"], ["x", "0", "y^2"]],
                [["y^2", "-2*x", "0"], ["0", "y", "-2*x"], ["2*x", "0", "y^2"]],
                [["y^2", "-4*x", "0"], ["0", "y^2", "-4*x"], ["4*x", "0", "y"]],
            ],
            {"source": "E8 second triple", "min_gens": [3, 3, 3], "predicted_m": [0, 0, 0], "stable_size": 6,
             "reduced": True, "pseudoprojective": False},
        ),
        _build(
            "pair",
            "QQ",
            "x*y",
            [[["x"]], [["y"]]],
            {"source": "d=2 pair", "min_gens": [1, 1], "predicted_m": [0, 0], "stable_size": 1,
             "reduced": True, "pseudoprojective": False},
        ),
        _build(
            "e6_pair",
            "GF(7)",
            "x^3 + y^4",
            [E6_BETA[0], E6_ALPHA],
            {"source": "E6 pair (beta, alpha)", "min_gens": [3, 3], "predicted_m": [0, 0], "stable_size": 3,
             "reduced": True, "pseudoprojective": False},
        ),
        _build(
            "e6_pseudo",
            "GF(7)",
            "x^3 + y^4",
            [E6_BETA[0], E6_ALPHA, IDENTITY_3],
            {"source": "E6 triple (beta, alpha, 1)", "min_gens": [3, 3, 0], "predicted_m": [0, 0, 3],
             "stable_size": 3, "reduced": False, "pseudoprojective": True},
        ),
    ]
    return docs


def corpus_item(name: str) -> MFDocument:
    for doc in corpus():
        if doc.name == name:
            return doc
    raise UsageError(f"no corpus item named {name!r} (have {', '.join(d.name for d in corpus())})")


def cover_prime(d: int, field: FieldSpec, override: Optional[int] = None) -> int:
    """The prime hosting cover computations: the characteristic of GF(p) items, else the smallest p with 2d | p - 1."""
    if field.is_prime_field:
        if override is not None and override != field.p:
            raise UsageError(f"item lives over {field.name}, cannot use prime {override}")
        return field.p
    if override is not None:
        return override
    p = 2 * d + 1
    while not is_prime(p):
        p += 2 * d
    return p
