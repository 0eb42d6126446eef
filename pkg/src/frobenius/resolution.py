from __future__ import annotations
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from linalg import generic_rank, RankConfig
from mf import MatrixFactorization, Morphism
from .structure import StructureMaps, structure_maps, syzygy_cosyzygy_iso


@dataclass
class PeriodicResolution:
    """... -> I(X) --p--> P(X) --q--> I(X) --p--> P(X) -> ... with p = eps o alpha^-1 o eta and q = lambda o rho."""

    x: MatrixFactorization
    p: Morphism
    q: Morphism
    maps: StructureMaps

    def check(self, rank_cfg: Optional[RankConfig] = None, rng: Optional[np.random.Generator] = None) -> Dict[str, Any]:
        rank_cfg = RankConfig() if rank_cfg is None else rank_cfg
        rng = np.random.default_rng(0) if rng is None else rng
        d, n = self.x.d, self.x.n
        p_ranks = [generic_rank(self.p.alpha(k), rank_cfg.trials, rng, rank_cfg.sample_bound) for k in range(1, d + 1)]
        q_ranks = [generic_rank(self.q.alpha(k), rank_cfg.trials, rng, rank_cfg.sample_bound) for k in range(1, d + 1)]
        out = {
            "p_verified": self.p.verify().valid,
            "q_verified": self.q.verify().valid,
            "pq_zero": self.p.compose(self.q).is_zero(),
            "qp_zero": self.q.compose(self.p).is_zero(),
            "p_ranks": p_ranks,
            "q_ranks": q_ranks,
            "rank_split": all(a == (d - 1) * n and b == n for a, b in zip(p_ranks, q_ranks)),
        }
        out["exact"] = all(out[key] for key in ("p_verified", "q_verified", "pq_zero", "qp_zero", "rank_split"))
        return out


def periodic_resolution(x: MatrixFactorization, maps: Optional[StructureMaps] = None) -> PeriodicResolution:
    maps = structure_maps(x) if maps is None else maps
    iso = syzygy_cosyzygy_iso(x, maps)
    p = maps.eps.compose(iso.inverse).compose(maps.eta)
    q = maps.lam.compose(maps.rho)
    return PeriodicResolution(x, p, q, maps)
