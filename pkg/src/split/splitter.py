from __future__ import annotations
from dataclasses import dataclass, field
import logging
from typing import Any, Dict, List, Optional, Tuple

from errors import DomainError, UsageError
from frobenius import syzygy
from linalg import direct_sum, EXACT, hstack, identity, PivotPolicy, PolyMatrix, residue_rank, vstack
from mf import MatrixFactorization, proj_sum, zero_mf


logger = logging.getLogger(__name__)


@dataclass
class SplitConfig:
    mode: str = "exact"
    precision: Optional[int] = None

    def policy(self) -> PivotPolicy:
        return PivotPolicy(self.mode, self.precision)


@dataclass
class SyzygyPrediction:
    """m_k = n - mu(cok phi_k) free summands and a stable part of size sum mu_k - n."""

    m: List[int]
    stable_size: int

    def to_dict(self) -> Dict[str, Any]:
        return {"m": self.m, "stable_size": self.stable_size}


@dataclass
class SplitResult:
    """source_k = base_k @ decomposed_k @ base_inv_{k+1}, decomposed = stable_part + P_1^{s_1} + ... + P_d^{s_d}."""

    source: MatrixFactorization
    stable_part: MatrixFactorization
    multiplicities: List[int]
    base: List[PolyMatrix]
    base_inv: List[PolyMatrix]
    policy: PivotPolicy = EXACT
    fixpoint_clean: bool = True
    detached: List[int] = field(default_factory=list)

    @property
    def decomposed(self) -> MatrixFactorization:
        return self.stable_part.direct_sum(proj_sum(self.multiplicities, self.source.f))

    def verify(self) -> Dict[str, Any]:
        x, pol, dec = self.source, self.policy, self.decomposed
        d = x.d
        inverses = [pol.same(self.base_inv[k] @ self.base[k], identity(x.ring, x.n)) for k in range(d)]
        conjugates = [
            pol.same(self.base_inv[k] @ x.phi(k + 1) @ self.base[(k + 1) % d], dec.phi(k + 1)) for k in range(d)
        ]
        target = identity(x.ring, self.stable_part.n).scale(x.f)
        stable_valid = all(pol.same(self.stable_part.rotation_product(k), target) for k in range(1, d + 1))
        return {
            "inverses": all(inverses),
            "conjugates": all(conjugates),
            "stable_valid": stable_valid,
            "valid": all(inverses) and all(conjugates) and stable_valid,
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "multiplicities": self.multiplicities,
            "stable_size": self.stable_part.n,
            "detached": self.detached,
            "fixpoint_clean": self.fixpoint_clean,
            **self.policy.describe(),
        }


def is_pseudoprojective(x: MatrixFactorization) -> bool:
    if x.n == 0:
        raise UsageError("pseudoprojectivity is not defined for the zero factorization")
    return any(residue_rank(x.phi(k)) == x.n for k in range(1, x.d + 1))


def predict_syzygy_split(x: MatrixFactorization) -> SyzygyPrediction:
    mus = [x.min_gens(k) for k in range(1, x.d + 1)]
    return SyzygyPrediction([x.n - mu for mu in mus], sum(mus) - x.n)


def _find_pivot(x: MatrixFactorization, policy: PivotPolicy) -> Optional[Tuple[int, int, int]]:
    """First slot i whose theta_{(i+1)i} has an admissible entry; returns (i, row, col)."""
    for i in range(1, x.d + 1):
        big = x.theta(i + 1, i)
        for b in range(x.n):
            for a in range(x.n):
                if policy.admits(big[b, a]):
                    return i, b, a
    return None


def _detach(
    x: MatrixFactorization, i: int, b: int, a: int, policy: PivotPolicy
) -> Tuple[List[PolyMatrix], List[PolyMatrix]]:
    """Base changes G_j with G_j^-1 phi_j G_{j+1} = diag(c_j, rest), c_i = f and c_j = 1 otherwise.

    G_j = (iota_j | P_j e_m, m != t) with iota_j = theta_{ji} e_a, pi_j = e_b^T theta_{(i+1)j}
    and P_j = 1 - iota_j u^-1 pi_j, where u = pi_j iota_j is the pivot.
    """
    n, ring = x.n, x.ring
    ident = identity(ring, n)
    u_inv = policy.inverse(x.theta(i + 1, i)[b, a])
    gs, g_invs = [], []
    for j in range(1, x.d + 1):
        iota = x.theta(j, i).submatrix(range(n), [a])
        pi = x.theta(i + 1, j).submatrix([b], range(n))
        t = next((m for m in range(n) if policy.admits(iota[m, 0])), None)
        if t is None:
            hint = "; retry in truncated mode" if not policy.truncated else ""
            raise DomainError(f"strand of slot {i} has no admissible coordinate in F_{j} ({policy.mode} mode){hint}")
        rest = [m for m in range(n) if m != t]
        proj = policy.clean_matrix(ident - (iota @ pi).scale(u_inv))
        gs.append(hstack(iota, proj.submatrix(range(n), rest)))
        t_inv = policy.inverse(iota[t, 0])
        e_t = ident.submatrix([t], range(n))
        rows = [ident.submatrix([m], range(n)) - e_t.scale(iota[m, 0] * t_inv) for m in rest]
        g_invs.append(policy.clean_matrix(vstack(pi.scale(u_inv), *rows)))
    return gs, g_invs


def split_projectives(x: MatrixFactorization, policy: PivotPolicy = EXACT) -> SplitResult:
    """Detach size-1 projective strands until no theta_{(i+1)i} has an admissible entry."""
    if policy.truncated and policy.precision < x.f.total_degree():
        raise DomainError(f"precision {policy.precision} is below deg f = {x.f.total_degree()}")
    d, n, ring = x.d, x.n, x.ring
    base = [identity(ring, n)] * d
    base_inv = [identity(ring, n)] * d
    detached: List[int] = []
    current = x
    while current.n > 0:
        pivot = _find_pivot(current, policy)
        if pivot is None:
            break
        i, b, a = pivot
        gs, g_invs = _detach(current, i, b, a, policy)
        conj = [policy.clean_matrix(g_invs[j] @ current.phi(j + 1) @ gs[(j + 1) % d]) for j in range(d)]
        tail = range(1, current.n)
        current = MatrixFactorization(ring, x.f, [c.submatrix(tail, tail) for c in conj])
        done = identity(ring, len(detached))
        base = [policy.clean_matrix(base[j] @ direct_sum(done, gs[j])) for j in range(d)]
        base_inv = [policy.clean_matrix(direct_sum(done, g_invs[j]) @ base_inv[j]) for j in range(d)]
        detached.append(i)
        logger.debug("detached P%d at entry (%d, %d), %d left", i, b, a, current.n)

    clean = all(residue_rank(current.theta(i + 1, i)) == 0 for i in range(1, d + 1))
    if not clean:
        logger.info("splitter stopped with admissible strands out of reach in %s mode", policy.mode)
    t = len(detached)
    order = list(range(t, n)) + sorted(range(t), key=lambda p: detached[p])
    base = [g.permute(range(n), order) for g in base]
    base_inv = [g.permute(order, range(n)) for g in base_inv]
    multiplicities = [detached.count(i) for i in range(1, d + 1)]
    stable = current if current.n else zero_mf(ring, x.f, d)
    return SplitResult(x, stable, multiplicities, base, base_inv, policy, clean, detached)


def compare_with_prediction(x: MatrixFactorization, policy: PivotPolicy = EXACT) -> Dict[str, Any]:
    """Split Omega(X) and hold the result against m_k = n - mu(cok phi_k)."""
    omega, _ = syzygy(x)
    result = split_projectives(omega, policy)
    prediction = predict_syzygy_split(x)
    out = {
        "prediction": prediction.to_dict(),
        "observed": result.to_dict(),
        "verified": result.verify()["valid"],
        "multiplicities_match": result.multiplicities == prediction.m,
        "stable_size_match": result.stable_part.n == prediction.stable_size,
    }
    out["agrees"] = out["verified"] and out["multiplicities_match"] and out["stable_size_match"]
    if not out["agrees"]:
        logger.warning("splitter disagrees with the syzygy prediction for %r", x)
    return out
