from __future__ import annotations
from dataclasses import dataclass, field
import logging
from typing import Any, Callable, Dict, List, Optional, Union

from hydra.utils import instantiate
import numpy as np
from omegaconf import DictConfig

from cover import (
    commutes_with_action,
    eigenspace_decompose,
    find_roots,
    functor_A,
    functor_B,
    functor_B_morphism,
    projector_check,
    psi_iso,
    skew_associativity_check,
)
from errors import UsageError
from frobenius import (
    cok_rank_bookkeeping,
    cosyzygy,
    Homotopy,
    homotopy_from_morphism,
    homotopy_verify,
    mapping_cone,
    null_homotopic_morphism,
    omega_signature,
    periodic_resolution,
    structure_maps,
    syzygy,
    syzygy_cosyzygy_iso,
)
from gamma import (
    associativity_check,
    eij_factorization,
    functor_F,
    functor_H,
    GammaAlgebra,
    gamma_z_power,
    regular_module,
    resolution_image,
)
from linalg import RankConfig
from mf import MatrixFactorization, Morphism, proj_sum
from ring import GF
from split import compare_with_prediction, is_pseudoprojective, predict_syzygy_split, split_projectives, SplitConfig
from .certificate import Certificate, digest
from .document import MFDocument
from .items import cover_prime


logger = logging.getLogger(__name__)

TRANSFORMS = ("shift", "sum", "syzygy", "cosyzygy")
CONE_SOURCES = ("identity", "zero", "lambda")


@dataclass
class Settings:
    seed: int = 0
    rank: RankConfig = field(default_factory=RankConfig)
    split: SplitConfig = field(default_factory=SplitConfig)
    prime: Optional[int] = None
    associativity_samples: int = 300
    shift: int = 1
    cone_of: str = "identity"

    @classmethod
    def from_cfg(cls, cfg: DictConfig, **overrides: Any) -> Settings:
        return cls(
            seed=cfg.common.seed,
            rank=instantiate(cfg.rank),
            split=instantiate(cfg.mode),
            prime=cfg.cover.prime,
            associativity_samples=cfg.gamma.associativity_samples,
            **overrides,
        )

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def mode(self) -> Dict[str, Any]:
        return {**self.split.policy().describe(), "trials": self.rank.trials}


Output = Union[Certificate, MFDocument]


def _certificate(name: str, docs: List[MFDocument], settings: Settings, verdicts: Dict[str, bool], evidence: Dict[str, Any]) -> Certificate:
    return Certificate(
        command=name,
        inputs=digest(*[d.dumps() for d in docs]),
        verdicts={k: bool(v) for k, v in verdicts.items()},
        evidence=evidence,
        mode=settings.mode(),
        seed=settings.seed,
    )


def _one(docs: List[MFDocument], name: str) -> MatrixFactorization:
    if len(docs) != 1:
        raise UsageError(f"{name} takes exactly one document, got {len(docs)}")
    return docs[0].to_mf()


def run_verify(docs: List[MFDocument], settings: Settings) -> Certificate:
    x = _one(docs, "verify")
    check = x.verify()
    evidence = {
        "d": x.d,
        "n": x.n,
        "rotations": check.rotations,
        "failing": check.failing,
        "min_gens": [x.min_gens(k) for k in range(1, x.d + 1)],
        "reduced": x.is_reduced(),
    }
    return _certificate("verify", docs, settings, {"valid": check.valid}, evidence)


def run_shift(docs: List[MFDocument], settings: Settings) -> MFDocument:
    return MFDocument.from_mf(_one(docs, "shift").shift(settings.shift))


def run_sum(docs: List[MFDocument], settings: Settings) -> MFDocument:
    if len(docs) != 2:
        raise UsageError(f"sum takes exactly two documents, got {len(docs)}")
    return MFDocument.from_mf(docs[0].to_mf().direct_sum(docs[1].to_mf()))


def run_syzygy(docs: List[MFDocument], settings: Settings) -> MFDocument:
    omega, _ = syzygy(_one(docs, "syzygy"))
    return MFDocument.from_mf(omega)


def run_cosyzygy(docs: List[MFDocument], settings: Settings) -> MFDocument:
    omega_minus, _ = cosyzygy(_one(docs, "cosyzygy"))
    return MFDocument.from_mf(omega_minus)


def run_iso_check(docs: List[MFDocument], settings: Settings) -> Certificate:
    x = _one(docs, "iso-check")
    maps = structure_maps(x)
    rng = settings.rng()
    iso = syzygy_cosyzygy_iso(x, maps).check()
    _, syz = syzygy(x, maps)
    _, cosyz = cosyzygy(x, maps)
    syz_check = syz.check(settings.rank, rng)
    cosyz_check = cosyz.check(settings.rank, rng)
    signature = omega_signature(x)
    bookkeeping = cok_rank_bookkeeping(x, maps)
    verdicts = {
        **iso,
        "syzygy_valid": maps.omega.verify().valid,
        "cosyzygy_valid": maps.omega_minus.verify().valid,
        "syzygy_sequence_exact": syz_check["exact"],
        "cosyzygy_sequence_exact": cosyz_check["exact"],
        "signature_matches": signature["observed"] == signature["expected"] and signature["size"][0] == signature["size"][1],
        "cok_ranks_match": all(row["mu_omega"] == row["mu_theta"] for row in bookkeeping),
    }
    evidence = {"signature": signature, "bookkeeping": bookkeeping, "syzygy_ranks": syz_check["ranks"], "cosyzygy_ranks": cosyz_check["ranks"]}
    return _certificate("iso-check", docs, settings, verdicts, evidence)


def run_cone(docs: List[MFDocument], settings: Settings) -> Certificate:
    x = _one(docs, "cone")
    maps = structure_maps(x)
    if settings.cone_of == "identity":
        alpha = Morphism.identity(x)
    elif settings.cone_of == "zero":
        alpha = Morphism.zero(x, x)
    elif settings.cone_of == "lambda":
        alpha = maps.lam
    else:
        raise UsageError(f"unknown cone source {settings.cone_of!r} (expected one of {', '.join(CONE_SOURCES)})")
    triangle = mapping_cone(alpha, maps)
    evidence = {"of": settings.cone_of, "size": triangle.cone.n}
    return _certificate("cone", docs, settings, triangle.check(), evidence)


def run_homotopy_verify(docs: List[MFDocument], settings: Settings) -> Certificate:
    x = _one(docs, "homotopy-verify")
    maps = structure_maps(x)
    s = Homotopy.random(x, x, settings.rng())
    gamma = null_homotopic_morphism(x, x, s, maps)
    alpha = gamma.compose(maps.lam)
    extracted = homotopy_from_morphism(gamma)
    zero_check = homotopy_verify(Morphism.zero(x, x), Homotopy.zero(x, x))
    verdicts = {
        "gamma_verified": gamma.verify().valid,
        "random_homotopy": homotopy_verify(alpha, s).valid,
        "extracted_homotopy": homotopy_verify(alpha, extracted).valid,
        "extraction_recovers_s": list(extracted.maps) == list(s.maps),
        "zero_homotopy": zero_check.valid,
    }
    return _certificate("homotopy-verify", docs, settings, verdicts, {"d": x.d, "n": x.n})


def run_split(docs: List[MFDocument], settings: Settings) -> Certificate:
    x = _one(docs, "split")
    result = split_projectives(x, settings.split.policy())
    check = result.verify()
    verdicts = {"valid": check["valid"], "inverses": check["inverses"], "conjugates": check["conjugates"], "fixpoint_clean": result.fixpoint_clean}
    return _certificate("split", docs, settings, verdicts, result.to_dict())


def run_predict(docs: List[MFDocument], settings: Settings) -> Certificate:
    x = _one(docs, "predict")
    prediction = predict_syzygy_split(x)
    comparison = compare_with_prediction(x, settings.split.policy())
    evidence = {
        **prediction.to_dict(),
        "min_gens": [x.min_gens(k) for k in range(1, x.d + 1)],
        "pseudoprojective": is_pseudoprojective(x) if x.n else None,
        "syzygy_split": comparison["observed"],
    }
    verdicts = {"splitter_agrees": comparison["agrees"], "split_verified": comparison["verified"]}
    return _certificate("predict", docs, settings, verdicts, evidence)


def run_resolution(docs: List[MFDocument], settings: Settings) -> Certificate:
    x = _one(docs, "resolution")
    rng = settings.rng()
    res = periodic_resolution(x)
    check = res.check(settings.rank, rng)
    image = resolution_image(res, settings.rank, rng)
    verdicts = {k: check[k] for k in ("p_verified", "q_verified", "pq_zero", "qp_zero", "rank_split")}
    verdicts["gamma_image_exact"] = image["valid"]
    evidence = {"p_ranks": check["p_ranks"], "q_ranks": check["q_ranks"], "gamma_ranks": image["ranks"]}
    return _certificate("resolution", docs, settings, verdicts, evidence)


def run_gamma_check(docs: List[MFDocument], settings: Settings) -> Certificate:
    x = _one(docs, "gamma-check")
    alg = GammaAlgebra(x.ring, x.f, x.d)
    assoc = associativity_check(alg, settings.associativity_samples, settings.rng())
    z_powers = all(gamma_z_power(alg, s) == alg.power(alg.z(), s) for s in range(1, 2 * alg.d + 2))
    chains = [eij_factorization(alg, i, j) for i, j in alg.basis() if i != j]
    module = functor_F(x, alg)
    regular = regular_module(alg)
    verdicts = {
        "associative": assoc["valid"],
        "z_power_closed_form": z_powers,
        "z_power_d_is_f": alg.power(alg.z(), alg.d) == alg.one().scale(x.f),
        "eij_chains": all(c.valid for c in chains),
        "module_relations": module.check()["valid"],
        "round_trip": functor_H(module) == x,
        "regular_module": regular.check()["valid"],
        "regular_is_projective_sum": functor_H(regular) == proj_sum([1] * alg.d, x.f),
    }
    evidence = {"rank": module.rank, "samples": assoc["samples"], "chains": len(chains)}
    return _certificate("gamma-check", docs, settings, verdicts, evidence)


def run_cover_check(docs: List[MFDocument], settings: Settings) -> Certificate:
    x = _one(docs, "cover-check")
    p = cover_prime(x.d, x.field, settings.prime)
    if not x.field.is_prime_field:
        x = x.change_field(GF(p))
    roots = find_roots(p, x.d)
    rng = settings.rng()
    psi = psi_iso(roots, x.ring, x.f)
    psi_check = psi.check()
    skew_assoc = skew_associativity_check(psi.skew, settings.associativity_samples, rng)
    module = functor_B(x, roots)
    eigen = eigenspace_decompose(module)
    projectors = projector_check(eigen)
    maps = structure_maps(x)
    lam = functor_B_morphism(maps.lam)
    verdicts = {
        "psi_multiplicative": psi_check["multiplicative"],
        "psi_bijective": psi_check["bijective"],
        "psi_idempotents": psi_check["idempotents"],
        "psi_z_power": psi_check["z_power"],
        "skew_associative": skew_assoc["valid"],
        "module_relations": module.check()["valid"],
        "projectors": all(projectors.values()),
        "eigen_ranks": eigen.ranks == [x.n] * x.d,
        "round_trip": functor_A(module) == x,
        "functorial": commutes_with_action(module, functor_B(maps.I, roots), lam),
    }
    evidence = {"roots": roots.to_dict(), "determinant": psi_check["determinant"], "eigen_ranks": eigen.ranks}
    return _certificate("cover-check", docs, settings, verdicts, evidence)


COMMANDS: Dict[str, Callable[[List[MFDocument], Settings], Output]] = {
    "verify": run_verify,
    "shift": run_shift,
    "sum": run_sum,
    "syzygy": run_syzygy,
    "cosyzygy": run_cosyzygy,
    "iso-check": run_iso_check,
    "cone": run_cone,
    "homotopy-verify": run_homotopy_verify,
    "split": run_split,
    "predict": run_predict,
    "resolution": run_resolution,
    "gamma-check": run_gamma_check,
    "cover-check": run_cover_check,
}


def run_command(name: str, docs: List[MFDocument], settings: Settings) -> Output:
    if name not in COMMANDS:
        raise UsageError(f"unknown command {name!r}")
    logger.debug("running %s on %d document(s)", name, len(docs))
    return COMMANDS[name](docs, settings)
