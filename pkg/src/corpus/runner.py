from __future__ import annotations
from pathlib import Path
import logging
from typing import Any, Dict, List, Optional, Sequence

from tqdm import tqdm

from errors import DomainError
from split import is_pseudoprojective, predict_syzygy_split
from utils import wandb_log
from .certificate import Certificate, digest
from .commands import COMMANDS, run_command, Settings, TRANSFORMS
from .document import MFDocument


logger = logging.getLogger(__name__)

CERTIFIED = tuple(name for name in COMMANDS if name not in TRANSFORMS)


def check_meta(doc: MFDocument) -> Dict[str, bool]:
    """Recorded expectations of a corpus item against recomputed values."""
    x = doc.to_mf()
    meta = doc.meta
    out = {}
    if "min_gens" in meta:
        out["min_gens"] = [x.min_gens(k) for k in range(1, x.d + 1)] == meta["min_gens"]
    prediction = predict_syzygy_split(x)
    if "predicted_m" in meta:
        out["predicted_m"] = prediction.m == meta["predicted_m"]
    if "stable_size" in meta:
        out["stable_size"] = prediction.stable_size == meta["stable_size"]
    if "reduced" in meta:
        out["reduced"] = x.is_reduced() == meta["reduced"]
    if "pseudoprojective" in meta and x.n:
        out["pseudoprojective"] = is_pseudoprojective(x) == meta["pseudoprojective"]
    return out


def corpus_run(
    docs: Sequence[MFDocument],
    settings: Settings,
    out_dir: Optional[Path] = None,
    commands: Sequence[str] = CERTIFIED,
) -> Certificate:
    """Every certificate command on every document; domain errors are recorded as skips."""
    verdicts: Dict[str, bool] = {}
    skipped: List[Dict[str, str]] = []
    counts: Dict[str, Dict[str, int]] = {}
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
    for step, doc in enumerate(tqdm(docs, desc="corpus", disable=None)):
        name = doc.name or f"doc{step}"
        passed = failed = 0
        for key, ok in check_meta(doc).items():
            verdicts[f"{name}/meta/{key}"] = ok
        for command in commands:
            try:
                cert = run_command(command, [doc], settings)
            except DomainError as e:
                logger.info("%s skipped on %s: %s", command, name, e)
                skipped.append({"document": name, "command": command, "reason": str(e)})
                continue
            verdicts[f"{name}/{command}"] = cert.ok
            passed, failed = passed + cert.ok, failed + (not cert.ok)
            if not cert.ok:
                logger.warning("%s failed on %s: %s", command, name, [k for k, v in cert.verdicts.items() if not v])
            if out_dir is not None:
                target = out_dir / name
                target.mkdir(parents=True, exist_ok=True)
                cert.save(target / f"{command}.json")
        counts[name] = {"passed": passed, "failed": failed}
        wandb_log([{f"{name}/passed": passed, f"{name}/failed": failed}], step)
    summary = Certificate(
        command="corpus-run",
        inputs=digest(*[d.dumps() for d in docs]),
        verdicts=verdicts,
        evidence={"documents": len(docs), "counts": counts, "skipped": skipped, "commands": list(commands)},
        mode=settings.mode(),
        seed=settings.seed,
    )
    if out_dir is not None:
        summary.save(out_dir / "summary.json")
    return summary
