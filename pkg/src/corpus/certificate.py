from __future__ import annotations
from dataclasses import dataclass, field
from fractions import Fraction
import hashlib
import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np


def jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def digest(*texts: str) -> str:
    h = hashlib.sha256()
    for t in texts:
        h.update(t.encode())
        h.update(b"\0")
    return h.hexdigest()


@dataclass
class Certificate:
    command: str
    inputs: str
    verdicts: Dict[str, bool]
    evidence: Dict[str, Any] = field(default_factory=dict)
    mode: Dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())

    def to_dict(self) -> Dict[str, Any]:
        return jsonable(
            {
                "command": self.command,
                "inputs": {"sha256": self.inputs},
                "verdicts": self.verdicts,
                "evidence": self.evidence,
                "mode": self.mode,
                "seed": self.seed,
            }
        )

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.dumps())
