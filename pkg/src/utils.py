import logging
import random
import sys
from typing import Any, Dict, List

import numpy as np
import wandb


Logs = List[Dict[str, Any]]


def configure_logging(verbose: bool = False) -> None:
    """stderr handler for the command line; stdout stays reserved for documents and certificates."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def set_seed(seed: int) -> None:
    random.seed(seed)
    np.random.seed(seed)


def wandb_log(logs: Logs, step: int) -> None:
    if wandb.run is None:
        return
    for d in logs:
        wandb.log({"step": step, **d})
