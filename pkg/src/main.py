from pathlib import Path
import logging

import hydra
from omegaconf import DictConfig, OmegaConf
import wandb

from corpus import CERTIFIED, corpus, corpus_run, load_document, Settings
from utils import set_seed


logger = logging.getLogger(__name__)


@hydra.main(config_path="../config", config_name="toolkit", version_base="1.3")
def main(cfg: DictConfig) -> None:
    root_dir = Path(hydra.utils.get_original_cwd())
    settings = Settings.from_cfg(cfg)
    set_seed(settings.seed)
    wandb.init(config=OmegaConf.to_container(cfg, resolve=True), reinit=True, **cfg.wandb)

    if cfg.corpus.path is None:
        docs = corpus()
    else:
        docs = [load_document(p) for p in sorted((root_dir / cfg.corpus.path).glob("*.mf"))]
    commands = list(cfg.corpus.commands) if cfg.corpus.commands else CERTIFIED

    # hydra.job.chdir puts relative output paths under the run directory
    summary = corpus_run(docs, settings, Path(cfg.corpus.out), commands)
    failed = [k for k, v in summary.verdicts.items() if not v]
    logger.info("%d documents, %d verdicts, %d failed", len(docs), len(summary.verdicts), len(failed))
    for key in failed:
        logger.warning("failed: %s", key)
    wandb.finish()


if __name__ == "__main__":
    main()
