import argparse
from pathlib import Path
import logging
import sys
from typing import List, Optional, Sequence

from hydra import compose, initialize
from omegaconf import DictConfig

from corpus import (
    CERTIFIED,
    COMMANDS,
    CONE_SOURCES,
    corpus,
    corpus_item,
    corpus_run,
    load_document,
    MFDocument,
    run_command,
    Settings,
)
from errors import DomainError, UsageError
from utils import configure_logging, set_seed


logger = logging.getLogger(__name__)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 2, 3
CORPUS_PREFIX = "corpus:"


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog="mf", description="Matrix factorizations with d factors: transforms and certificates.")
    parser.add_argument("command", choices=[*COMMANDS, "corpus-run"])
    parser.add_argument("inputs", nargs="*", help=f".mf files, or {CORPUS_PREFIX}NAME for a built-in corpus item.")
    parser.add_argument("-j", "--shift", type=int, default=1, help="Shift amount for the shift command.")
    parser.add_argument("--of", choices=CONE_SOURCES, default="identity", help="Morphism whose cone is built.")
    parser.add_argument("--seed", type=int, help="Random seed (default from config).")
    parser.add_argument("--trials", type=int, help="Generic-rank sampling trials.")
    parser.add_argument("--mode", choices=["exact", "truncated"], help="Pivot policy.")
    parser.add_argument("--precision", type=int, help="Truncation degree N for truncated mode.")
    parser.add_argument("--prime", type=int, help="Prime hosting cover computations.")
    parser.add_argument("--out", type=Path, help="Also write the output here (a directory for corpus-run).")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser.parse_args(argv)


def check_args(args: argparse.Namespace) -> None:
    if args.precision is not None and args.mode != "truncated":
        raise UsageError("--precision needs --mode truncated")
    if args.precision is not None and args.precision < 0:
        raise UsageError(f"--precision must be non-negative, got {args.precision}")
    if args.trials is not None and args.trials < 1:
        raise UsageError(f"--trials must be positive, got {args.trials}")
    if args.command == "corpus-run":
        if len(args.inputs) > 1:
            raise UsageError("corpus-run takes at most one directory")
    elif not args.inputs:
        raise UsageError(f"{args.command} needs at least one input")


def overrides(args: argparse.Namespace) -> List[str]:
    out = []
    if args.mode is not None:
        out.append(f"mode={args.mode}")
    if args.precision is not None:
        out.append(f"mode.precision={args.precision}")
    if args.seed is not None:
        out.append(f"common.seed={args.seed}")
    if args.trials is not None:
        out.append(f"rank.trials={args.trials}")
    if args.prime is not None:
        out.append(f"cover.prime={args.prime}")
    return out


def load_config(args: argparse.Namespace) -> DictConfig:
    with initialize(version_base="1.3", config_path="../config"):
        return compose(config_name="toolkit", overrides=overrides(args))


def read_input(source: str) -> MFDocument:
    if source.startswith(CORPUS_PREFIX):
        return corpus_item(source[len(CORPUS_PREFIX):])
    path = Path(source)
    if not path.is_file():
        raise UsageError(f"no such file: {source}")
    return load_document(path)


def read_directory(path: Path) -> List[MFDocument]:
    if not path.is_dir():
        raise UsageError(f"not a directory: {path}")
    docs = [load_document(p) for p in sorted(path.glob("*.mf"))]
    if not docs:
        raise UsageError(f"no .mf files in {path}")
    return docs


def run(args: argparse.Namespace) -> str:
    check_args(args)
    cfg = load_config(args)
    settings = Settings.from_cfg(cfg, shift=args.shift, cone_of=args.of)
    set_seed(settings.seed)
    if args.command == "corpus-run":
        docs = read_directory(Path(args.inputs[0])) if args.inputs else corpus()
        commands = list(cfg.corpus.commands) if cfg.corpus.commands else CERTIFIED
        return corpus_run(docs, settings, args.out, commands).dumps()
    docs = [read_input(source) for source in args.inputs]
    text = run_command(args.command, docs, settings).dumps()
    if args.out is not None:
        args.out.write_text(text)
    return text


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    configure_logging(args.verbose)
    try:
        text = run(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as e:
        print(f"domain error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
