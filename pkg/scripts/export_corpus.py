#! /usr/bin/env python

import argparse
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from corpus import canonical, corpus  # noqa: E402


def main() -> None:
    parser = argparse.ArgumentParser(description="Write the built-in corpus as .mf files.")
    parser.add_argument("out", type=Path)
    parser.add_argument("--only", nargs="*", help="Item names to export (default: all).")
    args = parser.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    for doc in corpus():
        if args.only and doc.name not in args.only:
            continue
        path = args.out / f"{doc.name}.mf"
        canonical(doc).save(path)
        print(path)


if __name__ == "__main__":
    main()
