#!/usr/bin/env python3
"""Build data/english_corpus.txt from the public-domain base texts.

The base pieces under data/base_texts/ total well under a megabyte, so the
corpus is grown by concatenating them over several rounds, rotating the
piece order each round to vary the seams. Character statistics are those
of the base prose; the output is fully deterministic.
"""

from __future__ import annotations

import sys
from pathlib import Path

TARGET_BYTES = 1_100_000

ROOT = Path(__file__).resolve().parent.parent
BASE_DIR = ROOT / "data" / "base_texts"
OUT_PATH = ROOT / "data" / "english_corpus.txt"


def main() -> int:
    pieces = [
        p.read_text(encoding="utf-8").strip() + "\n"
        for p in sorted(BASE_DIR.glob("*.txt"))
    ]
    if not pieces:
        print(f"no base texts in {BASE_DIR}", file=sys.stderr)
        return 1
    chunks: list[str] = []
    total = 0
    round_no = 0
    while total < TARGET_BYTES:
        shift = round_no % len(pieces)
        for piece in pieces[shift:] + pieces[:shift]:
            chunks.append(piece)
            total += len(piece.encode("utf-8"))
        round_no += 1
    corpus = "\n".join(chunks)
    OUT_PATH.write_text(corpus, encoding="utf-8")
    print(f"wrote {OUT_PATH} ({len(corpus.encode('utf-8'))} bytes, "
          f"{round_no} rounds of {len(pieces)} pieces)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
