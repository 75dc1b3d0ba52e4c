"""Adapt pre-selected normative sentences (one per line) into CoNLL-U.

Sentence ids follow physical input line numbers; blank lines are ignored.
A line the backend cannot analyze is emitted as a comment block carrying a
warning, and processing continues.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .heuristic import HeuristicBackend, Word


def _block(sent_id: int, text: str, words: list[Word]) -> str:
    lines = [f"# sent_id = {sent_id}", f"# text = {text}"]
    for i, w in enumerate(words, start=1):
        lines.append("\t".join([str(i), w.form, w.lemma or w.form, w.upos, "_", "_",
                                str(w.head), w.deprel, "_", "_"]))
    return "\n".join(lines) + "\n"


def _warning_block(sent_id: int, text: str, reason: str) -> str:
    return (f"# sent_id = {sent_id}\n# text = {text}\n"
            f"# adapter-warning: unparseable line: {reason}\n")


def pick_backend(name: str = "auto"):
    if name == "heuristic":
        return HeuristicBackend()
    if name == "spacy":
        from .spacy_backend import SpacyBackend

        return SpacyBackend()
    from . import spacy_backend

    if spacy_backend.available():
        return spacy_backend.SpacyBackend()
    return HeuristicBackend()


def adapt(text: str, backend=None) -> tuple[str, int]:
    """Convert line-per-sentence text to CoNLL-U; returns (output, warnings)."""
    backend = backend or HeuristicBackend()
    blocks: list[str] = []
    warnings = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            words = backend.parse_line(line)
            if not words:
                continue
            blocks.append(_block(lineno, line, words))
        except Exception as exc:  # keep going; the block becomes a warning comment
            blocks.append(_warning_block(lineno, line, str(exc)))
            warnings += 1
    return "\n".join(blocks), warnings


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="normclause-adapt",
        description="Convert one-sentence-per-line text into CoNLL-U for clause extraction")
    parser.add_argument("input", help="UTF-8 text file, one pre-selected sentence per line")
    parser.add_argument("output", help="CoNLL-U output path")
    parser.add_argument("--backend", choices=["auto", "heuristic", "spacy"], default="auto")
    args = parser.parse_args(argv)

    try:
        text = Path(args.input).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: {args.input}: {exc}", file=sys.stderr)
        return 1
    try:
        backend = pick_backend(args.backend)
    except Exception as exc:
        print(f"error: backend {args.backend!r} unavailable: {exc}", file=sys.stderr)
        return 1
    output, warnings = adapt(text, backend)
    Path(args.output).write_text(output, encoding="utf-8")
    if warnings:
        print(f"warning: {warnings} line(s) could not be parsed", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
