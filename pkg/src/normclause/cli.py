"""Command-line driver: extract, eval, export.

Exit codes: 0 success, 1 usage error, 2 input-format error, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .codiagram import build_model, export_model
from .depgraph import ConlluError, parse_conllu
from .evaluate import score
from .extractor import ClauseExtractor
from .lexicon import default_lexicon, empty_lexicon, load_lexicon
from .table import TableError, deserialize, serialize

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FORMAT = 2
EXIT_INTERNAL = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fail(path: str, exc: Exception) -> int:
    line = getattr(exc, "line", None)
    where = f"{path}:{line}" if line is not None else path
    print(f"error: {where}: {exc}", file=sys.stderr)
    return EXIT_FORMAT


def _table_format(path: Path) -> str:
    return "json" if path.suffix.lower() == ".json" else "csv"


def _read_table(path: Path, label_fallback: bool = True):
    """Load a table; CSV carries no intrinsic document id, so the file stem
    only serves as a display label when ``label_fallback`` is set."""
    try:
        data = path.read_bytes()
    except OSError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        return None
    try:
        return deserialize(data, format=_table_format(path),
                           doc_id=path.stem if label_fallback else "")
    except (TableError, ValueError) as exc:
        _fail(str(path), exc)
        return None


def cmd_extract(args) -> int:
    if args.rules_only:
        lexicon = empty_lexicon()
    elif args.lexicon:
        try:
            lexicon = load_lexicon(Path(args.lexicon).read_bytes())
        except OSError as exc:
            print(f"error: {args.lexicon}: {exc}", file=sys.stderr)
            return EXIT_FORMAT
        except ValueError as exc:
            return _fail(args.lexicon, exc)
    else:
        lexicon = default_lexicon()

    graphs = []
    for name in args.inputs:
        path = Path(name)
        try:
            graphs.extend(parse_conllu(path.read_bytes()))
        except OSError as exc:
            print(f"error: {path}: {exc}", file=sys.stderr)
            return EXIT_FORMAT
        except ConlluError as exc:
            return _fail(str(path), exc)

    doc_id = args.doc_id or Path(args.inputs[0]).stem
    extractor = ClauseExtractor(lexicon=lexicon, profile=args.profile, style=args.style)
    try:
        table = extractor.extract_table(graphs, doc_id=doc_id)
        payload = serialize(table, format=args.format)
    except Exception as exc:  # a valid graph must never fail extraction
        print(f"error: internal: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.out:
        Path(args.out).write_bytes(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return EXIT_OK


def cmd_eval(args) -> int:
    pred = _read_table(Path(args.pred), label_fallback=False)
    if pred is None:
        return EXIT_FORMAT
    gold = _read_table(Path(args.gold), label_fallback=False)
    if gold is None:
        return EXIT_FORMAT
    if pred.doc_id and gold.doc_id and pred.doc_id != gold.doc_id:
        print(f"error: document ids differ: {pred.doc_id!r} vs {gold.doc_id!r}", file=sys.stderr)
        return EXIT_FORMAT
    if not pred.doc_id:
        pred.doc_id = Path(args.pred).stem  # label for the report only
    try:
        report = score(pred, gold)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    print(report.to_text())
    if args.out:
        Path(args.out).write_bytes(report.to_json())
    return EXIT_OK


def cmd_export(args) -> int:
    table = _read_table(Path(args.table))
    if table is None:
        return EXIT_FORMAT
    try:
        payload = export_model(build_model(table))
    except (TableError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    Path(args.out).write_bytes(payload)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="normclause",
                     description="Extract deontic clause tables from dependency-parsed text")
    sub = parser.add_subparsers(dest="command", required=True)

    p_extract = sub.add_parser("extract", help="extract a clause table from CoNLL-U input")
    p_extract.add_argument("inputs", nargs="+", metavar="CONLLU",
                           help="CoNLL-U files, concatenated in argument order")
    p_extract.add_argument("--lexicon", metavar="PATH", help="lexicon JSON file")
    p_extract.add_argument("--rules-only", action="store_true",
                           help="disable all heuristics (empty lexicon)")
    p_extract.add_argument("--profile", choices=["ud", "stanford-classic"], default="ud")
    p_extract.add_argument("--format", choices=["csv", "json"], default="csv")
    p_extract.add_argument("--style", choices=["canonical", "display"], default="canonical")
    p_extract.add_argument("--doc-id", default=None)
    p_extract.add_argument("--out", metavar="PATH")
    p_extract.set_defaults(func=cmd_extract)

    p_eval = sub.add_parser("eval", help="score a predicted table against a gold table")
    p_eval.add_argument("pred")
    p_eval.add_argument("gold")
    p_eval.add_argument("--out", metavar="PATH", help="write the JSON report here")
    p_eval.set_defaults(func=cmd_eval)

    p_export = sub.add_parser("export", help="convert a clause table to a contract model")
    p_export.add_argument("table")
    p_export.add_argument("out")
    p_export.set_defaults(func=cmd_export)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
