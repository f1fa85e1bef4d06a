"""Command-line entry point: train models, simulate, compute ITR, serve.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable or invalid
input files).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .charset import CharacterSet, default_charset, load_charset, normalize
from .metrics import M_COMMANDS, M_LETTERS, itr
from .ppm import ModelError, load_model, save_model, train
from .simulate import (
    SimulationError,
    format_benchmark_table,
    run_benchmark,
    simulate_optimal,
    write_benchmark_csv,
)

MAX_CLI_ORDER = 8  # engine is uncapped; the CLI bounds model size

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; this artifact reserves 2 for data
    errors, so remap usage failures to exit 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_DATA


def _load_charset_arg(path: str | None) -> CharacterSet:
    return load_charset(path) if path else default_charset()


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _cmd_train(args: argparse.Namespace, parser: _Parser) -> int:
    if not 0 <= args.order <= MAX_CLI_ORDER:
        parser.error(f"--order must be 0..{MAX_CLI_ORDER}")
    try:
        cs = _load_charset_arg(args.charset)
        raw = _read_text(args.corpus)
    except (OSError, ValueError) as exc:
        return _fail(str(exc))
    if not raw:
        return _fail(f"corpus {args.corpus} is empty")
    doc = raw if args.no_normalize else normalize(raw, cs)
    try:
        model = train(doc, args.order, cs)
    except ValueError as exc:
        return _fail(str(exc))
    save_model(model, args.out)
    print(f"wrote {args.out}")
    print(f"contexts: {len(model.contexts)}")
    print(f"unigram total: {sum(model.unigrams.values())}")
    return EXIT_OK


def _cmd_simulate(args: argparse.Namespace, parser: _Parser) -> int:
    try:
        model = load_model(args.model)
    except (OSError, ModelError) as exc:
        return _fail(str(exc))
    if args.text is not None:
        raw_sentences = [args.text]
    else:
        try:
            raw_sentences = _read_text(args.sentences).splitlines()
        except OSError as exc:
            return _fail(str(exc))
    sentences = (
        raw_sentences
        if args.no_normalize
        else [normalize(s, model.charset).text for s in raw_sentences]
    )
    try:
        reports = [simulate_optimal(s, model) for s in sentences]
    except SimulationError as exc:
        return _fail(str(exc))

    header = f"{'letters':>8}{'commands':>10}{'l1 rank':>9}{'l2 rank':>9}{'hit@group1':>12}  sentence"
    print(header)
    for rep in reports:
        shown = rep.sentence if len(rep.sentence) <= 40 else rep.sentence[:37] + "..."
        print(
            f"{rep.letters_typed:>8}{rep.commands_used:>10}"
            f"{rep.mean_level1_rank:>9.3f}{rep.mean_level2_rank:>9.3f}"
            f"{rep.hit_at_group1:>12.3f}  {shown}"
        )
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as out:
            out.write("sentence,letters,commands,mean_l1_rank,mean_l2_rank,hit_at_group1\n")
            for rep in reports:
                sentence = rep.sentence.replace('"', '""')
                out.write(
                    f'"{sentence}",{rep.letters_typed},{rep.commands_used},'
                    f"{rep.mean_level1_rank!r},{rep.mean_level2_rank!r},{rep.hit_at_group1!r}\n"
                )
        print(f"wrote {args.csv}")
    return EXIT_OK


def _parse_orders(spec: str, parser: _Parser) -> list[int]:
    try:
        orders = sorted({int(part) for part in spec.split(",") if part.strip() != ""})
    except ValueError:
        parser.error(f"--orders must be comma-separated integers, got {spec!r}")
    if not orders or any(k < 0 or k > MAX_CLI_ORDER for k in orders):
        parser.error(f"--orders values must be 0..{MAX_CLI_ORDER}")
    return orders


def _cmd_bench(args: argparse.Namespace, parser: _Parser) -> int:
    orders = _parse_orders(args.orders, parser)
    try:
        cs = _load_charset_arg(args.charset)
        raw = _read_text(args.corpus)
    except (OSError, ValueError) as exc:
        return _fail(str(exc))
    corpus = normalize(raw, cs)
    try:
        rows = run_benchmark(
            corpus,
            orders,
            n_sentences=args.samples,
            sentence_len=args.len,
            seed=args.seed,
            held_in=args.held_in,
        )
    except SimulationError as exc:
        return _fail(str(exc))
    print(format_benchmark_table(rows))
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as out:
            write_benchmark_csv(rows, out)
        print(f"wrote {args.csv}")
    return EXIT_OK


def _cmd_itr(args: argparse.Namespace, parser: _Parser) -> int:
    if args.seconds <= 0:
        parser.error("--seconds must be positive")
    minutes = args.seconds / 60.0
    speed = args.letters / minutes
    itr_com = itr(args.commands, M_COMMANDS, args.seconds)
    itr_letter = itr(args.letters, M_LETTERS, args.seconds)
    print(f"speed: {speed:.2f} letters/min")
    print(f"ITR_com: {itr_com:.2f} bits/min")
    print(f"ITR_letter: {itr_letter:.2f} bits/min")
    return EXIT_OK


def load_model_dir(models_dir: Path) -> dict:
    """Load every ``*.json`` model in a directory, keyed by order."""
    models = {}
    for path in sorted(models_dir.glob("*.json")):
        model = load_model(path)
        if model.order in models:
            raise ModelError(f"two models of order {model.order} in {models_dir}")
        models[model.order] = model
    if not models:
        raise ModelError(f"no *.json model files in {models_dir}")
    return models


def _cmd_serve(args: argparse.Namespace, parser: _Parser) -> int:
    import uvicorn
    from fastapi.staticfiles import StaticFiles

    from .gateway import create_app

    try:
        models = load_model_dir(Path(args.models))
    except (OSError, ModelError) as exc:
        return _fail(str(exc))
    transcript_dir = Path(args.transcripts) if args.transcripts else None
    app = create_app(models, default_dwell_ms=args.dwell_ms, transcript_dir=transcript_dir)
    if args.static:
        static_dir = Path(args.static)
        if not static_dir.is_dir():
            return _fail(f"static directory {static_dir} does not exist")
        app.mount("/ui", StaticFiles(directory=static_dir, html=True), name="ui")
    print(f"serving on http://{args.host}:{args.port} (orders: {sorted(models)})")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="flextree", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a next-character model from a corpus")
    p.add_argument("--corpus", required=True, help="UTF-8 text file")
    p.add_argument("--order", type=int, required=True, help=f"context length, 0..{MAX_CLI_ORDER}")
    p.add_argument("--charset", help="custom charset file (72 lines, one character each)")
    p.add_argument("--out", required=True, help="output model file")
    p.add_argument("--no-normalize", action="store_true", help="corpus is already normalized")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("simulate", help="type sentences with the optimal simulated user")
    p.add_argument("--model", required=True, help="model file from `train`")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--text", help="one sentence to type")
    group.add_argument("--sentences", help="file with one sentence per line")
    p.add_argument("--csv", help="also write per-sentence rows as CSV")
    p.add_argument("--no-normalize", action="store_true")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("bench", help="compare model orders over sampled sentences")
    p.add_argument("--corpus", required=True)
    p.add_argument("--orders", default="0,1,2,3", help="comma-separated, default 0,1,2,3")
    p.add_argument("--samples", type=int, default=100, help="number of sampled sentences")
    p.add_argument("--len", type=int, default=30, help="sentence length in characters")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--held-in", action="store_true", help="sample sentences from the training text")
    p.add_argument("--charset")
    p.add_argument("--csv", help="write the aggregate table as CSV")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("itr", help="speed and information transfer rates from raw counts")
    p.add_argument("--letters", type=float, required=True)
    p.add_argument("--commands", type=float, required=True)
    p.add_argument("--seconds", type=float, required=True)
    p.set_defaults(func=_cmd_itr)

    p = sub.add_parser("serve", help="run the session gateway")
    p.add_argument("--models", required=True, help="directory of model files")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8077)
    p.add_argument("--dwell-ms", type=int, default=1500)
    p.add_argument("--static", help="serve a client app from this directory under /ui")
    p.add_argument("--transcripts", help="directory for ended-session transcript files")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
