"""Command-line entry points for the corpus pipeline.

Subcommands mirror the pipeline stages plus ``score`` (metrics over
plain-text files) and ``fetch`` (crawler convenience wrapper). Global
flags come before the subcommand::

    scicorpus --config pipeline.json extract
    scicorpus score --metric bleu --hyp out.txt --ref test.tgt

Exit codes: 0 success, 1 usage error, 2 data error (malformed configs,
records, or metric inputs), 3 stage failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .domains import LexiconError
from .extractor import ConfigError, ExtractionError, fetch_pages
from .metrics import (
    MetricError,
    bleu,
    bleu_signature,
    chrf2pp,
    chrf_signature,
    paired_bootstrap,
)
from .pipeline import (
    PipelineError,
    cmd_stats,
    format_tables,
    load_pipeline_config,
    run_stages,
)
from .records import RecordParseError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_STAGE = 3

_PIPELINE_STAGES = ("extract", "classify", "mine", "filter", "benchmark", "stats")


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; this tool reserves 2 for
    data errors, so usage problems are remapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="scicorpus", description=__doc__.splitlines()[0])
    parser.add_argument("--config", metavar="PATH", help="pipeline config JSON")
    parser.add_argument(
        "--workers", type=int, metavar="N", help="worker pool size override"
    )
    parser.add_argument("--seed", type=int, metavar="S", help="seed override")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    stage_help = {
        "extract": "extract records from repository HTML pages",
        "classify": "assign domains by lexicon keyword counts",
        "mine": "segment and mine candidate parallel sentences",
        "filter": "deduplicate and filter mined pairs into corpora",
        "benchmark": "build dev/test splits from the corpus",
        "stats": "print corpus size tables",
    }
    for stage in _PIPELINE_STAGES:
        sub.add_parser(stage, help=stage_help[stage])

    score = sub.add_parser("score", help="score a translation against a reference")
    score.add_argument("--metric", choices=("bleu", "chrf2pp"), default="bleu")
    score.add_argument("--hyp", required=True, metavar="FILE")
    score.add_argument("--ref", required=True, metavar="FILE")
    score.add_argument(
        "--bootstrap",
        type=int,
        default=0,
        metavar="N",
        help="paired bootstrap resamples (0 = point score only)",
    )

    fetch = sub.add_parser("fetch", help="download pages from a URL list")
    fetch.add_argument("--urls", required=True, metavar="FILE")
    fetch.add_argument("--repository", required=True)
    fetch.add_argument("--out-dir", required=True, metavar="DIR")
    fetch.add_argument("--delay", type=float, default=1.0, metavar="SECONDS")
    return parser


def _read_lines(path: str) -> list[str]:
    return Path(path).read_text("utf-8").splitlines()


def _run_score(args) -> int:
    hypotheses = _read_lines(args.hyp)
    references = _read_lines(args.ref)
    name = "BLEU" if args.metric == "bleu" else "chrF2++"
    if args.bootstrap:
        seed = args.seed if args.seed is not None else 12345
        result = paired_bootstrap(
            hypotheses,
            references,
            metric=args.metric,
            n_resamples=args.bootstrap,
            seed=seed,
        )
        print(f"{name} = {result.point:.1f} (mean {result.mean:.1f} +/- {result.delta:.1f})")
        if args.metric == "bleu":
            print(bleu_signature(n_bootstrap=args.bootstrap, seed=seed))
        else:
            print(chrf_signature(n_bootstrap=args.bootstrap, seed=seed))
        return EXIT_OK
    if args.metric == "bleu":
        score = bleu(hypotheses, references)
        signature = bleu_signature()
    else:
        score = chrf2pp(hypotheses, references)
        signature = chrf_signature()
    print(f"{name} = {score:.1f}")
    print(signature)
    return EXIT_OK


def _dispatch(parser: argparse.ArgumentParser, args) -> int:
    if args.command in _PIPELINE_STAGES:
        if args.config is None:
            parser.error(f"--config is required for {args.command}")
        cfg = load_pipeline_config(args.config, workers=args.workers, seed=args.seed)
        if args.command == "stats":
            print(format_tables(cmd_stats(cfg)), end="")
            return EXIT_OK
        manifest = run_stages(cfg, [args.command])[args.command]
        print(json.dumps(manifest, sort_keys=True))
        return EXIT_OK
    if args.command == "score":
        return _run_score(args)
    if args.command == "fetch":
        try:
            count = fetch_pages(
                args.urls, args.out_dir, args.repository, delay=args.delay
            )
        except OSError as exc:
            raise PipelineError("fetch", str(exc)) from exc
        print(f"fetched {count} pages into {args.out_dir}/{args.repository}")
        return EXIT_OK
    parser.error(f"unknown command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(parser, args)
    except PipelineError as exc:
        print(f"scicorpus: stage failure: {exc}", file=sys.stderr)
        return EXIT_STAGE
    except (
        RecordParseError,
        ConfigError,
        ExtractionError,
        LexiconError,
        MetricError,
        FileNotFoundError,
    ) as exc:
        print(f"scicorpus: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (KeyError, ValueError) as exc:
        print(f"scicorpus: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"scicorpus: stage failure: {exc}", file=sys.stderr)
        return EXIT_STAGE


if __name__ == "__main__":
    sys.exit(main())
