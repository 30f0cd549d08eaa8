"""``scholnet`` command-line entry point."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .corpus import FilterConfig
from .exceptions import ScholnetError
from .influence import WeightKind
from .pipeline import STAGES, RunConfig, run_stage
from .synth import SynthParams, default_params, generate_synthetic_corpus


def _shared(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", type=Path, help="directory holding papers/citations/fields JSONL")
    p.add_argument("--output", type=Path, required=True, help="output directory")
    p.add_argument("--year-from", type=int, default=1950)
    p.add_argument("--year-to", type=int, default=2020)
    p.add_argument("--max-authors", type=int, default=10)
    p.add_argument("--min-papers", type=int, default=10)
    p.add_argument("--min-citations", type=int, default=200)
    p.add_argument("--weight", choices=[k.value for k in WeightKind], default="citations")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scholnet",
        description="Top-collaborator influence analytics over bibliographic corpora.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for stage in STAGES:
        _shared(sub.add_parser(stage, help=f"run the {stage} stage"))
    synth = sub.add_parser("synth", help="generate a seeded synthetic corpus")
    _shared(synth)
    synth.add_argument("--config", type=Path, help="JSON file with generator parameters")
    synth.add_argument("--fields", type=int, default=4)
    synth.add_argument("--authors-per-field", type=int, default=1250)
    synth.add_argument("--papers-per-field", type=int, default=12500)
    synth.add_argument("--team-sizes", type=str, default=None,
                       help="comma-separated mean team size per field")
    synth.add_argument("--gzip", action="store_true", help="write .jsonl.gz files")
    return parser


def _synth(args: argparse.Namespace) -> int:
    if args.config is not None:
        params = SynthParams.from_dict(json.loads(args.config.read_text(encoding="utf-8")))
    else:
        sizes = [float(x) for x in args.team_sizes.split(",")] if args.team_sizes else None
        params = default_params(args.fields, args.authors_per_field, args.papers_per_field, sizes)
    paths = generate_synthetic_corpus(params, args.seed, args.output, compress=args.gzip)
    for p in paths.values():
        print(p)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "synth":
            return _synth(args)
        if args.input is None:
            print("scholnet: error: --input is required", file=sys.stderr)
            return 2
        cfg = RunConfig(
            input_dir=args.input,
            output_dir=args.output,
            filter=FilterConfig(args.year_from, args.year_to, args.max_authors,
                                args.min_papers, args.min_citations),
            weight=WeightKind(args.weight),
            n_jobs=args.threads,
        )
        manifest = run_stage(args.command, cfg)
    except ScholnetError as exc:
        print(f"scholnet: error: {exc}", file=sys.stderr)
        return 1
    counts = manifest.get("counts", {})
    print(json.dumps({"stage": args.command, **counts}, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
