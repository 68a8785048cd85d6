"""Command-line interface.

Exit codes: 0 success, 1 configuration/validation failure, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections import Counter
from pathlib import Path

from . import addresses, corpus, pipeline, units


def _parse_years(text: str) -> tuple[int, int]:
    parts = text.split("-")
    if len(parts) == 1:
        year = int(parts[0])
        return (year, year)
    if len(parts) == 2:
        return (int(parts[0]), int(parts[1]))
    raise argparse.ArgumentTypeError(f"expected YEAR or START-END, got {text!r}")


def _add_config_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True, help="pipeline configuration (TOML)")
    parser.add_argument("--min-cooc", type=int, default=None, help="display edge cutoff (strict >)")
    parser.add_argument("--min-pubs", type=int, default=None, help="table threshold (strict >)")
    parser.add_argument("--doc-types", default=None, help="comma-separated document types")
    parser.add_argument("--years", type=_parse_years, default=None, help="YEAR or START-END")
    parser.add_argument("--out", default=None, help="output directory")


def _load_config(args: argparse.Namespace) -> pipeline.PipelineConfig:
    config = pipeline.PipelineConfig.from_toml(args.config)
    if args.min_cooc is not None:
        config.min_cooccurrence = args.min_cooc
    if args.min_pubs is not None:
        config.min_publications = args.min_pubs
    if args.doc_types is not None:
        config.doc_types = frozenset(
            corpus.normalize_doc_type(part) for part in args.doc_types.split(",") if part.strip()
        )
    if args.years is not None:
        config.years = args.years
    if args.out is not None:
        config.out_dir = Path(args.out)
    return config


def _run_command(args: argparse.Namespace, stop_after: str) -> int:
    config = _load_config(args)
    diagnostics = pipeline.validate_config(config)
    if diagnostics:
        for problem in diagnostics:
            print(f"config error: {problem}", file=sys.stderr)
        return 1
    report = pipeline.run_pipeline(config, stop_after=stop_after)
    _print_counts(report)
    print(f"outputs written to {config.out_dir}")
    return 0


def _print_counts(report: pipeline.RunReport) -> None:
    for key in (
        "total_records",
        "outside_period",
        "doc_type_excluded",
        "no_target_address",
        "university_only",
        "analyzed",
        "distinct_units",
        "network_edges",
        "indicator_rows",
    ):
        if key in report.counts:
            print(f"{key.replace('_', ' ')}: {report.counts[key]}")


def _cmd_run(args: argparse.Namespace) -> int:
    return _run_command(args, "full")


def _cmd_ingest(args: argparse.Namespace) -> int:
    return _run_command(args, "ingest")


def _cmd_network(args: argparse.Namespace) -> int:
    return _run_command(args, "network")


def _cmd_profiles(args: argparse.Namespace) -> int:
    return _run_command(args, "profiles")


def _cmd_parse_debug(args: argparse.Namespace) -> int:
    strings = addresses.split_addresses(args.address) if args.split else [args.address]
    if not strings:
        print("no addresses found", file=sys.stderr)
        return 1
    for raw in strings:
        try:
            parse = addresses.parse_address(raw)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        print(f"head: {parse.head}")
        print(f"units: {' | '.join(parse.unit_tokens)}")
        print(f"tail: {' | '.join(parse.tail)}")
        print(f"university-only: {'yes' if addresses.is_university_only(parse) else 'no'}")
    return 0


def _cmd_suggest_aliases(args: argparse.Namespace) -> int:
    config = _load_config(args)
    try:
        matcher = corpus.load_institution_variants(config.variants_path)
        records = corpus.load_corpus(config.corpus_path, config.corpus_format)
    except (OSError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1

    token_counts: Counter[str] = Counter()
    for record in corpus.filter_doc_types(records, config.doc_types):
        for address in corpus.select_institution_addresses(record, matcher):
            token_counts.update(addresses.parse_address(address).unit_tokens)

    suggestions = units.suggest_aliases(token_counts, similarity=args.similarity)
    output = Path(args.output) if args.output else Path(config.out_dir) / "suggested_aliases.tsv"
    output.parent.mkdir(parents=True, exist_ok=True)
    lines = ["# suggested alias pairs: variant<TAB>canonical -- review before use"]
    lines += [f"{variant}\t{canonical}" for variant, canonical in suggestions]
    output.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"{len(suggestions)} suggestions written to {output}")
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    report_path = Path(args.out) / "run_report.json"
    if not report_path.is_file():
        print(f"no run report found at {report_path}", file=sys.stderr)
        return 1
    payload = json.loads(report_path.read_text(encoding="utf-8"))
    print(f"stages: {', '.join(payload.get('stages', []))}")
    for key, value in sorted(payload.get("counts", {}).items()):
        print(f"{key.replace('_', ' ')}: {value}")
    for scope, sizes in sorted(payload.get("component_sizes", {}).items()):
        print(f"{scope} component sizes: {sizes or '[]'}")
    for name, size in sorted(payload.get("universe_sizes", {}).items()):
        print(f"{name} universe: {size} categories")
    print(f"artifacts: {len(payload.get('artifacts', {}))}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orgprofiles",
        description="Organizational-unit networks and research profiles from publication addresses.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="info-level logging")
    subparsers = parser.add_subparsers(dest="command", required=True)

    for name, handler, description in (
        ("run", _cmd_run, "full pipeline: ingest, network, profiles, report"),
        ("ingest", _cmd_ingest, "ingest and normalize only (exclusion + type distribution)"),
        ("network", _cmd_network, "stop after network construction and export"),
        ("profiles", _cmd_profiles, "stop after the indicator tables"),
    ):
        sub = subparsers.add_parser(name, help=description)
        _add_config_options(sub)
        sub.set_defaults(func=handler)

    parse_debug = subparsers.add_parser("parse-debug", help="show how one address string parses")
    parse_debug.add_argument("address")
    parse_debug.add_argument(
        "--split", action="store_true", help="treat the input as a dot-delimited multi-address field"
    )
    parse_debug.set_defaults(func=_cmd_parse_debug)

    suggest = subparsers.add_parser(
        "suggest-aliases", help="draft alias pairs from near-duplicate unit tokens"
    )
    _add_config_options(suggest)
    suggest.add_argument("--similarity", type=float, default=0.85)
    suggest.add_argument("--output", default=None, help="suggestions file (TSV)")
    suggest.set_defaults(func=_cmd_suggest_aliases)

    report = subparsers.add_parser("report", help="print the summary of a finished run")
    report.add_argument("--out", required=True, help="output directory of the run")
    report.set_defaults(func=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except pipeline.PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
