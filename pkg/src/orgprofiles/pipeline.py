"""End-to-end pipeline: ingest -> parse -> normalize -> network -> profiles -> report.

Configuration lives in one TOML file (paths resolved relative to it) plus
optional CLI overrides; every run writes plain CSV/GraphML/Markdown files
into the output directory together with a ``run_report.json`` that embeds
the resolved configuration, all counts and the SHA-256 digest of every
artifact.  Outputs are byte-identical across repeated runs on the same
inputs: nothing in them depends on wall clock, environment or dict order.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib  # type: ignore[no-redef]

from . import addresses, corpus, network, profiles, units

logger = logging.getLogger(__name__)

STAGES = ("ingest", "parse", "normalize", "network", "profiles", "report")

#: Where a partial run may stop (CLI subcommands map onto these).
STOP_POINTS = ("ingest", "network", "profiles", "full")


class PipelineError(RuntimeError):
    """A stage failed; partial outputs have been removed."""

    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"stage {stage!r} failed: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass
class PipelineConfig:
    corpus_path: Path
    variants_path: Path
    categories_path: Path
    mapping_path: Path
    corpus_format: str = "jsonl"
    alias_path: Path | None = None
    type_rules_path: Path | None = None
    doc_types: frozenset[str] = corpus.DEFAULT_DOC_TYPES
    years: tuple[int, int] | None = None
    min_cooccurrence: int = 0
    drop_isolated: bool = True
    min_publications: int = 0
    table_unit_type: str | None = None
    out_dir: Path = Path("out")

    @classmethod
    def from_toml(cls, path: str | Path) -> "PipelineConfig":
        """Load a config file; relative paths resolve against its directory."""
        path = Path(path)
        with path.open("rb") as handle:
            data = tomllib.load(handle)
        base = path.parent

        def resolve(value: str) -> Path:
            p = Path(value)
            return p if p.is_absolute() else base / p

        def optional_path(section: dict, key: str) -> Path | None:
            value = section.get(key)
            return resolve(value) if value else None

        corpus_section = data.get("corpus", {})
        filters = data.get("filters", {})
        net_section = data.get("network", {})
        tables = data.get("tables", {})
        years_raw = filters.get("years")

        return cls(
            corpus_path=resolve(corpus_section.get("path", "corpus.jsonl")),
            corpus_format=corpus_section.get("format", "jsonl"),
            variants_path=resolve(data.get("institution", {}).get("variants", "variants.txt")),
            alias_path=optional_path(data.get("normalization", {}), "aliases"),
            type_rules_path=optional_path(data.get("normalization", {}), "type_rules"),
            categories_path=resolve(
                data.get("classification", {}).get("subject_categories", "subject_categories.txt")
            ),
            mapping_path=resolve(
                data.get("classification", {}).get("discipline_mapping", "disciplines.csv")
            ),
            doc_types=frozenset(filters.get("doc_types", sorted(corpus.DEFAULT_DOC_TYPES))),
            years=tuple(years_raw) if years_raw else None,  # type: ignore[arg-type]
            min_cooccurrence=int(net_section.get("min_cooccurrence", 0)),
            drop_isolated=bool(net_section.get("drop_isolated", True)),
            min_publications=int(tables.get("min_publications", 0)),
            table_unit_type=tables.get("unit_type") or None,
            out_dir=resolve(data.get("output", {}).get("directory", "out")),
        )

    def resolved(self) -> dict[str, Any]:
        """JSON-friendly view of the effective configuration."""
        return {
            "corpus_path": str(self.corpus_path),
            "corpus_format": self.corpus_format,
            "variants_path": str(self.variants_path),
            "alias_path": str(self.alias_path) if self.alias_path else None,
            "type_rules_path": str(self.type_rules_path) if self.type_rules_path else None,
            "categories_path": str(self.categories_path),
            "mapping_path": str(self.mapping_path),
            "doc_types": sorted(self.doc_types),
            "years": list(self.years) if self.years else None,
            "min_cooccurrence": self.min_cooccurrence,
            "drop_isolated": self.drop_isolated,
            "min_publications": self.min_publications,
            "table_unit_type": self.table_unit_type,
            "out_dir": str(self.out_dir),
        }


def validate_config(config: PipelineConfig) -> list[str]:
    """All configuration problems at once; an empty list means runnable."""
    diagnostics: list[str] = []

    for label, path, required in (
        ("corpus file", config.corpus_path, True),
        ("institution variants file", config.variants_path, True),
        ("subject categories file", config.categories_path, True),
        ("discipline mapping file", config.mapping_path, True),
        ("alias file", config.alias_path, False),
        ("type rules file", config.type_rules_path, False),
    ):
        if path is None:
            continue
        if not Path(path).is_file():
            diagnostics.append(f"missing {label}: {path}")

    if config.corpus_format not in ("jsonl", "csv"):
        diagnostics.append(f"unknown corpus format: {config.corpus_format!r}")
    unknown_types = sorted(set(config.doc_types) - set(corpus.DOC_TYPES))
    if unknown_types:
        diagnostics.append(f"unknown doc types: {unknown_types}")
    if config.years is not None:
        if len(config.years) != 2:
            diagnostics.append(f"years must be a [start, end] pair, got {config.years!r}")
        elif config.years[0] > config.years[1]:
            diagnostics.append(f"year range starts after it ends: {config.years}")
    if config.min_cooccurrence < 0:
        diagnostics.append(f"min_cooccurrence must be >= 0, got {config.min_cooccurrence}")
    if config.min_publications < 0:
        diagnostics.append(f"min_publications must be >= 0, got {config.min_publications}")
    if config.table_unit_type is not None and config.table_unit_type not in units.UNIT_TYPES:
        diagnostics.append(f"unknown table unit type: {config.table_unit_type!r}")

    if config.alias_path and Path(config.alias_path).is_file():
        try:
            units.AliasTable.load(config.alias_path)
        except units.AliasTableError as exc:
            diagnostics.append(f"alias table: {exc}")
    if config.type_rules_path and Path(config.type_rules_path).is_file():
        try:
            units.TypeRuleSet.load(config.type_rules_path)
        except ValueError as exc:
            diagnostics.append(f"type rules: {exc}")
    if Path(config.mapping_path).is_file():
        try:
            profiles.load_category_mapping(config.mapping_path)
        except ValueError as exc:
            diagnostics.append(f"discipline mapping: {exc}")

    return diagnostics


@dataclass
class RunReport:
    """Counts, distributions and artifact digests of one pipeline run."""

    config: dict[str, Any]
    stages: list[str]
    counts: dict[str, int]
    type_distribution: dict[str, dict[str, Any]]
    component_sizes: dict[str, list[int]] = field(default_factory=dict)
    universe_sizes: dict[str, int] = field(default_factory=dict)
    artifacts: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "config": self.config,
            "stages": self.stages,
            "counts": self.counts,
            "type_distribution": self.type_distribution,
            "component_sizes": self.component_sizes,
            "universe_sizes": self.universe_sizes,
            "artifacts": self.artifacts,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write_csv_rows(path: Path, header: list[str], rows: list[list[Any]]) -> None:
    import csv as _csv

    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = _csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def run_pipeline(config: PipelineConfig, stop_after: str = "full") -> RunReport:
    """Execute the pipeline and write all stage outputs.

    ``stop_after`` limits the run to a prefix of the stages ("ingest",
    "network", "profiles" or "full").  Any stage failure removes the files
    written so far and raises PipelineError naming the stage.
    """
    if stop_after not in STOP_POINTS:
        raise ValueError(f"stop_after must be one of {STOP_POINTS}, got {stop_after!r}")

    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    stage = "ingest"

    def emit(name: str, writer) -> Path:
        path = out_dir / name
        writer(path)
        written.append(path)
        return path

    try:
        # --- ingest ---------------------------------------------------
        matcher = corpus.load_institution_variants(config.variants_path)
        malformed: list[str] = []
        records = corpus.load_corpus(config.corpus_path, config.corpus_format, malformed=malformed)
        total_records = len(records)

        if config.years is not None:
            start, end = config.years
            in_period = [r for r in records if r.year is not None and start <= r.year <= end]
        else:
            in_period = list(records)
        outside_period = total_records - len(in_period)

        doc_kept = corpus.filter_doc_types(in_period, config.doc_types)
        doc_type_excluded = len(in_period) - len(doc_kept)

        selected = [(record, corpus.select_institution_addresses(record, matcher)) for record in doc_kept]

        # --- parse ----------------------------------------------------
        stage = "parse"
        parsed = [
            (record, [addresses.parse_address(address) for address in target_addresses])
            for record, target_addresses in selected
        ]

        # --- normalize ------------------------------------------------
        stage = "normalize"
        alias_table = (
            units.AliasTable.load(config.alias_path) if config.alias_path else units.AliasTable.empty()
        )
        rules = (
            units.TypeRuleSet.load(config.type_rules_path)
            if config.type_rules_path
            else units.TypeRuleSet.default()
        )

        analyzed_records: list[corpus.BibRecord] = []
        analyzed_units: list[frozenset[units.CanonicalUnit]] = []
        no_target_address = 0
        university_only = 0
        for record, parses in parsed:
            if not parses:
                no_target_address += 1
                continue
            names = [
                alias_table.canonicalize(token) for parse in parses for token in parse.unit_tokens
            ]
            unit_set = units.dedupe_units(names, rules)
            if not unit_set:
                university_only += 1
                continue
            analyzed_records.append(record)
            analyzed_units.append(unit_set)

        analyzed = len(analyzed_records)
        if analyzed == 0:
            logger.warning(
                "no records with organizational units: all output tables will be empty"
            )
        distribution = units.type_distribution(analyzed_units)

        counts = {
            "total_records": total_records,
            "malformed_lines": len(malformed),
            "outside_period": outside_period,
            "doc_type_excluded": doc_type_excluded,
            "no_target_address": no_target_address,
            "university_only": university_only,
            "analyzed": analyzed,
        }
        emit(
            "exclusion_summary.csv",
            lambda p: _write_csv_rows(
                p, ["category", "count"], [[key, counts[key]] for key in counts]
            ),
        )
        emit(
            "type_distribution.csv",
            lambda p: _write_csv_rows(
                p,
                ["unit_type", "publications", "share_pct", "distinct_units"],
                [
                    [unit_type, share.publications, share.share_pct, share.distinct_units]
                    for unit_type, share in distribution.items()
                ],
            ),
        )

        report = RunReport(
            config=config.resolved(),
            stages=["ingest", "parse", "normalize"],
            counts=counts,
            type_distribution={
                unit_type: {
                    "publications": share.publications,
                    "share_pct": share.share_pct,
                    "distinct_units": share.distinct_units,
                }
                for unit_type, share in distribution.items()
            },
        )

        # --- network ----------------------------------------------------
        net = None
        if stop_after != "ingest":
            stage = "network"
            net = network.build_network(analyzed_units)
            net.betweenness = network.compute_betweenness(net)
            display = network.apply_threshold(
                net, config.min_cooccurrence, config.drop_isolated
            )
            counts["distinct_units"] = len(net.units)
            counts["network_edges"] = len(net.edges)
            counts["display_nodes"] = len(display.units)
            counts["display_edges"] = len(display.edges)
            report.component_sizes = {
                "full": [len(c) for c in network.connected_components(net)],
                "display": [len(c) for c in network.connected_components(display)],
            }
            emit("units.csv", lambda p: network.write_node_csv(net, p))
            emit("edges.csv", lambda p: network.write_edge_csv(net, p))
            emit("display.graphml", lambda p: network.write_graphml(display, p))
            emit("display.dot", lambda p: network.write_dot(display, p))
            emit("display_edges.csv", lambda p: network.write_edge_csv(display, p))
            report.stages.append("network")

        # --- profiles ---------------------------------------------------
        if stop_after in ("profiles", "full") and net is not None:
            stage = "profiles"
            sc_system = profiles.load_classification(
                config.categories_path, name="subject_categories"
            )
            mapping = profiles.load_category_mapping(config.mapping_path)
            disc_system = profiles.aggregate_classification(sc_system, mapping, name="disciplines")

            known = set(sc_system.categories)
            unknown_categories = sorted(
                {c for record in analyzed_records for c in record.subject_categories} - known
            )
            if unknown_categories:
                logger.warning(
                    "%d subject categories in the corpus are not in the classification: %s",
                    len(unknown_categories), ", ".join(unknown_categories),
                )
            empty_categories = sum(1 for r in analyzed_records if not r.subject_categories)
            if empty_categories:
                logger.info(
                    "%d analyzed records carry no subject categories and enter P only",
                    empty_categories,
                )

            records_of: dict[str, list[corpus.BibRecord]] = {name: [] for name in net.units}
            for record, unit_set in zip(analyzed_records, analyzed_units):
                for unit in unit_set:
                    records_of[unit.name].append(record)
            sc_profiles = {
                name: profiles.build_profile(net.units[name], records_of[name], sc_system)
                for name in net.units
            }
            disc_profiles = {
                name: profiles.build_profile(net.units[name], records_of[name], disc_system)
                for name in net.units
            }
            rows = profiles.indicator_table(
                net.units.values(),
                net.pub_counts,
                net.betweenness or {},
                sc_profiles,
                disc_profiles,
                min_pubs=config.min_publications,
                unit_type=config.table_unit_type,
            )
            counts["unknown_subject_categories"] = len(unknown_categories)
            counts["empty_subject_categories"] = empty_categories
            counts["indicator_rows"] = len(rows)
            report.universe_sizes = {
                sc_system.name: sc_system.size,
                disc_system.name: disc_system.size,
            }
            emit("indicators.csv", lambda p: profiles.write_indicator_csv(rows, p))
            emit(
                "indicators.md",
                lambda p: p.write_text(
                    profiles.render_indicator_markdown(rows, sc_system, disc_system),
                    encoding="utf-8",
                ),
            )
            report.stages.append("profiles")

        # --- report -----------------------------------------------------
        stage = "report"
        report.artifacts = {path.name: _sha256(path) for path in sorted(written)}
        report.stages.append("report")
        (out_dir / "run_report.json").write_text(report.to_json(), encoding="utf-8")
        return report

    except PipelineError:
        raise
    except Exception as exc:
        for path in written:
            path.unlink(missing_ok=True)
        raise PipelineError(stage, exc) from exc
