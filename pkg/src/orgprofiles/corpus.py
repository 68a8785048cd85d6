"""Loading of bibliographic records and selection of the target institution's addresses.

Corpora are plain files with one record per publication:

* JSONL: ``{"id": ..., "doc_type": ..., "year": ..., "addresses": [...],
  "subject_categories": [...]}`` per line.
* CSV: columns ``id, doc_type, year, addresses, subject_categories``, with
  ``|`` separating multiple addresses or categories inside a cell.

Malformed lines are skipped with a line-numbered diagnostic; duplicate
record ids abort the load (corpus integrity).
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .addresses import address_segments

logger = logging.getLogger(__name__)

DOC_TYPES = ("article", "review", "letter", "proceedings_paper", "other")

#: Document types that enter the analysis unless configured otherwise.
DEFAULT_DOC_TYPES = frozenset({"article", "review", "letter", "proceedings_paper"})

_DOC_TYPE_SYNONYMS = {
    "article": "article",
    "journal article": "article",
    "review": "review",
    "letter": "letter",
    "proceedings paper": "proceedings_paper",
    "conference paper": "proceedings_paper",
}


class CorpusError(ValueError):
    """Fatal corpus problem: unusable file or duplicate record ids."""


@dataclass(frozen=True)
class BibRecord:
    """One publication: identifier, type, year, raw addresses, journal categories."""

    record_id: str
    doc_type: str
    year: int | None
    addresses: tuple[str, ...]
    subject_categories: frozenset[str]


@dataclass(frozen=True)
class InstitutionMatcher:
    """Uppercase head-segment variants identifying the target institution."""

    variant_names: frozenset[str]

    def __post_init__(self) -> None:
        normalized = {" ".join(name.upper().split()) for name in self.variant_names}
        normalized.discard("")
        if not normalized:
            raise ValueError("institution matcher needs at least one name variant")
        bad = sorted(name for name in normalized if "," in name)
        if bad:
            raise ValueError(f"institution variants may not contain commas: {bad}")
        object.__setattr__(self, "variant_names", frozenset(normalized))

    def matches(self, address: str) -> bool:
        """True when the address head (first comma segment) is a known variant."""
        segments = address_segments(address)
        return bool(segments) and segments[0] in self.variant_names


def normalize_doc_type(raw: object) -> str:
    """Map a raw document-type label onto the fixed vocabulary (default: other)."""
    key = " ".join(str(raw or "").lower().replace("_", " ").replace("-", " ").split())
    return _DOC_TYPE_SYNONYMS.get(key, "other")


def _normalize_category(raw: str) -> str:
    return " ".join(str(raw).upper().split())


def _build_record(
    record_id: object,
    doc_type: object,
    year: object,
    addresses: Iterable[object],
    subject_categories: Iterable[object],
) -> BibRecord:
    rid = str(record_id or "").strip()
    if not rid:
        raise ValueError("missing record id")

    if year in (None, ""):
        parsed_year = None
    else:
        try:
            parsed_year = int(year)  # type: ignore[arg-type]
        except (TypeError, ValueError):
            raise ValueError(f"year is not an integer: {year!r}") from None

    if isinstance(addresses, (str, bytes)) or not isinstance(addresses, Iterable):
        raise ValueError("addresses must be a list of strings")
    address_tuple = tuple(str(a).strip() for a in addresses if str(a).strip())

    if isinstance(subject_categories, (str, bytes)) or not isinstance(subject_categories, Iterable):
        raise ValueError("subject_categories must be a list of strings")
    categories = frozenset(
        _normalize_category(c) for c in subject_categories if str(c).strip()
    )

    return BibRecord(
        record_id=rid,
        doc_type=normalize_doc_type(doc_type),
        year=parsed_year,
        addresses=address_tuple,
        subject_categories=categories,
    )


def _iter_jsonl(path: Path):
    with path.open("r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            yield line_no, line


def load_corpus(
    path: str | Path,
    fmt: str = "jsonl",
    *,
    malformed: list[str] | None = None,
) -> list[BibRecord]:
    """Load all parseable records from ``path`` in file order.

    Malformed lines are logged with their line number (and appended to the
    optional ``malformed`` sink) and skipped; a duplicate record id raises
    CorpusError because downstream counts assume unique publications.
    """
    path = Path(path)
    if fmt not in ("jsonl", "csv"):
        raise ValueError(f"unknown corpus format: {fmt!r} (expected 'jsonl' or 'csv')")

    records: list[BibRecord] = []
    seen_ids: dict[str, int] = {}

    def add(record: BibRecord, line_no: int) -> None:
        if record.record_id in seen_ids:
            raise CorpusError(
                f"{path}: duplicate record id {record.record_id!r} "
                f"(lines {seen_ids[record.record_id]} and {line_no})"
            )
        seen_ids[record.record_id] = line_no
        records.append(record)

    def report(line_no: int, reason: str) -> None:
        message = f"{path}: line {line_no}: {reason}"
        logger.warning("skipping malformed record: %s", message)
        if malformed is not None:
            malformed.append(message)

    if fmt == "jsonl":
        for line_no, line in _iter_jsonl(path):
            try:
                payload = json.loads(line)
                if not isinstance(payload, dict):
                    raise ValueError("record is not a JSON object")
                record = _build_record(
                    payload.get("id"),
                    payload.get("doc_type"),
                    payload.get("year"),
                    payload.get("addresses", []),
                    payload.get("subject_categories", []),
                )
            except CorpusError:
                raise
            except ValueError as exc:
                report(line_no, str(exc))
                continue
            add(record, line_no)
    else:
        with path.open("r", encoding="utf-8", newline="") as handle:
            reader = csv.DictReader(handle)
            required = {"id", "doc_type", "year", "addresses", "subject_categories"}
            missing = required - set(reader.fieldnames or [])
            if missing:
                raise CorpusError(f"{path}: missing CSV columns: {sorted(missing)}")
            for row in reader:
                line_no = reader.line_num
                try:
                    record = _build_record(
                        row.get("id"),
                        row.get("doc_type"),
                        row.get("year"),
                        (row.get("addresses") or "").split("|"),
                        (row.get("subject_categories") or "").split("|"),
                    )
                except ValueError as exc:
                    report(line_no, str(exc))
                    continue
                add(record, line_no)

    return records


def load_institution_variants(path: str | Path) -> InstitutionMatcher:
    """Read the variant file: one name per line, ``#`` comments allowed."""
    path = Path(path)
    variants: list[str] = []
    for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "," in line:
            raise ValueError(f"{path}: line {line_no}: variant contains a comma: {line!r}")
        variants.append(line)
    if not variants:
        raise ValueError(f"{path}: no institution variants found")
    return InstitutionMatcher(variant_names=frozenset(variants))


def filter_doc_types(
    records: Sequence[BibRecord], allowed: Iterable[str] = DEFAULT_DOC_TYPES
) -> list[BibRecord]:
    """Keep exactly the records whose doc_type is allowed, order preserved."""
    allowed_set = frozenset(allowed)
    return [record for record in records if record.doc_type in allowed_set]


def select_institution_addresses(record: BibRecord, matcher: InstitutionMatcher) -> list[str]:
    """Addresses of ``record`` headed by the target institution, order preserved.

    Collaborating institutions' addresses are dropped; an empty result means
    the record carries no address of the institution under study.
    """
    return [address for address in record.addresses if matcher.matches(address)]
