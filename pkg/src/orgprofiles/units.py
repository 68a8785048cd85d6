"""Canonicalization and typing of organizational-unit names.

Raw unit tokens from addresses come in many spellings (abbreviations,
Spanish/English doublets, acronyms).  A user-curated alias table maps each
variant to one chosen designation; a small ordered rule set then assigns
every canonical name an organizational type (department, faculty, ...).
Alias curation stays manual by design; ``suggest_aliases`` only drafts
candidate pairs for human review.
"""

from __future__ import annotations

import difflib
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

UNIT_TYPES = (
    "department",
    "faculty",
    "school",
    "research_center",
    "research_group",
    "unit",
    "laboratory",
    "hospital",
    "other",
)

# Ordered (pattern, type) pairs; first match wins.  Patterns match as word
# prefixes so the abbreviated database forms and the spelled-out forms both
# hit (FAC, FACULTY, FACULTAD ...).
DEFAULT_TYPE_RULES: tuple[tuple[str, str], ...] = (
    ("DEPT", "department"),
    ("DPTO", "department"),
    ("FAC", "faculty"),
    ("SCH", "school"),
    ("ESCUELA", "school"),
    ("INST", "research_center"),
    ("CTR", "research_center"),
    ("CENTRO", "research_center"),
    ("RES GRP", "research_group"),
    ("GRP", "research_group"),
    ("GRUPO", "research_group"),
    ("UNIT", "unit"),
    ("UNIDAD", "unit"),
    ("LAB", "laboratory"),
    ("HOSP", "hospital"),
)


class AliasTableError(ValueError):
    """Alias table violates idempotence: chained or conflicting entries."""


@dataclass(frozen=True)
class CanonicalUnit:
    """A normalized organizational unit with its type label."""

    name: str
    unit_type: str


def _normalize_token(token: str) -> str:
    return " ".join(token.upper().split())


class AliasTable:
    """Variant-to-canonical name map; identity for unknown tokens.

    The table must be idempotent: no canonical value may itself be a variant
    key mapping somewhere else (no chains).
    """

    def __init__(self, entries: Mapping[str, str]):
        normalized = {
            _normalize_token(variant): _normalize_token(canonical)
            for variant, canonical in entries.items()
        }
        problems = [
            f"chained entry: {variant!r} -> {canonical!r} -> {normalized[canonical]!r}"
            for variant, canonical in sorted(normalized.items())
            if canonical in normalized and normalized[canonical] != canonical
        ]
        if problems:
            raise AliasTableError("; ".join(problems))
        self._entries: dict[str, str] = normalized

    @classmethod
    def empty(cls) -> "AliasTable":
        return cls({})

    @classmethod
    def load(cls, path: str | Path) -> "AliasTable":
        """Parse a TSV alias file (``variant<TAB>canonical``, ``#`` comments).

        Chained or conflicting entries are rejected with the line numbers of
        every entry involved.
        """
        path = Path(path)
        entries: dict[str, str] = {}
        lines_of: dict[str, int] = {}
        problems: list[str] = []
        for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
                problems.append(f"line {line_no}: expected 'variant<TAB>canonical', got {raw!r}")
                continue
            variant = _normalize_token(parts[0])
            canonical = _normalize_token(parts[1])
            if variant in entries and entries[variant] != canonical:
                problems.append(
                    f"line {line_no}: conflicting entry for {variant!r} "
                    f"(line {lines_of[variant]} maps it to {entries[variant]!r})"
                )
                continue
            entries.setdefault(variant, canonical)
            lines_of.setdefault(variant, line_no)

        for variant, canonical in sorted(entries.items()):
            if canonical in entries and entries[canonical] != canonical:
                problems.append(
                    f"line {lines_of[variant]}: chained entry {variant!r} -> {canonical!r}, "
                    f"which line {lines_of[canonical]} maps to {entries[canonical]!r}"
                )
        if problems:
            raise AliasTableError(f"{path}: " + "; ".join(problems))
        return cls(entries)

    def __len__(self) -> int:
        return len(self._entries)

    def canonicalize(self, token: str) -> str:
        """Canonical name for a normalized token; the token itself if unknown."""
        return self._entries.get(token, token)


class TypeRuleSet:
    """Ordered pattern rules assigning one organizational type per unit name."""

    def __init__(self, rules: Sequence[tuple[str, str]]):
        compiled = []
        for pattern, unit_type in rules:
            if unit_type not in UNIT_TYPES:
                raise ValueError(f"unknown unit type {unit_type!r} for pattern {pattern!r}")
            words = _normalize_token(pattern).split()
            if not words:
                raise ValueError("empty type-rule pattern")
            regex = re.compile(r"\b" + r"\w*\s+".join(re.escape(w) for w in words) + r"\w*")
            compiled.append((pattern, unit_type, regex))
        self._rules = tuple(compiled)

    @classmethod
    def default(cls) -> "TypeRuleSet":
        return cls(DEFAULT_TYPE_RULES)

    @classmethod
    def load(cls, path: str | Path) -> "TypeRuleSet":
        """Parse a TSV rules file (``pattern<TAB>type``, ordered, ``#`` comments)."""
        path = Path(path)
        rules: list[tuple[str, str]] = []
        for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0].strip():
                raise ValueError(f"{path}: line {line_no}: expected 'pattern<TAB>type', got {raw!r}")
            unit_type = parts[1].strip()
            if unit_type not in UNIT_TYPES:
                raise ValueError(f"{path}: line {line_no}: unknown unit type {unit_type!r}")
            rules.append((parts[0], unit_type))
        if not rules:
            raise ValueError(f"{path}: no type rules found")
        return cls(rules)

    def classify(self, name: str) -> str:
        """Type of the first matching rule; ``other`` when nothing matches."""
        for _pattern, unit_type, regex in self._rules:
            if regex.search(name):
                return unit_type
        return "other"


def dedupe_units(names: Iterable[str], rules: TypeRuleSet) -> frozenset[CanonicalUnit]:
    """Distinct canonical units of one record (a unit counts once per paper)."""
    return frozenset(CanonicalUnit(name=name, unit_type=rules.classify(name)) for name in set(names))


@dataclass(frozen=True)
class TypeShare:
    """Per-type slice of the analyzed output."""

    publications: int
    share_pct: float
    distinct_units: int


def publication_share(count: int, total: int) -> float:
    """Percentage of ``total`` publications, rounded to one decimal."""
    if total <= 0:
        return 0.0
    return round(100.0 * count / total, 1)


def type_distribution(
    per_record_units: Sequence[Iterable[CanonicalUnit]],
) -> dict[str, TypeShare]:
    """Publication counts, output shares and distinct-unit counts per type.

    ``per_record_units`` holds the deduped unit set of each analyzed record.
    Shares may sum past 100% because one record can carry several types.
    """
    total = len(per_record_units)
    publications: Counter[str] = Counter()
    distinct: dict[str, set[str]] = {unit_type: set() for unit_type in UNIT_TYPES}
    for unit_set in per_record_units:
        types_here = set()
        for unit in unit_set:
            types_here.add(unit.unit_type)
            distinct[unit.unit_type].add(unit.name)
        publications.update(types_here)
    return {
        unit_type: TypeShare(
            publications=publications[unit_type],
            share_pct=publication_share(publications[unit_type], total),
            distinct_units=len(distinct[unit_type]),
        )
        for unit_type in UNIT_TYPES
    }


def _collapsed(token: str) -> str:
    return re.sub(r"[^0-9A-Z]+", "", token.upper())


def _abbreviates(short: str, long: str) -> bool:
    """True when ``short`` reads as a word-prefix/acronym abbreviation of ``long``.

    Every word of ``short`` must either be a prefix of the next word of
    ``long`` ("COMP" / "COMPUTAC") or spell the initials of the next few
    words ("AI" / "ARTIFICIAL INTELLIGENCE"); trailing extra words of
    ``long`` are allowed.
    """
    short_words, long_words = short.split(), long.split()
    i = j = 0
    while i < len(short_words) and j < len(long_words):
        word = short_words[i]
        if long_words[j].startswith(word):
            i, j = i + 1, j + 1
            continue
        if (
            len(word) >= 2
            and j + len(word) <= len(long_words)
            and all(long_words[j + k].startswith(word[k]) for k in range(len(word)))
        ):
            i, j = i + 1, j + len(word)
            continue
        return False
    return i == len(short_words)


def suggest_aliases(
    token_counts: Mapping[str, int], similarity: float = 0.85
) -> list[tuple[str, str]]:
    """Draft (variant, canonical) pairs for human review.

    Tokens are grouped when their collapsed forms match, one abbreviates the
    other (word prefixes or initials), or their SequenceMatcher ratio reaches
    ``similarity``; the most frequent token of a group becomes the suggested
    canonical.  Output is a suggestion, never applied automatically.
    """
    ordered = sorted(token_counts, key=lambda t: (-token_counts[t], len(t), t))
    representatives: list[str] = []
    suggestions: list[tuple[str, str]] = []
    for token in ordered:
        normalized = _normalize_token(token)
        match = None
        for rep in representatives:
            if (
                _collapsed(rep) == _collapsed(normalized)
                or _abbreviates(normalized, rep)
                or _abbreviates(rep, normalized)
                or difflib.SequenceMatcher(None, rep, normalized).ratio() >= similarity
            ):
                match = rep
                break
        if match is None:
            representatives.append(normalized)
        elif normalized != match:
            suggestions.append((normalized, match))
    return sorted(suggestions, key=lambda pair: (pair[1], pair[0]))
