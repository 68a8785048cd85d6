"""Research profiles and concentration indicators per organizational unit.

A unit's profile breaks its publication output down over the categories of a
classification system (full counting: a paper adds 1 to every category of
its journal).  An aggregated system groups base categories into broader
disciplines; there a paper adds 1 to each distinct discipline its categories
map to, so per-discipline counts stay true publication counts.

Concentration is measured with a rank-based Gini coefficient over the full
category universe, zero categories included: 0 means output spread evenly
over all categories, 1 means concentration in a single one.
"""

from __future__ import annotations

import csv
import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .corpus import BibRecord
from .units import CanonicalUnit

logger = logging.getLogger(__name__)

# Styling cutoffs for rendered tables: strongly dispersed profiles are
# bolded, near single-field ones starred.  Both comparisons are strict and
# applied to the unrounded value.
GINI_BOLD_BELOW = 0.5
GINI_STAR_ABOVE = 0.8


@dataclass(frozen=True)
class ClassificationSystem:
    """A category universe, optionally reached through a base-system mapping."""

    name: str
    categories: tuple[str, ...]
    mapping: Mapping[str, frozenset[str]] | None = None

    def __post_init__(self) -> None:
        if not self.categories:
            raise ValueError(f"classification {self.name!r} has no categories")
        if len(set(self.categories)) != len(self.categories):
            raise ValueError(f"classification {self.name!r} has duplicate categories")
        if self.mapping is not None:
            universe = set(self.categories)
            stray = sorted(
                target
                for targets in self.mapping.values()
                for target in targets
                if target not in universe
            )
            if stray:
                raise ValueError(f"mapping targets outside {self.name!r} universe: {stray}")

    @cached_property
    def _category_set(self) -> frozenset[str]:
        return frozenset(self.categories)

    @property
    def size(self) -> int:
        return len(self.categories)

    def project(self, categories: Iterable[str]) -> frozenset[str]:
        """Categories of this system reached by a record's base categories.

        Identity systems keep the known categories; aggregated systems return
        the union of mapping targets, which dedupes at record level by
        construction.  Unknown inputs are dropped.
        """
        if self.mapping is None:
            return frozenset(c for c in categories if c in self._category_set)
        out: set[str] = set()
        for category in categories:
            out.update(self.mapping.get(category, frozenset()))
        return frozenset(out)


def load_classification(path: str | Path, name: str | None = None) -> ClassificationSystem:
    """Read a category universe: one code per line, optional TAB label, ``#`` comments."""
    path = Path(path)
    categories: list[str] = []
    seen: set[str] = set()
    for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        code = " ".join(line.split("\t")[0].upper().split())
        if code in seen:
            raise ValueError(f"{path}: line {line_no}: duplicate category {code!r}")
        seen.add(code)
        categories.append(code)
    return ClassificationSystem(name=name or path.stem, categories=tuple(categories))


def load_category_mapping(path: str | Path) -> dict[str, frozenset[str]]:
    """Read a ``base_category,target`` CSV (many-to-many; duplicate rows rejected)."""
    path = Path(path)
    pairs: dict[str, set[str]] = {}
    with path.open("r", encoding="utf-8", newline="") as handle:
        for line_no, row in enumerate(csv.reader(handle), start=1):
            if not row or (row[0].strip().startswith("#")):
                continue
            if [cell.strip().lower() for cell in row] == ["sc_code", "discipline"]:
                continue  # optional header
            if len(row) != 2 or not row[0].strip() or not row[1].strip():
                raise ValueError(f"{path}: line {line_no}: expected 'category,target', got {row!r}")
            base = " ".join(row[0].upper().split())
            target = " ".join(row[1].upper().split())
            if target in pairs.get(base, ()):
                raise ValueError(f"{path}: line {line_no}: duplicate mapping {base!r} -> {target!r}")
            pairs.setdefault(base, set()).add(target)
    if not pairs:
        raise ValueError(f"{path}: no mapping rows found")
    return {base: frozenset(targets) for base, targets in pairs.items()}


def aggregate_classification(
    base: ClassificationSystem,
    mapping: Mapping[str, frozenset[str]],
    name: str,
) -> ClassificationSystem:
    """Build the aggregated system whose universe is the set of mapping targets.

    Base categories without any target (and mapping keys unknown to the base
    system) are reported once here; they silently contribute nothing later.
    """
    unmapped = sorted(set(base.categories) - set(mapping))
    if unmapped:
        logger.warning(
            "%d %s categories have no %s target: %s",
            len(unmapped), base.name, name, ", ".join(unmapped),
        )
    unknown = sorted(set(mapping) - set(base.categories))
    if unknown:
        logger.warning(
            "%d mapping keys are not %s categories: %s",
            len(unknown), base.name, ", ".join(unknown),
        )
    categories = tuple(sorted({target for targets in mapping.values() for target in targets}))
    return ClassificationSystem(name=name, categories=categories, mapping=dict(mapping))


@dataclass(frozen=True)
class ProfileVector:
    """Per-category publication counts of one unit over a category universe.

    ``counts`` holds the nonzero entries; the remaining
    ``universe_size - len(counts)`` categories are zero.
    """

    unit: CanonicalUnit
    counts: Mapping[str, int]
    universe_size: int

    def __post_init__(self) -> None:
        if self.universe_size < 1:
            raise ValueError("universe_size must be positive")
        if len(self.counts) > self.universe_size:
            raise ValueError("more counted categories than the universe holds")
        if any(value < 0 for value in self.counts.values()):
            raise ValueError("category counts must be non-negative")

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def mean(self) -> float:
        return self.total / self.universe_size


def build_profile(
    unit: CanonicalUnit,
    records: Iterable[BibRecord],
    system: ClassificationSystem,
) -> ProfileVector:
    """Full-counting profile of ``unit`` over the records that contain it.

    Each record adds 1 to every category its journal reaches under
    ``system``; records without usable categories contribute nothing.
    """
    counts: Counter[str] = Counter()
    for record in records:
        for category in system.project(record.subject_categories):
            counts[category] += 1
    return ProfileVector(unit=unit, counts=dict(counts), universe_size=system.size)


def gini(profile: ProfileVector) -> float | None:
    """Rank-based Gini concentration of a profile over its full universe.

    With x sorted descending and rank 1 for the largest value,

        G = (N + 1)/(N - 1) - 2 * sum(rank_i * x_i) / (N * (N - 1) * mean)

    computed here as one exact integer expression per the same algebra, so a
    single-category profile is exactly 1.0 and a uniform one exactly 0.0.
    Zero categories occupy the trailing ranks and contribute nothing, which
    also makes the result invariant under tie reordering.  Returns None for
    an all-zero profile (no measurable output, deliberately neither 0 nor 1).
    """
    n = profile.universe_size
    if n < 2:
        raise ValueError("gini needs a universe of at least 2 categories")
    values = sorted(profile.counts.values(), reverse=True)
    total = sum(values)
    if total == 0:
        return None
    rank_weighted = sum(rank * value for rank, value in enumerate(values, start=1))
    g = ((n + 1) * total - 2 * rank_weighted) / ((n - 1) * total)
    # Floating-point drift can only appear for non-integer counts.
    return min(1.0, max(0.0, g))


def field_count(profile: ProfileVector) -> int:
    """Number of categories in which the unit actually published."""
    return sum(1 for value in profile.counts.values() if value > 0)


@dataclass(frozen=True)
class UnitIndicators:
    """One indicator row: output size, centrality and both concentration pairs."""

    name: str
    unit_type: str
    publications: int
    betweenness: float
    gini_sc: float | None
    n_sc: int
    gini_disc: float | None
    n_disc: int


def indicator_table(
    units: Iterable[CanonicalUnit],
    pub_counts: Mapping[str, int],
    centrality: Mapping[str, float],
    sc_profiles: Mapping[str, ProfileVector],
    disc_profiles: Mapping[str, ProfileVector],
    min_pubs: int = 0,
    unit_type: str | None = None,
) -> list[UnitIndicators]:
    """Indicator rows for every unit with more than ``min_pubs`` publications.

    The publication threshold is strict (a unit at exactly ``min_pubs`` is
    excluded); ``unit_type`` optionally restricts rows to one organizational
    type.  Rows are ordered by publications descending, then name.
    """
    rows: list[UnitIndicators] = []
    for unit in units:
        if unit_type is not None and unit.unit_type != unit_type:
            continue
        publications = pub_counts.get(unit.name, 0)
        if publications <= min_pubs:
            continue
        sc = sc_profiles[unit.name]
        disc = disc_profiles[unit.name]
        rows.append(
            UnitIndicators(
                name=unit.name,
                unit_type=unit.unit_type,
                publications=publications,
                betweenness=centrality.get(unit.name, 0.0),
                gini_sc=gini(sc),
                n_sc=field_count(sc),
                gini_disc=gini(disc),
                n_disc=field_count(disc),
            )
        )
    rows.sort(key=lambda row: (-row.publications, row.name))
    return rows


def _gini_cell(value: float | None, *, styled: bool) -> str:
    if value is None:
        return ""
    text = f"{value:.2f}" if styled else f"{value:.6f}"
    if not styled:
        return text
    if value > GINI_STAR_ABOVE:
        text += "*"
    if value < GINI_BOLD_BELOW:
        text = f"<b>{text}</b>"
    return text


def write_indicator_csv(rows: Sequence[UnitIndicators], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(
            ["name", "type", "P", "betweenness", "gini_sc", "n_sc", "gini_disc", "n_disc"]
        )
        for row in rows:
            writer.writerow(
                [
                    row.name,
                    row.unit_type,
                    row.publications,
                    f"{row.betweenness:.6f}",
                    _gini_cell(row.gini_sc, styled=False),
                    row.n_sc,
                    _gini_cell(row.gini_disc, styled=False),
                    row.n_disc,
                ]
            )


def render_indicator_markdown(
    rows: Sequence[UnitIndicators],
    sc_system: ClassificationSystem,
    disc_system: ClassificationSystem,
) -> str:
    """Aligned Markdown table, Gini to 2 decimals with ``<b>``/``*`` style flags.

    Universe sizes are printed in the header because the Gini value is only
    interpretable against the N it was computed over.
    """
    header = [
        "Unit",
        "Type",
        "P",
        "B",
        f"G ({sc_system.name}, N={sc_system.size})",
        "Fields",
        f"G ({disc_system.name}, N={disc_system.size})",
        "Fields",
    ]
    body = [
        [
            row.name,
            row.unit_type,
            str(row.publications),
            f"{row.betweenness:.2f}",
            _gini_cell(row.gini_sc, styled=True),
            str(row.n_sc),
            _gini_cell(row.gini_disc, styled=True),
            str(row.n_disc),
        ]
        for row in rows
    ]
    widths = []
    for column in range(len(header)):
        cells = [header[column]] + [line[column] for line in body]
        widths.append(max(len(cell) for cell in cells))

    def fmt(cells: Sequence[str]) -> str:
        return "| " + " | ".join(cell.ljust(widths[i]) for i, cell in enumerate(cells)) + " |"

    lines = [fmt(header), "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
    lines.extend(fmt(line) for line in body)
    return "\n".join(lines) + "\n"
