"""Decomposition of affiliation address strings into organizational units.

An address string is a comma-separated sequence of segments: the first
segment names the major organizational level (the university), the last two
carry location information (postcode + city, then country), and everything
in between names sub-institutional units::

    UNIV GRANADA, FAC SCI, DEPT COMP SCI & ARTIFICIAL INTELLIGENCE, E-18071 GRANADA, SPAIN
    \\________/  \\_________________________________________________/ \\_____________________/
       head                       unit tokens                                 tail

Parsing is purely positional; a small location heuristic only kicks in for
ambiguous 3-segment addresses, where the single middle segment may be either
a unit or a postcode/city.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass

from ._countries import COUNTRY_NAMES

logger = logging.getLogger(__name__)

# An address field may pack several addresses separated by "." followed by
# whitespace (or end of field).  Dots inside a segment never carry spaces in
# database exports, so this is safe for well-formed fields.
_ADDRESS_DELIMITER = re.compile(r"\.(?:\s+|$)")

# Two or more consecutive digits look like a postcode ("E-18071 GRANADA").
# A single digit does not: unit names such as "DEPT BIOCHEM & MOL BIOL 2"
# are real and must survive.
_DIGIT_RUN = re.compile(r"\d\d")


@dataclass(frozen=True)
class AddressParse:
    """One address split into head institution, unit tokens and location tail."""

    head: str
    unit_tokens: tuple[str, ...]
    tail: tuple[str, ...]

    def reconstruct(self) -> str:
        """Rejoin all parts; equals ``normalize_address`` of the source string."""
        return ", ".join((self.head, *self.unit_tokens, *self.tail))


def address_segments(address: str) -> list[str]:
    """Comma-delimited segments of an address, uppercased and space-collapsed.

    Semicolons are treated as commas (some sources use them as the unit
    separator).  Empty segments are dropped.
    """
    text = address.upper().replace(";", ",")
    segments = [" ".join(part.split()) for part in text.split(",")]
    return [segment for segment in segments if segment]


def normalize_address(address: str) -> str:
    """Canonical single-spaced, uppercase, comma-space form of an address."""
    return ", ".join(address_segments(address))


def split_addresses(address_field: str) -> list[str]:
    """Split a raw multi-address field into individual address strings.

    Addresses are delimited by a dot followed by whitespace or the end of
    the field.  Returns trimmed, non-empty address strings; not needed when
    records already carry addresses as a list.
    """
    parts = [part.strip() for part in _ADDRESS_DELIMITER.split(address_field)]
    addresses = [part for part in parts if part]
    if address_field.strip() and not addresses:
        logger.warning("address field yielded no addresses: %r", address_field)
    return addresses


def looks_like_location(segment: str) -> bool:
    """True when a segment reads as postcode/city or country rather than a unit."""
    normalized = " ".join(segment.upper().split())
    return bool(_DIGIT_RUN.search(normalized)) or normalized in COUNTRY_NAMES


def parse_address(address: str) -> AddressParse:
    """Split one address into head, unit tokens and location tail.

    The first segment is always the head.  With four or more segments the
    last two are stripped as location tail; with exactly three, only the
    final segment is stripped and the middle one counts as a unit unless it
    matches the location heuristic; with one or two segments there are no
    unit tokens.

    Raises ValueError on an empty (or all-whitespace) address.
    """
    segments = address_segments(address)
    if not segments:
        raise ValueError(f"cannot parse empty address: {address!r}")

    head = segments[0]
    rest = segments[1:]
    if len(segments) >= 4:
        units, tail = rest[:-2], rest[-2:]
    elif len(segments) == 3:
        middle, last = rest
        if looks_like_location(middle):
            units, tail = [], [middle, last]
        else:
            units, tail = [middle], [last]
    else:
        units, tail = [], rest
    return AddressParse(head=head, unit_tokens=tuple(units), tail=tuple(tail))


def is_university_only(parse: AddressParse) -> bool:
    """True when the address names no unit below the main organizational level."""
    return not parse.unit_tokens
