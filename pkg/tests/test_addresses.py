from __future__ import annotations

import random

import pytest

from orgprofiles.addresses import (
    address_segments,
    is_university_only,
    looks_like_location,
    normalize_address,
    parse_address,
    split_addresses,
)
from golden_addresses import GOLDEN_ADDRESSES


@pytest.mark.parametrize("raw, head, units, tail", GOLDEN_ADDRESSES)
def test_golden_parses(raw, head, units, tail):
    parse = parse_address(raw)
    assert parse.head == head
    assert parse.unit_tokens == units
    assert parse.tail == tail


@pytest.mark.parametrize("raw, head, units, tail", GOLDEN_ADDRESSES)
def test_golden_reconstruction(raw, head, units, tail):
    parse = parse_address(raw)
    assert parse.reconstruct() == normalize_address(raw)
    assert len(parse.tail) <= 2
    assert len(parse.unit_tokens) + len(parse.tail) + 1 == len(address_segments(raw))
    assert "" not in parse.unit_tokens


def test_split_addresses_dot_delimited():
    field = "A, X, Y, SPAIN. B, Z, W, SPAIN."
    assert split_addresses(field) == ["A, X, Y, SPAIN", "B, Z, W, SPAIN"]


def test_split_addresses_single_no_trailing_dot():
    assert split_addresses("A, X, SPAIN") == ["A, X, SPAIN"]


def test_split_addresses_empty_field():
    assert split_addresses("") == []


def test_split_addresses_pathological_logs(caplog):
    with caplog.at_level("WARNING", logger="orgprofiles.addresses"):
        assert split_addresses(" . . ") == []
    assert any("no addresses" in message for message in caplog.messages)


def test_split_then_parse_three_addresses():
    field = (
        "UNIV GRANADA, FAC SCI, E-18071 GRANADA, SPAIN. "
        "UNIV GRANADA, DEPT OPT, E-18071 GRANADA, SPAIN. "
        "UNIV GRANADA, E-18071 GRANADA, SPAIN."
    )
    parses = [parse_address(address) for address in split_addresses(field)]
    assert [p.unit_tokens for p in parses] == [("FAC SCI",), ("DEPT OPT",), ()]


def test_parse_empty_address_raises():
    with pytest.raises(ValueError):
        parse_address("")
    with pytest.raises(ValueError):
        parse_address(" ,  , ")


def test_is_university_only():
    assert is_university_only(parse_address("UNIV GRANADA, E-18071 GRANADA, SPAIN"))
    assert not is_university_only(
        parse_address("UNIV GRANADA, FAC SCI, E-18071 GRANADA, SPAIN")
    )


def test_university_only_share_of_corpus():
    # 2 of 5 addresses carry no unit -> exactly 3 enter the analysis.
    raws = [
        "UNIV X, E-18071 G, SPAIN",
        "UNIV X, DEPT A, E-18071 G, SPAIN",
        "UNIV X, SPAIN",
        "UNIV X, DEPT B, E-18071 G, SPAIN",
        "UNIV X, FAC C, DEPT D, E-18071 G, SPAIN",
    ]
    parses = [parse_address(raw) for raw in raws]
    discarded = sum(1 for p in parses if is_university_only(p))
    assert discarded == 2
    assert len(parses) - discarded == 3


def test_looks_like_location():
    assert looks_like_location("E-18071 GRANADA")
    assert looks_like_location("SPAIN")
    assert looks_like_location("peoples r china")
    assert not looks_like_location("DEPT BIOCHEM & MOL BIOL 2")
    assert not looks_like_location("FAC SCI")


def _random_segment(rng: random.Random) -> str:
    words = []
    for _ in range(rng.randint(1, 4)):
        kind = rng.random()
        if kind < 0.15:
            words.append(str(rng.randint(0, 99999)))
        elif kind < 0.3:
            words.append(rng.choice(["E-18071", "CA", "94720", "2", "X1"]))
        else:
            word = "".join(rng.choice("ABCDEFGHIJKLMNOPQRSTUVWXYZÑÉ&") for _ in range(rng.randint(1, 8)))
            words.append(word if rng.random() < 0.7 else word.lower())
    return (" " * rng.randint(1, 3)).join(words)


def test_reconstruction_fuzz_10k():
    rng = random.Random(20_240_817)
    for _ in range(10_000):
        separator = rng.choice([",", ";"])
        segments = [_random_segment(rng) for _ in range(rng.randint(1, 8))]
        raw = (separator + " " * rng.randint(0, 2)).join(segments)
        parse = parse_address(raw)
        assert parse.reconstruct() == normalize_address(raw)
        assert len(parse.tail) <= 2
        assert len(parse.unit_tokens) + len(parse.tail) + 1 == len(address_segments(raw))
        assert parse == parse_address(raw)  # deterministic and pure
