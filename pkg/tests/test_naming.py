from __future__ import annotations

import string

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from euclid_kernel.errors import InvalidLetter, RepeatedLetter, WrongArity
from euclid_kernel.naming import (
    ObjectName,
    angles_of,
    canonicalize,
    contract,
    dihedral_orbit,
    segment,
    sides_of,
    vertex_of,
)

LETTERS = string.ascii_uppercase


def distinct(min_size, max_size):
    return st.lists(st.sampled_from(LETTERS), min_size=min_size, max_size=max_size,
                    unique=True).map("".join)


def orbit_oracle(raw: str) -> set[str]:
    """Brute force: close {raw} under one-step rotation and reversal."""
    seen, todo = {raw}, [raw]
    while todo:
        w = todo.pop()
        for nxt in (w[1:] + w[0], w[::-1]):
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return seen


@settings(max_examples=300)
@given(distinct(3, 8))
def test_polygon_orbit_invariance(raw):
    orbit = orbit_oracle(raw)
    assert set(dihedral_orbit(raw)) == orbit
    assert {canonicalize("polygon", w) for w in orbit} == {canonicalize("polygon", raw)}
    assert canonicalize("polygon", raw).letters == min(orbit)


@settings(max_examples=300)
@given(distinct(3, 8), distinct(3, 8))
def test_polygon_equal_iff_same_orbit(a, b):
    same = canonicalize("polygon", a) == canonicalize("polygon", b)
    assert same == (b in orbit_oracle(a))


@given(st.sampled_from(["point", "segment", "angle", "polygon"]), distinct(1, 8))
def test_idempotent(kind, raw):
    try:
        once = canonicalize(kind, raw)
    except WrongArity:
        return
    assert canonicalize(kind, once.letters) == once


@given(distinct(2, 2))
def test_segment_symmetry(raw):
    assert segment(raw) == segment(raw[::-1])


@given(distinct(3, 3))
def test_angle_keeps_vertex(raw):
    a = canonicalize("angle", raw)
    assert vertex_of(a) == raw[1]
    assert a == canonicalize("angle", raw[::-1])


@given(distinct(3, 3))
def test_contract_matches_segment_names(raw):
    u, v, y = raw
    assert contract(u + v, v + y) == segment(u + y)
    assert contract(v + u, v + y) is None


def test_contract_refuses_loop():
    assert contract("AB", "BA") is None


def test_sides_and_angles():
    assert sides_of("ABC") == {segment("AB"), segment("BC"), segment("CA")}
    assert sides_of(canonicalize("polygon", "CBA")) == sides_of("ABC")
    assert canonicalize("angle", "CAB") in angles_of("ABC")


def test_triangle_alias_and_str():
    t = canonicalize("triangle", "CBA")
    assert t == ObjectName("polygon", "ABC")
    assert str(t) == "triangle ABC"
    assert str(canonicalize("angle", "CBA")) == "angle ABC"


@pytest.mark.parametrize("kind,raw,exc", [
    ("segment", "AA", RepeatedLetter),
    ("segment", "ABC", WrongArity),
    ("angle", "AB", WrongArity),
    ("triangle", "ABCD", WrongArity),
    ("point", "a", InvalidLetter),
    ("circle", "C1", InvalidLetter),
])
def test_bad_names(kind, raw, exc):
    with pytest.raises(exc):
        canonicalize(kind, raw)


def test_rename():
    t = canonicalize("polygon", "ABC").rename({"A": "Z"})
    assert t == canonicalize("polygon", "BCZ")
