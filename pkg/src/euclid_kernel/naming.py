"""Euclid's letter-naming conventions.

A point is one capital letter, a segment two, a polygon three or more, an
angle exactly three with the vertex in the middle.  Names are canonicalized
so that two names compare equal exactly when they denote the same object:
``BA`` is ``AB``, ``CBA`` and ``BCA`` are both the triangle ``ABC``.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass

from .errors import InvalidLetter, RepeatedLetter, WrongArity

_LABEL = re.compile(r"[a-z][a-z0-9_]*")

LETTERS = frozenset(string.ascii_uppercase)

KINDS = ("point", "segment", "polygon", "angle", "circle")

# magnitude sort for the kinds that carry a size
SORT_OF = {"segment": "segment", "angle": "angle", "polygon": "figure"}


@dataclass(frozen=True, order=True)
class ObjectName:
    kind: str
    letters: str

    @property
    def sort(self) -> str | None:
        return SORT_OF.get(self.kind)

    def __str__(self) -> str:
        if self.kind == "angle":
            return f"angle {self.letters}"
        if self.kind == "polygon":
            word = "triangle" if len(self.letters) == 3 else "polygon"
            return f"{word} {self.letters}"
        return self.letters

    def rename(self, mapping: dict[str, str]) -> ObjectName:
        if self.kind == "circle":
            return self
        return canonicalize(self.kind, "".join(mapping.get(c, c) for c in self.letters))


def _check_letters(raw: str, kind: str) -> None:
    for ch in raw:
        if ch not in LETTERS:
            raise InvalidLetter(f"{ch!r} in {kind} name {raw!r} is not a capital letter")
    if len(set(raw)) != len(raw):
        raise RepeatedLetter(f"{kind} name {raw!r} repeats a letter")


def dihedral_orbit(raw: str) -> list[str]:
    """Every rotation of ``raw`` and of its reversal."""
    out = []
    for word in (raw, raw[::-1]):
        for i in range(len(word)):
            out.append(word[i:] + word[:i])
    return out


def canonicalize(kind: str, raw: str) -> ObjectName:
    if kind == "triangle":
        if len(raw) != 3:
            raise WrongArity(f"triangle name {raw!r} must have 3 letters")
        kind = "polygon"
    if kind not in KINDS:
        raise ValueError(f"unknown name kind {kind!r}")
    if kind == "circle":
        if not _LABEL.fullmatch(raw):
            raise InvalidLetter(f"circle label {raw!r} must start with a lowercase letter")
        return ObjectName("circle", raw)

    arity = {"point": (1, 1), "segment": (2, 2), "angle": (3, 3), "polygon": (3, 26)}[kind]
    if not arity[0] <= len(raw) <= arity[1]:
        want = arity[0] if arity[0] == arity[1] else f"at least {arity[0]}"
        raise WrongArity(f"{kind} name {raw!r} must have {want} letters")
    _check_letters(raw, kind)

    if kind == "segment":
        return ObjectName(kind, "".join(sorted(raw)))
    if kind == "angle":
        a, v, b = raw
        if a > b:
            a, b = b, a
        return ObjectName(kind, a + v + b)
    if kind == "polygon":
        return ObjectName(kind, min(dihedral_orbit(raw)))
    return ObjectName(kind, raw)


def segment(raw: str) -> ObjectName:
    return canonicalize("segment", raw)


def angle(raw: str) -> ObjectName:
    return canonicalize("angle", raw)


def triangle(raw: str) -> ObjectName:
    return canonicalize("triangle", raw)


def sides_of(poly: ObjectName | str) -> frozenset[ObjectName]:
    """Adjacent letter pairs of a polygon name, plus first-with-last."""
    letters = poly.letters if isinstance(poly, ObjectName) else poly
    if isinstance(poly, ObjectName) and poly.kind != "polygon":
        raise WrongArity(f"{poly} is not a polygon")
    if len(letters) < 3:
        raise WrongArity(f"polygon name {letters!r} needs at least 3 letters")
    _check_letters(letters, "polygon")
    n = len(letters)
    return frozenset(segment(letters[i] + letters[(i + 1) % n]) for i in range(n))


def angles_of(poly: ObjectName | str) -> tuple[ObjectName, ...]:
    letters = poly.letters if isinstance(poly, ObjectName) else poly
    n = len(letters)
    return tuple(angle(letters[i - 1] + letters[i] + letters[(i + 1) % n]) for i in range(n))


def contract(left: str, right: str) -> ObjectName | None:
    """``UV`` and ``VY`` contract to ``UY``; anything else gives None."""
    if len(left) != 2 or len(right) != 2:
        return None
    u, v = left
    x, y = right
    if v != x or u == y:
        return None
    try:
        return segment(u + y)
    except (InvalidLetter, RepeatedLetter):
        return None


def vertex_of(name: ObjectName | str) -> str:
    letters = name.letters if isinstance(name, ObjectName) else name
    if isinstance(name, ObjectName) and name.kind != "angle" or len(letters) != 3:
        raise WrongArity(f"{name} is not a three-letter angle name")
    return letters[1]
