"""Judgments: the statements facts are made of.

Kinds
    ``eq``      Euclid-equality ``X = Y`` (symmetric, stored sorted)
    ``decomp``  ``W == X + Y``; a difference ``X == W - Y`` is stored as
                ``W == X + Y``; the two parts are stored sorted
    ``ident``   name identity ``X == Y`` (same object under two names)
    ``gt``      ``X > Y``
    ``on``      a point on a circle, or strictly inside a segment
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SortMismatch
from .naming import ObjectName

MAGNITUDE_KINDS = ("eq", "decomp", "ident", "gt")


@dataclass(frozen=True, order=True)
class Judgment:
    kind: str
    args: tuple[ObjectName, ...]

    # constructors keep the storage form canonical

    @staticmethod
    def equal(x: ObjectName, y: ObjectName) -> Judgment:
        _same_sort(x, y)
        return Judgment("eq", tuple(sorted((x, y))))

    @staticmethod
    def ident(x: ObjectName, y: ObjectName) -> Judgment:
        _same_sort(x, y)
        return Judgment("ident", tuple(sorted((x, y))))

    @staticmethod
    def decomp(whole: ObjectName, a: ObjectName, b: ObjectName) -> Judgment:
        _same_sort(whole, a, b)
        return Judgment("decomp", (whole, *sorted((a, b))))

    @staticmethod
    def difference(rest: ObjectName, whole: ObjectName, part: ObjectName) -> Judgment:
        """``rest == whole - part``."""
        return Judgment.decomp(whole, part, rest)

    @staticmethod
    def greater(x: ObjectName, y: ObjectName) -> Judgment:
        _same_sort(x, y)
        return Judgment("gt", (x, y))

    @staticmethod
    def on(point: ObjectName, carrier: ObjectName) -> Judgment:
        if point.kind != "point" or carrier.kind not in ("circle", "segment"):
            raise SortMismatch(f"on() relates a point to a circle or segment, not {point}, {carrier}")
        return Judgment("on", (point, carrier))

    @property
    def sort(self) -> str | None:
        if self.kind in MAGNITUDE_KINDS:
            return self.args[0].sort
        return None

    def objects(self) -> tuple[ObjectName, ...]:
        return self.args

    def rename(self, mapping: dict[str, str]) -> Judgment:
        args = [a.rename(mapping) for a in self.args]
        return rebuild(self.kind, args)

    def __str__(self) -> str:
        a = self.args
        if self.kind == "eq":
            return f"{a[0]} = {a[1]}"
        if self.kind == "ident":
            return f"{a[0]} == {a[1]}"
        if self.kind == "decomp":
            return f"{a[0]} == {a[1]} + {a[2]}"
        if self.kind == "gt":
            return f"{a[0]} > {a[1]}"
        return f"on({a[0]}, {a[1]})"


def rebuild(kind: str, args) -> Judgment:
    if kind == "eq":
        return Judgment.equal(*args)
    if kind == "ident":
        return Judgment.ident(*args)
    if kind == "decomp":
        return Judgment.decomp(*args)
    if kind == "gt":
        return Judgment.greater(*args)
    if kind == "on":
        return Judgment.on(*args)
    raise ValueError(kind)


def _same_sort(*names: ObjectName) -> None:
    sorts = {n.sort for n in names}
    if None in sorts:
        bad = next(n for n in names if n.sort is None)
        raise SortMismatch(f"{bad} is not a magnitude")
    if len(sorts) != 1:
        raise SortMismatch("operands mix sorts: " + ", ".join(f"{n} ({n.sort})" for n in names))
