"""Enunciation schemas and letter bindings.

A schema is the general statement of a proposition over schematic letters.
Using a verified proposition (as a derived construction or as a rule) binds
those letters to the letters of the current figure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import KernelError, SchemaMismatch
from .judgment import Judgment
from .naming import ObjectName, canonicalize, segment


@dataclass(frozen=True)
class Decl:
    """A declared object: ``segment AB``, ``isosceles ABC apex A``, or an
    extension ``extend AB beyond B to D``."""

    kind: str
    letters: str
    apex: str | None = None
    beyond: str | None = None
    new: str | None = None

    def all_letters(self) -> str:
        if self.kind == "extend":
            return self.letters + self.new
        return self.letters

    def object_name(self) -> ObjectName:
        if self.kind == "extend":
            return canonicalize("point", self.new)
        kind = "triangle" if self.kind == "isosceles" else self.kind
        return canonicalize(kind, self.letters)

    def implied_hypotheses(self) -> tuple[Judgment, ...]:
        if self.kind == "isosceles":
            a = self.apex
            b, c = [x for x in self.letters if x != a]
            return (Judgment.equal(segment(a + b), segment(a + c)),)
        if self.kind == "extend":
            other = self.letters.replace(self.beyond, "")
            return (Judgment.on(canonicalize("point", self.beyond), segment(other + self.new)),)
        return ()

    def rename(self, mapping: dict[str, str]) -> Decl:
        def r(s):
            return None if s is None else "".join(mapping.get(c, c) for c in s)
        return Decl(self.kind, r(self.letters), r(self.apex), r(self.beyond), r(self.new))

    def __str__(self) -> str:
        if self.kind == "isosceles":
            return f"isosceles {self.letters} apex {self.apex}"
        if self.kind == "extend":
            return f"extend {self.letters} beyond {self.beyond} to {self.new}"
        return f"{self.kind} {self.letters}"


@dataclass(frozen=True)
class Schema:
    number: str
    kind: str  # "problem" | "theorem"
    decls: tuple[Decl, ...]
    hypotheses: tuple[Judgment, ...]
    goals: tuple[Judgment, ...]
    seek: ObjectName | None = None
    primitive: bool = False
    prose: str = ""

    def all_hypotheses(self) -> tuple[Judgment, ...]:
        implied = tuple(h for d in self.decls for h in d.implied_hypotheses())
        return implied + tuple(h for h in self.hypotheses if h not in implied)

    def given_letters(self) -> set[str]:
        return {c for d in self.decls for c in d.all_letters()}

    def fresh_letters(self) -> list[str]:
        """Letters a problem produces, in order of first appearance."""
        known = self.given_letters()
        out: list[str] = []
        names = ([self.seek] if self.seek else []) + [a for g in self.goals for a in g.args]
        for name in names:
            if name.kind == "circle":
                continue
            for c in name.letters:
                if c not in known and c not in out:
                    out.append(c)
        return out

    def lines(self) -> list[str]:
        out = [f"for {d}" for d in self.decls]
        out += [f"assume {h}" for h in self.hypotheses]
        if self.kind == "problem":
            out.append(f"seek {self.seek}" + (" with " + ", ".join(map(str, self.goals)) if self.goals else ""))
        else:
            out += [f"then {g}" for g in self.goals]
        return out


@dataclass
class Binding:
    mapping: dict[str, str] = field(default_factory=dict)

    def bind(self, schematic: str, actual: str) -> None:
        have = self.mapping.get(schematic)
        if have is not None and have != actual:
            raise SchemaMismatch(f"letter {schematic} bound to both {have} and {actual}")
        self.mapping[schematic] = actual


def bind_args(schema: Schema, args: list[str]) -> dict[str, str]:
    """Positional binding of a schema's declarations to argument names."""
    if len(args) != len(schema.decls):
        raise SchemaMismatch(
            f"{schema.number} takes {len(schema.decls)} argument(s), got {len(args)}")
    b = Binding()
    for decl, arg in zip(schema.decls, args):
        if decl.kind == "extend":
            if len(arg) != 1:
                raise SchemaMismatch(f"argument for {decl} must be a point, got {arg}")
            b.bind(decl.new, arg)
            continue
        if len(arg) != len(decl.letters):
            raise SchemaMismatch(f"argument {arg} does not fit {decl}")
        for s, a in zip(decl.letters, arg):
            b.bind(s, a)
    return b.mapping


def align(schema_decls: tuple[Decl, ...], actual: list[Decl]) -> dict[str, str]:
    """Injective letter map from enunciation declarations to exposition ones."""
    if len(schema_decls) != len(actual):
        raise SchemaMismatch(
            f"enunciation declares {len(schema_decls)} object(s), exposition {len(actual)}")
    b = Binding()
    for s, a in zip(schema_decls, actual):
        if s.kind != a.kind or len(s.all_letters()) != len(a.all_letters()):
            raise SchemaMismatch(f"exposition '{a}' does not instantiate '{s}'")
        for x, y in zip(s.all_letters(), a.all_letters()):
            b.bind(x, y)
        if s.kind == "isosceles":
            b.bind(s.apex, a.apex)
        if s.kind == "extend":
            b.bind(s.beyond, a.beyond)
    images = list(b.mapping.values())
    if len(set(images)) != len(images):
        raise SchemaMismatch("exposition identifies letters the enunciation keeps distinct")
    return b.mapping


def instantiate(obj, mapping: dict[str, str]):
    try:
        return obj.rename(mapping)
    except KernelError as exc:
        raise SchemaMismatch(f"instantiating {obj}: {exc}") from exc
