"""AST for ``.euclid`` theories.

Spans are excluded from equality so that a pretty-printed and re-parsed
theory compares equal to the original.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Union

from .errors import Span
from .judgment import Judgment
from .naming import ObjectName
from .schema import Decl, Schema

PARTS = ("enunciation", "exposition", "specification", "construction", "proof", "conclusion")


def _span():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class DeclStmt:
    decl: Decl
    span: Span | None = _span()


@dataclass(frozen=True)
class HypStmt:
    judgment: Judgment
    label: str | None = None
    span: Span | None = _span()


@dataclass(frozen=True)
class SeekStmt:
    target: ObjectName
    goals: tuple[Judgment, ...] = ()
    span: Span | None = _span()


@dataclass(frozen=True)
class ShowStmt:
    judgment: Judgment
    span: Span | None = _span()


@dataclass(frozen=True)
class LetStmt:
    targets: tuple[str, ...]
    op: str  # line circle meet extend pick apply
    args: tuple[str, ...]
    ref: str | None = None  # proposition number for apply
    span: Span | None = _span()


@dataclass(frozen=True)
class DiagramStmt:
    judgment: Judgment
    span: Span | None = _span()


Premise = Union[str, Judgment]


@dataclass(frozen=True)
class StepStmt:
    label: str
    conclusions: tuple[Judgment, ...]
    rule: str
    rule_args: tuple[str, ...] = ()
    premises: tuple[Premise, ...] = ()
    gloss: str | None = None  # transcribed sentence of the source text
    span: Span | None = _span()

    @property
    def cites_theorem(self) -> bool:
        return self.rule[0].isdigit()


@dataclass(frozen=True)
class Enunciation:
    prose: str
    decls: tuple[DeclStmt, ...] = ()
    hypotheses: tuple[HypStmt, ...] = ()
    seek: SeekStmt | None = None
    goals: tuple[ShowStmt, ...] = ()
    span: Span | None = _span()


@dataclass(frozen=True)
class PropositionAst:
    number: str
    kind: str  # problem | theorem
    enunciation: Enunciation
    primitive: bool = False
    exposition: tuple[Union[DeclStmt, HypStmt], ...] = ()
    specification: tuple[Union[SeekStmt, ShowStmt], ...] = ()
    specification_elided: bool = False
    construction: tuple[Union[LetStmt, DiagramStmt], ...] = ()
    proof: tuple[StepStmt, ...] = ()
    conclusion: str | None = None  # restated prose; None when elided
    closing: str | None = None  # qed-do | qed-show
    span: Span | None = _span()

    def schema(self) -> Schema:
        e = self.enunciation
        return Schema(
            number=self.number,
            kind=self.kind,
            decls=tuple(d.decl for d in e.decls),
            hypotheses=tuple(h.judgment for h in e.hypotheses),
            goals=(e.seek.goals if e.seek else tuple(g.judgment for g in e.goals)),
            seek=e.seek.target if e.seek else None,
            primitive=self.primitive,
            prose=e.prose,
        )

    def references(self) -> list[tuple[str, Span | None]]:
        refs = [(s.ref, s.span) for s in self.construction if isinstance(s, LetStmt) and s.ref]
        refs += [(s.rule, s.span) for s in self.proof if s.cites_theorem]
        return refs

    def rename(self, mapping: dict[str, str]) -> PropositionAst:
        """Uniformly rename point letters in every part but the enunciation."""
        def letters(s: str) -> str:
            return "".join(mapping.get(c, c) for c in s)

        def arg(s: str) -> str:
            return letters(s) if s[:1].isupper() else s

        def stmt(s):
            if isinstance(s, DeclStmt):
                return replace(s, decl=s.decl.rename(mapping))
            if isinstance(s, (HypStmt, ShowStmt, DiagramStmt)):
                return replace(s, judgment=s.judgment.rename(mapping))
            if isinstance(s, SeekStmt):
                return replace(s, target=s.target.rename(mapping),
                               goals=tuple(g.rename(mapping) for g in s.goals))
            if isinstance(s, LetStmt):
                return replace(s, targets=tuple(arg(t) for t in s.targets),
                               args=tuple(arg(a) for a in s.args))
            if isinstance(s, StepStmt):
                return replace(
                    s,
                    conclusions=tuple(c.rename(mapping) for c in s.conclusions),
                    rule_args=tuple(arg(a) for a in s.rule_args),
                    premises=tuple(p if isinstance(p, str) else p.rename(mapping) for p in s.premises),
                )
            raise TypeError(s)

        return replace(
            self,
            exposition=tuple(map(stmt, self.exposition)),
            specification=tuple(map(stmt, self.specification)),
            construction=tuple(map(stmt, self.construction)),
            proof=tuple(map(stmt, self.proof)),
        )


@dataclass(frozen=True)
class TheoryAst:
    name: str
    propositions: tuple[PropositionAst, ...]

    def __len__(self) -> int:
        return len(self.propositions)

    def get(self, number: str) -> PropositionAst | None:
        return next((p for p in self.propositions if p.number == number), None)
