"""Exception classes and the diagnostic record shared by parser and checker."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Span:
    line: int
    column: int
    length: int = 1

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class Diagnostic:
    """One problem found while parsing or checking.

    ``code`` is the exact error class name (``NoCommonRadius``), ``category``
    the diagnostic family a report groups it under (``UnconstructedObject``,
    ``UnjustifiedPremise``, ...).
    """

    code: str
    category: str
    message: str
    span: Span | None = None
    hint: str | None = None

    def render(self, path: str | None = None) -> str:
        where = ""
        if self.span is not None:
            where = f"{path}:{self.span}: " if path else f"{self.span}: "
        text = f"{where}{self.code}: {self.message}"
        if self.hint:
            text += f" (expected {self.hint})"
        return text

    def to_dict(self) -> dict:
        return {
            "code": self.code,
            "category": self.category,
            "message": self.message,
            "line": self.span.line if self.span else None,
            "column": self.span.column if self.span else None,
        }


class KernelError(Exception):
    """Base of every error the kernel raises.

    Subclasses set ``category``; the class name is the diagnostic code.
    """

    category = "KernelError"

    @property
    def code(self) -> str:
        return type(self).__name__

    def diagnostic(self, span: Span | None = None) -> Diagnostic:
        return Diagnostic(self.code, self.category, str(self), span)


# naming

class NamingError(KernelError):
    category = "BadArity"


class RepeatedLetter(NamingError):
    pass


class WrongArity(NamingError):
    pass


class InvalidLetter(NamingError):
    pass


# production / linking

class UnconstructedObject(KernelError):
    category = "UnconstructedObject"


class UnknownPoint(UnconstructedObject):
    pass


class UnknownSegment(UnconstructedObject):
    pass


class UnknownObject(UnconstructedObject):
    pass


class ProductionError(KernelError):
    category = "ProductionError"


class DegenerateSegment(ProductionError):
    pass


class DegenerateFigure(ProductionError):
    pass


class DuplicateObjectName(ProductionError):
    category = "DuplicateObjectName"


class NameCollision(DuplicateObjectName):
    pass


class CenterNotOnRadius(ProductionError):
    pass


class NoCommonRadius(ProductionError):
    pass


class SameCircle(ProductionError):
    pass


class NotADecomposition(ProductionError):
    pass


class SchemaMismatch(ProductionError):
    pass


class UnsatisfiedHypothesis(ProductionError):
    category = "UnjustifiedPremise"


class UnverifiedReference(KernelError):
    category = "UnverifiedReference"


# deduction

class DeductionError(KernelError):
    category = "UnjustifiedPremise"


class UnknownFact(DeductionError):
    pass


class PatternMismatch(DeductionError):
    pass


class SortMismatch(DeductionError):
    pass


class NotARadius(DeductionError):
    pass


class OutsideExposition(DeductionError):
    pass
