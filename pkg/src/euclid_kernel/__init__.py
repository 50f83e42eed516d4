"""Verification kernel for Euclid-style six-part propositions."""

from .checker import Context, TheoryResult, VerificationReport, check_proposition, check_theory
from .lexer import tokenize
from .parser import ParseError, parse_source, parse_theory
from .printer import format_theory

__all__ = [
    "Context",
    "ParseError",
    "TheoryResult",
    "VerificationReport",
    "check_proposition",
    "check_theory",
    "format_theory",
    "parse_source",
    "parse_theory",
    "tokenize",
]
