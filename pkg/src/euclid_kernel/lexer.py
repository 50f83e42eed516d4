"""Tokenizer for ``.euclid`` theory files.

Total over its input: characters it cannot place become ``error`` tokens and
are left for the parser to report.  Newline tokens separate statements; runs
of blank and comment lines collapse into one separator, and none is emitted
before the first or after the last statement.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import Span

KEYWORDS = frozenset("""
    theory primitive problem theorem enunciation for assume seek then with
    given hypothesis isosceles apex extend beyond to produce show specification
    elided construction let line circle meet pick apply diagram proof step by
    conclusion qed-do qed-show point segment triangle polygon angle on
""".split())

# judgment symbols, with the unicode spellings folded to ASCII
SYMBOLS = {"==": "==", "≡": "==", "=": "=", "+": "+", "-": "-", "−": "-", ">": ">"}
PUNCTUATION = set("(),:[]")

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<string>"[^"\n]*")
  | (?P<number>\d+(?:\.\d+)*)
  | (?P<word>qed-(?:do|show)\b|[a-z][a-z0-9_]*)
  | (?P<name>[A-Z]+)
  | (?P<symbol>==|≡|=|\+|-|−|>)
  | (?P<punct>[(),:\[\]])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # keyword identifier object-name number symbol punctuation string newline error
    lexeme: str
    span: Span

    @property
    def value(self) -> str:
        if self.kind == "symbol":
            return SYMBOLS[self.lexeme]
        if self.kind == "string":
            return self.lexeme[1:-1]
        return self.lexeme

    def is_(self, kind: str, value: str | None = None) -> bool:
        return self.kind == kind and (value is None or self.value == value)

    def __str__(self) -> str:
        return "end of line" if self.kind == "newline" else repr(self.lexeme)


def tokenize(source: str) -> list[Token]:
    raw: list[Token] = []
    line, col, pos = 1, 1, 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            kind, text = "error", source[pos]
        else:
            kind, text = m.lastgroup, m.group()
        span = Span(line, col, len(text))
        if kind == "word":
            raw.append(Token("keyword" if text in KEYWORDS else "identifier", text, span))
        elif kind == "name":
            raw.append(Token("object-name", text, span))
        elif kind == "punct":
            raw.append(Token("punctuation", text, span))
        elif kind in ("string", "number", "symbol", "error", "newline"):
            raw.append(Token(kind, text, span))
        pos += len(text)
        if text == "\n":
            line, col = line + 1, 1
        else:
            col += len(text)

    out: list[Token] = []
    for tok in raw:
        if tok.kind == "newline" and (not out or out[-1].kind == "newline"):
            continue
        out.append(tok)
    while out and out[-1].kind == "newline":
        out.pop()
    return out
