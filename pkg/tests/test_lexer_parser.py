from __future__ import annotations

import pytest

from conftest import block, edit
from euclid_kernel.errors import Span
from euclid_kernel.lexer import tokenize
from euclid_kernel.parser import ParseError, parse_source, parse_theory
from euclid_kernel.printer import format_theory


def kinds(src):
    return [(t.kind, t.value) for t in tokenize(src)]


def test_tokenize_let():
    assert kinds("let CA = line(C, A)") == [
        ("keyword", "let"), ("object-name", "CA"), ("symbol", "="), ("keyword", "line"),
        ("punctuation", "("), ("object-name", "C"), ("punctuation", ","), ("object-name", "A"),
        ("punctuation", ")"),
    ]


def test_comment_elided():
    assert kinds("# comment\nqed-do") == [("keyword", "qed-do")]


def test_unknown_character_is_a_token():
    (tok,) = tokenize("§")
    assert tok.kind == "error" and tok.span == Span(1, 1, 1)


def test_unicode_symbols_fold():
    assert [t.value for t in tokenize("AB ≡ AC − BC")][1::2] == ["==", "-"]


def test_spans_are_substrings(source):
    lines = source.splitlines()
    prev = (0, 0)
    for tok in tokenize(source):
        here = (tok.span.line, tok.span.column)
        assert here >= prev
        prev = here
        if tok.kind != "newline":
            text = lines[tok.span.line - 1]
            assert text[tok.span.column - 1: tok.span.column - 1 + tok.span.length] == tok.lexeme


def test_corpus_has_five_entries(theory):
    assert len(theory) == 5
    assert [p.number for p in theory.propositions] == ["1.1", "1.2", "1.3", "1.4", "1.5"]
    assert theory.get("1.4").primitive
    assert theory.get("1.5").kind == "theorem"


def test_round_trip(theory):
    again = parse_source(format_theory(theory))
    assert again == theory
    assert format_theory(again) == format_theory(theory)


def codes(src):
    """Codes and categories of the parse diagnostics for ``src``."""
    with pytest.raises(ParseError) as info:
        parse_source(src)
    return [d.code for d in info.value.diagnostics] + [d.category for d in info.value.diagnostics]


def test_construction_after_proof(source):
    b = block(source, "1.1")
    cons = b[b.index("  construction"):b.index("  proof")]
    moved = b.replace(cons, "")
    moved = moved.replace("  conclusion", cons + "  conclusion")
    assert "PartsOutOfOrder" in codes(source.replace(b, moved))


def test_forward_reference(source):
    assert "ForwardReference" in codes(edit(source, "apply 1.1(AB)", "apply 1.3(AB, CD)"))


def test_unknown_reference(source):
    assert "UnknownReference" in codes(edit(source, "apply 1.1(AB)", "apply 1.9(AB)"))


def test_duplicate_name(source):
    assert "DuplicateObjectName" in codes(edit(source, "let F = pick(BD)", "let C = pick(BD)"))


def test_bad_arity(source):
    assert "BadArity" in codes(edit(source, "step s3: CA = CB", "step s3: CAB = CB"))
    assert "BadArity" in codes(edit(source, "    for segment CD\n", "    for segment CDE\n"))


def test_missing_parts(source):
    assert "MissingPart" in codes(edit(source, "  produce triangle ABC with CA = AB, CB = AB, CA = CB\n", ""))
    b = block(source, "1.5")
    assert "MissingPart" in codes(source.replace(b, b.replace("  proof\n", "")))
    assert "MissingPart" in codes(source.replace(b, b.replace("  qed-show\n", "")))


def test_non_increasing_numbers(source):
    swapped = source.replace("problem 1.2\n", "problem 1.X\n").replace("problem 1.3\n", "problem 1.2\n")
    swapped = swapped.replace("problem 1.X\n", "problem 1.3\n")
    assert "NonIncreasingNumber" in codes(swapped)


def test_diagnostics_carry_span_and_hint():
    with pytest.raises(ParseError) as info:
        parse_source("theorem 1.1\n  enunciation\n")
    d = info.value.diagnostics[0]
    assert d.span is not None and d.hint


def test_every_line_is_reported():
    src = "problem 1.1\n  enunciation \"x\"\n    for segment AB\n    seek point C with AC = @\n    bogus line\n"
    found = codes(src)
    assert "UnknownCharacter" in found and "UnexpectedToken" in found


def test_single_token_deletion_never_malformed(source):
    """Each deletion either yields diagnostics or a well-formed AST."""
    tokens = tokenize(source)
    accepted = 0
    for i in range(len(tokens)):
        mutated = tokens[:i] + tokens[i + 1:]
        try:
            ast = parse_theory(mutated)
        except ParseError as exc:
            assert exc.diagnostics and all(d.span is not None for d in exc.diagnostics)
            continue
        accepted += 1
        assert parse_source(format_theory(ast)) == ast
        for p in ast.propositions:
            assert p.enunciation.prose
            if not p.primitive:
                assert p.closing in ("qed-do", "qed-show") and (p.specification or p.specification_elided)
    # only optional trailing strings (step glosses) can vanish without a diagnostic
    assert accepted == sum(1 for t in tokens if t.kind == "string" and _is_gloss(tokens, t))


def _is_gloss(tokens, tok):
    i = tokens.index(tok)
    line = [t for t in tokens if t.span.line == tok.span.line]
    return line[0].is_("keyword", "step") and tokens[i - 1].is_("punctuation", "]")
