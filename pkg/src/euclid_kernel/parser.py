"""Recursive-descent parser for ``.euclid`` theories.

The grammar is line oriented: every statement is one line that starts with
a keyword.  A statement that fails to parse yields a diagnostic and the
parser moves on to the next line, so one run reports every broken line.
Any diagnostic means no AST is returned.
"""

from __future__ import annotations

from .errors import Diagnostic, KernelError, Span
from .judgment import Judgment
from .lexer import Token, tokenize
from .naming import ObjectName, canonicalize
from .schema import Decl
from .syntax import (
    PARTS,
    DeclStmt,
    DiagramStmt,
    Enunciation,
    HypStmt,
    LetStmt,
    PropositionAst,
    SeekStmt,
    ShowStmt,
    StepStmt,
    TheoryAst,
)


class ParseError(Exception):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(d.render() for d in diagnostics))


class _Fail(Exception):
    def __init__(self, diagnostic: Diagnostic):
        self.diagnostic = diagnostic


def _diag(code: str, message: str, span: Span | None, hint: str | None = None,
          category: str | None = None) -> Diagnostic:
    return Diagnostic(code, category or code, message, span, hint)


class _Line:
    """Cursor over the tokens of one statement."""

    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def span(self) -> Span:
        return self.tokens[0].span

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def at(self, kind: str, value: str | None = None) -> bool:
        tok = self.peek()
        return tok is not None and tok.is_(kind, value)

    def _where(self) -> Span:
        tok = self.peek()
        if tok is not None:
            return tok.span
        last = self.tokens[-1].span
        return Span(last.line, last.column + last.length, 0)

    def fail(self, expected: str):
        tok = self.peek()
        if tok is not None and tok.kind == "error":
            raise _Fail(_diag("UnknownCharacter", f"unexpected character {tok.lexeme!r}",
                              tok.span, category="SyntaxError"))
        found = str(tok) if tok is not None else "end of line"
        raise _Fail(_diag("UnexpectedToken", f"found {found}", self._where(), expected,
                          category="SyntaxError"))

    def expect(self, kind: str, value: str | None = None, what: str | None = None) -> Token:
        if not self.at(kind, value):
            self.fail(what or (repr(value) if value else kind))
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def accept(self, kind: str, value: str | None = None) -> Token | None:
        if self.at(kind, value):
            return self.expect(kind, value)
        return None

    def end(self) -> None:
        if self.peek() is not None:
            self.fail("end of line")

    # ---- shared productions -------------------------------------------

    def name(self, kind: str, tok: Token | None = None) -> ObjectName:
        tok = tok or self.expect("object-name", what=f"{kind} name")
        try:
            return canonicalize(kind, tok.value)
        except KernelError as exc:
            raise _Fail(exc.diagnostic(tok.span)) from None

    def letters(self, n: int | None, what: str) -> str:
        tok = self.expect("object-name", what=what)
        if n is not None and len(tok.value) != n:
            raise _Fail(_diag("BadArity", f"{what} {tok.value!r} must have {n} letter(s)", tok.span))
        return tok.value

    def decl(self) -> Decl:
        if self.accept("keyword", "isosceles"):
            tok = self.expect("object-name", what="triangle name")
            self.name("triangle", tok)
            self.expect("keyword", "apex")
            apex = self.letters(1, "apex point")
            if apex not in tok.value:
                raise _Fail(_diag("BadArity", f"apex {apex} is not a vertex of {tok.value}", tok.span))
            return Decl("isosceles", tok.value, apex=apex)
        if self.accept("keyword", "extend"):
            tok = self.expect("object-name", what="segment name")
            self.name("segment", tok)
            self.expect("keyword", "beyond")
            beyond = self.letters(1, "endpoint")
            self.expect("keyword", "to")
            new = self.letters(1, "new point")
            if beyond not in tok.value or new in tok.value:
                raise _Fail(_diag("BadArity", f"cannot extend {tok.value} beyond {beyond} to {new}", tok.span))
            return Decl("extend", tok.value, beyond=beyond, new=new)
        for kind in ("point", "segment", "triangle", "polygon", "angle"):
            if self.accept("keyword", kind):
                tok = self.expect("object-name", what=f"{kind} name")
                self.name(kind, tok)
                return Decl(kind, tok.value)
        self.fail("object declaration")

    def magnitude(self) -> ObjectName:
        for kind in ("angle", "triangle", "polygon"):
            if self.accept("keyword", kind):
                return self.name(kind)
        tok = self.expect("object-name", what="magnitude")
        if len(tok.value) != 2:
            raise _Fail(_diag("BadArity", f"bare name {tok.value!r} must be a two-letter segment "
                              "(write 'angle' or 'triangle' for others)", tok.span))
        return self.name("segment", tok)

    def judgment(self) -> Judgment:
        start = self.peek()
        try:
            if self.accept("keyword", "on"):
                self.expect("punctuation", "(")
                point = self.name("point")
                self.expect("punctuation", ",")
                if self.at("identifier"):
                    carrier = self.name("circle", self.expect("identifier"))
                else:
                    carrier = self.name("segment")
                self.expect("punctuation", ")")
                return Judgment.on(point, carrier)
            left = self.magnitude()
            op = self.expect("symbol", what="'=', '==' or '>'")
            if op.value == "=":
                return Judgment.equal(left, self.magnitude())
            if op.value == ">":
                return Judgment.greater(left, self.magnitude())
            if op.value != "==":
                self.pos -= 1
                self.fail("'=', '==' or '>'")
            right = self.magnitude()
            if self.accept("symbol", "+"):
                return Judgment.decomp(left, right, self.magnitude())
            if self.accept("symbol", "-"):
                return Judgment.difference(left, right, self.magnitude())
            return Judgment.ident(left, right)
        except KernelError as exc:
            raise _Fail(exc.diagnostic(start.span if start else self._where())) from None

    def judgments(self) -> list[Judgment]:
        out = [self.judgment()]
        while self.accept("punctuation", ","):
            out.append(self.judgment())
        return out

    def seek_target(self) -> ObjectName:
        for kind in ("point", "segment", "triangle", "polygon"):
            if self.accept("keyword", kind):
                return self.name(kind)
        self.fail("'point', 'segment' or 'triangle'")


# ---- statements -------------------------------------------------------------

_PART_OF = {
    "enunciation": 0, "for": 0, "assume": 0, "seek": 0, "then": 0,
    "given": 1, "hypothesis": 1,
    "produce": 2, "show": 2, "specification": 2,
    "construction": 3, "let": 3, "diagram": 3,
    "proof": 4, "step": 4,
    "conclusion": 5, "qed-do": 5, "qed-show": 5,
}
_HEADERS = {"enunciation", "construction", "proof"}


def _let(ln: _Line) -> LetStmt:
    span = ln.span
    ln.expect("keyword", "let")
    targets = [_target(ln)]
    while ln.accept("punctuation", ","):
        targets.append(_target(ln))
    ln.expect("symbol", "=")
    ref = None
    tok = ln.peek()
    if ln.accept("keyword", "apply"):
        op = "apply"
        ref = ln.expect("number", what="proposition number").value
    elif tok is not None and tok.kind == "keyword" and tok.value in ("line", "circle", "meet", "extend", "pick"):
        op = ln.expect("keyword").value
    else:
        ln.fail("'line', 'circle', 'meet', 'extend', 'pick' or 'apply'")
    ln.expect("punctuation", "(")
    args = [_arg(ln)]
    while ln.accept("punctuation", ","):
        args.append(_arg(ln))
    ln.expect("punctuation", ")")
    ln.end()
    stmt = LetStmt(tuple(targets), op, tuple(args), ref, span)
    _check_let(stmt, span)
    return stmt


_LET_SHAPES = {
    # op: (target shape, argument shapes); P point, S segment, c circle label
    "line": ("S", "PP"),
    "circle": ("c", "PS"),
    "meet": ("P", "cc"),
    "extend": ("P", "SP"),
    "pick": ("P", "S"),
}


def _shape(s: str) -> str:
    if s[:1].islower():
        return "c"
    return {1: "P", 2: "S"}.get(len(s), "?")


def _check_let(stmt: LetStmt, span: Span) -> None:
    try:
        for t in stmt.targets:
            canonicalize({"c": "circle", "P": "point", "S": "segment"}.get(_shape(t), "point"), t)
        for a in stmt.args:
            if _shape(a) == "c":
                canonicalize("circle", a)
            elif _shape(a) == "S":
                canonicalize("segment", a)
    except KernelError as exc:
        raise _Fail(exc.diagnostic(span)) from None
    if stmt.op == "apply":
        if any(_shape(t) != "P" for t in stmt.targets):
            raise _Fail(_diag("BadArity", "apply produces points; name them with single letters", span))
        return
    target_shape, arg_shape = _LET_SHAPES[stmt.op]
    got = "".join(_shape(a) for a in stmt.args)
    if len(stmt.targets) != 1 or _shape(stmt.targets[0]) != target_shape or got != arg_shape:
        raise _Fail(_diag("BadArity", f"malformed {stmt.op} statement", span))
    if stmt.op == "line" and canonicalize("segment", stmt.targets[0]) != canonicalize(
            "segment", "".join(stmt.args)):
        raise _Fail(_diag("BadArity", f"line({', '.join(stmt.args)}) cannot be named {stmt.targets[0]}", span))


def _target(ln: _Line) -> str:
    if ln.at("identifier"):
        return ln.expect("identifier").value
    return ln.expect("object-name", what="name to bind").value


def _arg(ln: _Line) -> str:
    if ln.at("identifier"):
        return ln.expect("identifier").value
    return ln.expect("object-name", what="argument").value


def _step(ln: _Line) -> StepStmt:
    span = ln.span
    ln.expect("keyword", "step")
    label = ln.expect("identifier", what="step label").value
    ln.expect("punctuation", ":")
    conclusions = [] if ln.at("keyword", "by") else ln.judgments()
    ln.expect("keyword", "by")
    args: list[str] = []
    if ln.at("number"):
        rule = ln.expect("number").value
        ln.expect("punctuation", "(")
        args = [_arg(ln)]
        while ln.accept("punctuation", ","):
            args.append(_arg(ln))
        ln.expect("punctuation", ")")
    else:
        rule = ln.expect("identifier", what="rule name").value
        if ln.accept("punctuation", "("):
            args = [_arg(ln)]
            while ln.accept("punctuation", ","):
                args.append(_arg(ln))
            ln.expect("punctuation", ")")
    premises: list = []
    if ln.accept("punctuation", "["):
        premises.append(_premise(ln))
        while ln.accept("punctuation", ","):
            premises.append(_premise(ln))
        ln.expect("punctuation", "]")
    gloss = ln.expect("string").value if ln.at("string") else None
    ln.end()
    if not conclusions and not rule[0].isdigit():
        raise _Fail(_diag("UnexpectedToken", f"step {label} must state what {rule} concludes", span,
                          category="SyntaxError"))
    return StepStmt(label, tuple(conclusions), rule, tuple(args), tuple(premises), gloss, span)


def _premise(ln: _Line):
    if ln.at("identifier"):
        return ln.expect("identifier").value
    return ln.judgment()


class _PropBuilder:
    def __init__(self, kind: str, number: str, primitive: bool, span: Span):
        self.kind = kind
        self.number = number
        self.primitive = primitive
        self.span = span
        self.part = -1
        self.seen: set[str] = set()
        self.prose: str | None = None
        self.en_decls: list[DeclStmt] = []
        self.en_hyps: list[HypStmt] = []
        self.en_seek: SeekStmt | None = None
        self.en_goals: list[ShowStmt] = []
        self.exposition: list = []
        self.specification: list = []
        self.spec_elided = False
        self.construction: list = []
        self.proof: list[StepStmt] = []
        self.conclusion: str | None = None
        self.closing: str | None = None
        self.closing_span: Span | None = None

    @property
    def closed(self) -> bool:
        return self.closing is not None

    def line(self, ln: _Line, diags: list[Diagnostic]) -> None:
        head = ln.peek()
        word = head.value if head.kind == "keyword" else None
        if word == "extend":
            part = 0 if self.part <= 0 else 1
        elif word in _PART_OF:
            part = _PART_OF[word]
        else:
            ln.fail("statement keyword")
        if self.primitive and part > 0:
            raise _Fail(_diag("PrimitiveWithBody", f"primitive {self.number} has only an enunciation",
                              ln.span, category="SyntaxError"))
        if part < self.part:
            raise _Fail(_diag("PartsOutOfOrder",
                              f"{PARTS[part]} of {self.number} appears after its {PARTS[self.part]}",
                              ln.span))
        if word in _HEADERS:
            if word in self.seen:
                raise _Fail(_diag("DuplicatePart", f"{self.number} has a second {word} part", ln.span,
                                  category="PartsOutOfOrder"))
            self.seen.add(word)
        elif part in (0, 3, 4) and PARTS[part] not in self.seen:
            self.seen.add(PARTS[part])
            diags.append(_diag("MissingPart", f"{self.number}: {PARTS[part]} statements without "
                               f"a '{PARTS[part]}' line", ln.span))
        self.part = part
        getattr(self, "_" + PARTS[part])(ln, word)

    def _enunciation(self, ln: _Line, word: str) -> None:
        span = ln.span
        if word == "enunciation":
            ln.expect("keyword")
            self.prose = ln.expect("string", what="quoted enunciation").value
        elif word in ("for", "extend"):
            if word == "for":
                ln.expect("keyword")
            self.en_decls.append(DeclStmt(ln.decl(), span))
        elif word == "assume":
            ln.expect("keyword")
            self.en_hyps.append(HypStmt(ln.judgment(), None, span))
        elif word == "seek":
            ln.expect("keyword")
            if self.kind != "problem" or self.en_seek is not None:
                raise _Fail(_diag("BadArity", "only a problem seeks, and only one object", span,
                                  category="SyntaxError"))
            target = ln.seek_target()
            goals = ln.judgments() if ln.accept("keyword", "with") else []
            self.en_seek = SeekStmt(target, tuple(goals), span)
        elif word == "then":
            ln.expect("keyword")
            if self.kind != "theorem":
                raise _Fail(_diag("BadArity", "a problem states what it seeks, not 'then'", span,
                                  category="SyntaxError"))
            self.en_goals.append(ShowStmt(ln.judgment(), span))
        ln.end()

    def _exposition(self, ln: _Line, word: str) -> None:
        span = ln.span
        ln.expect("keyword")
        if word in ("given", "extend"):
            if word == "extend":
                ln.pos -= 1
            self.exposition.append(DeclStmt(ln.decl(), span))
        else:
            label = None
            if ln.at("identifier"):
                label = ln.expect("identifier").value
                ln.expect("punctuation", ":")
            self.exposition.append(HypStmt(ln.judgment(), label, span))
        ln.end()

    def _specification(self, ln: _Line, word: str) -> None:
        span = ln.span
        ln.expect("keyword")
        if word == "specification":
            ln.expect("keyword", "elided")
            self.spec_elided = True
        elif word == "produce":
            if self.kind != "problem":
                raise _Fail(_diag("BadArity", "a theorem shows, it does not produce", span,
                                  category="SyntaxError"))
            target = ln.seek_target()
            goals = ln.judgments() if ln.accept("keyword", "with") else []
            self.specification.append(SeekStmt(target, tuple(goals), span))
        else:
            if self.kind != "theorem":
                raise _Fail(_diag("BadArity", "a problem produces, it does not show", span,
                                  category="SyntaxError"))
            self.specification.append(ShowStmt(ln.judgment(), span))
        ln.end()
        if self.spec_elided and self.specification:
            raise _Fail(_diag("DuplicatePart", "specification is both stated and elided", span,
                              category="PartsOutOfOrder"))

    def _construction(self, ln: _Line, word: str) -> None:
        span = ln.span
        if word == "construction":
            ln.expect("keyword")
            ln.end()
        elif word == "let":
            self.construction.append(_let(ln))
        else:
            ln.expect("keyword")
            judgment = ln.judgment()
            ln.end()
            self.construction.append(DiagramStmt(judgment, span))

    def _proof(self, ln: _Line, word: str) -> None:
        if word == "proof":
            ln.expect("keyword")
            ln.end()
        else:
            self.proof.append(_step(ln))

    def _conclusion(self, ln: _Line, word: str) -> None:
        if word == "conclusion":
            if self.conclusion is not None:
                raise _Fail(_diag("DuplicatePart", "second conclusion", ln.span, category="PartsOutOfOrder"))
            ln.expect("keyword")
            self.conclusion = ln.expect("string", what="quoted conclusion").value
        else:
            self.closing = ln.expect("keyword").value
            self.closing_span = ln.span
        ln.end()

    def finish(self, diags: list[Diagnostic]) -> PropositionAst | None:
        missing = []
        if self.prose is None:
            missing.append("enunciation")
        if self.primitive:
            if self.kind != "theorem":
                diags.append(_diag("BadArity", f"primitive {self.number} must be a theorem", self.span,
                                   category="SyntaxError"))
        else:
            if not any(isinstance(s, DeclStmt) for s in self.exposition):
                missing.append("exposition")
            if not self.specification and not self.spec_elided:
                missing.append("specification")
            for part in ("construction", "proof"):
                if part not in self.seen:
                    missing.append(part)
            if self.closing is None:
                missing.append("conclusion")
        for part in missing:
            diags.append(_diag("MissingPart", f"{self.kind} {self.number} has no {part}", self.span,
                               hint=_PART_HINT[part]))
        if self.kind == "problem" and self.en_seek is None and self.prose is not None:
            diags.append(_diag("MissingPart", f"problem {self.number}: enunciation seeks nothing",
                               self.span, hint="'seek'"))
        if self.kind == "theorem" and not self.en_goals and self.prose is not None:
            diags.append(_diag("MissingPart", f"theorem {self.number}: enunciation concludes nothing",
                               self.span, hint="'then'"))
        _check_names(self, diags)
        en = Enunciation(self.prose or "", tuple(self.en_decls), tuple(self.en_hyps), self.en_seek,
                         tuple(self.en_goals), self.span)
        return PropositionAst(
            self.number, self.kind, en, self.primitive, tuple(self.exposition),
            tuple(self.specification), self.spec_elided, tuple(self.construction),
            tuple(self.proof), self.conclusion, self.closing, self.span)


_PART_HINT = {
    "enunciation": "'enunciation \"...\"'",
    "exposition": "'given ...'",
    "specification": "'show', 'produce' or 'specification elided'",
    "construction": "'construction'",
    "proof": "'proof'",
    "conclusion": "'qed-do' or 'qed-show'",
}


def _check_names(b: _PropBuilder, diags: list[Diagnostic]) -> None:
    """Exposition objects and constructed points/circles must be fresh names."""
    declared: set[ObjectName] = set()
    points: set[str] = set()
    for s in b.exposition:
        if not isinstance(s, DeclStmt):
            continue
        if s.decl.kind == "extend":
            if s.decl.new in points:
                diags.append(_diag("DuplicateObjectName", f"point {s.decl.new} is already named", s.span))
            points.add(s.decl.new)
            continue
        obj = s.decl.object_name()
        if obj in declared:
            diags.append(_diag("DuplicateObjectName", f"{obj} is declared twice", s.span))
        declared.add(obj)
        points.update(s.decl.letters)
    circles: set[str] = set()
    for s in b.construction:
        if not isinstance(s, LetStmt) or s.op == "line":
            continue
        for t in s.targets:
            pool = circles if t[:1].islower() else points
            if t in pool:
                diags.append(_diag("DuplicateObjectName", f"{t} is already named", s.span))
            pool.add(t)


def _lines(tokens: list[Token]) -> list[list[Token]]:
    lines, cur = [], []
    for tok in tokens:
        if tok.kind == "newline":
            lines.append(cur)
            cur = []
        else:
            cur.append(tok)
    if cur:
        lines.append(cur)
    return [ln for ln in lines if ln]


def parse_theory(tokens: list[Token]) -> TheoryAst:
    """Build a validated theory AST or raise :class:`ParseError`."""
    diags: list[Diagnostic] = []
    name = ""
    props: list[PropositionAst] = []
    builder: _PropBuilder | None = None

    def close():
        nonlocal builder
        if builder is not None:
            props.append(builder.finish(diags))
            builder = None

    for i, toks in enumerate(_lines(tokens)):
        ln = _Line(toks)
        try:
            if i == 0 and ln.at("keyword", "theory"):
                ln.expect("keyword")
                name = ln.expect("string", what="quoted theory name").value
                ln.end()
                continue
            if ln.at("keyword", "primitive") or ln.at("keyword", "problem") or ln.at("keyword", "theorem"):
                close()
                primitive = ln.accept("keyword", "primitive") is not None
                kind = ln.expect("keyword", "theorem").value if primitive else ln.expect("keyword").value
                number = ln.expect("number", what="proposition number").value
                ln.end()
                builder = _PropBuilder(kind, number, primitive, ln.span)
                continue
            if builder is None or builder.closed:
                ln.fail("'problem', 'theorem' or 'primitive theorem'")
            builder.line(ln, diags)
        except _Fail as f:
            diags.append(f.diagnostic)
    close()

    _check_theory(props, diags)
    if diags:
        raise ParseError(diags)
    return TheoryAst(name, tuple(props))


def _number_key(number: str) -> tuple[int, ...]:
    return tuple(int(x) for x in number.split("."))


def _check_theory(props: list[PropositionAst], diags: list[Diagnostic]) -> None:
    numbers = [p.number for p in props]
    for prev, cur in zip(props, props[1:]):
        if _number_key(cur.number) <= _number_key(prev.number):
            diags.append(_diag("NonIncreasingNumber", f"{cur.number} follows {prev.number}", cur.span,
                               category="ForwardReference"))
    for i, p in enumerate(props):
        earlier = set(numbers[:i])
        for ref, span in p.references():
            if ref in earlier:
                continue
            if ref in numbers:
                diags.append(_diag("ForwardReference", f"{p.number} uses {ref}, which comes later", span))
            else:
                diags.append(_diag("UnknownReference", f"{p.number} uses unknown proposition {ref}", span,
                                   category="ForwardReference"))


def parse_source(source: str) -> TheoryAst:
    return parse_theory(tokenize(source))
