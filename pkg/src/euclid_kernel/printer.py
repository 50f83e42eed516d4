"""Pretty-printer producing ``.euclid`` source from an AST."""

from __future__ import annotations

from .syntax import DeclStmt, HypStmt, LetStmt, PropositionAst, SeekStmt, TheoryAst


def _quote(s: str) -> str:
    return f'"{s}"'


def _seek(word: str, s: SeekStmt) -> str:
    kind = f"{s.target.kind} " if s.target.kind in ("point", "segment") else ""
    text = f"{word} {kind}{s.target}"
    if s.goals:
        text += " with " + ", ".join(map(str, s.goals))
    return text


def _let(s: LetStmt) -> str:
    op = f"apply {s.ref}" if s.op == "apply" else s.op
    return f"let {', '.join(s.targets)} = {op}({', '.join(s.args)})"


def _step(s) -> str:
    text = f"step {s.label}: "
    if s.conclusions:
        text += ", ".join(map(str, s.conclusions)) + " "
    text += f"by {s.rule}"
    if s.rule_args:
        text += f"({', '.join(s.rule_args)})"
    if s.premises:
        text += "[" + ", ".join(map(str, s.premises)) + "]"
    if s.gloss is not None:
        text += " " + _quote(s.gloss)
    return text


def format_proposition(p: PropositionAst) -> list[str]:
    head = f"primitive theorem {p.number}" if p.primitive else f"{p.kind} {p.number}"
    out = [head, f"  enunciation {_quote(p.enunciation.prose)}"]
    e = p.enunciation
    out += [f"    for {d.decl}" for d in e.decls]
    out += [f"    assume {h.judgment}" for h in e.hypotheses]
    if e.seek is not None:
        out.append("    " + _seek("seek", e.seek))
    out += [f"    then {g.judgment}" for g in e.goals]
    if p.primitive:
        return out
    for s in p.exposition:
        if isinstance(s, DeclStmt):
            word = "" if s.decl.kind == "extend" else "given "
            out.append(f"  {word}{s.decl}")
        elif isinstance(s, HypStmt):
            label = f"{s.label}: " if s.label else ""
            out.append(f"  hypothesis {label}{s.judgment}")
    if p.specification_elided:
        out.append("  specification elided")
    for s in p.specification:
        out.append("  " + (_seek("produce", s) if isinstance(s, SeekStmt) else f"show {s.judgment}"))
    out.append("  construction")
    for s in p.construction:
        out.append("    " + (_let(s) if isinstance(s, LetStmt) else f"diagram {s.judgment}"))
    out.append("  proof")
    out += ["    " + _step(s) for s in p.proof]
    if p.conclusion is not None:
        out.append(f"  conclusion {_quote(p.conclusion)}")
    out.append(f"  {p.closing}")
    return out


def format_theory(theory: TheoryAst) -> str:
    blocks = []
    if theory.name:
        blocks.append(f"theory {_quote(theory.name)}")
    blocks += ["\n".join(format_proposition(p)) for p in theory.propositions]
    return "\n\n".join(blocks) + "\n"

