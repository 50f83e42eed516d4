"""Six-part structure checking of propositions and theories.

A check replays one proposition against a fresh :class:`Environment`:
exposition, specification, construction, proof, goal check, generalization
and the closing marker.  Every part is checked as far as its dependencies
allow, so a broken step yields a diagnostic and checking continues.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .deduction import (
    COMMON_NOTIONS,
    apply_cn,
    apply_theorem,
    assert_hypothesis,
    judgment_matches,
    provenance,
    radii_equal,
    resolve,
)
from .errors import Diagnostic, KernelError, PatternMismatch, SchemaMismatch, Span, UnverifiedReference
from .judgment import Judgment
from .production import Environment, production_trace
from .schema import Schema, align, instantiate
from .syntax import DeclStmt, DiagramStmt, HypStmt, LetStmt, PropositionAst, SeekStmt, ShowStmt, StepStmt, TheoryAst

VERIFIED = "verified"
REJECTED = "rejected"
PRIMITIVE = "primitive"

_POSTULATE_OPS = {"line": "post1", "extend": "post2", "circle": "post3", "meet": "meet",
                  "pick": "pick", "diagram": "diagram"}

_LEAF_KINDS = ("hypothesis", "construction", "definition", "diagram")


@dataclass
class Context:
    """Schemas of earlier propositions, threaded through a theory check."""

    schemas: dict[str, Schema] = field(default_factory=dict)
    rejected: set[str] = field(default_factory=set)
    primitives: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def add(self, report: VerificationReport, schema: Schema) -> None:
        if report.verdict == REJECTED:
            self.rejected.add(report.number)
            return
        self.schemas[report.number] = schema
        deps = set(report.primitive_dependencies)
        if report.verdict == PRIMITIVE:
            deps.add(report.number)
        self.primitives[report.number] = tuple(sorted(deps))


@dataclass
class VerificationReport:
    number: str
    kind: str
    verdict: str
    diagnostics: list[Diagnostic] = field(default_factory=list)
    exported_schema: list[str] = field(default_factory=list)
    fact_count: int = 0
    diagrammatic_posits: list[str] = field(default_factory=list)
    primitive_dependencies: list[str] = field(default_factory=list)
    production_trace: list[dict] = field(default_factory=list)
    deduction_trace: list[dict] = field(default_factory=list)
    reconstructed: list[str] = field(default_factory=list)
    goals: list[dict] = field(default_factory=list)
    # not serialized: the environment, for audits and --trace
    env: Environment | None = field(default=None, repr=False, compare=False)

    @property
    def ok(self) -> bool:
        return self.verdict != REJECTED

    def to_dict(self) -> dict:
        return {
            "number": self.number,
            "kind": self.kind,
            "verdict": self.verdict,
            "diagnostics": [d.to_dict() for d in self.diagnostics],
            "exported_schema": self.exported_schema,
            "fact_count": self.fact_count,
            "diagrammatic_posits": self.diagrammatic_posits,
            "primitive_dependencies": self.primitive_dependencies,
            "production_trace": self.production_trace,
            "deduction_trace": self.deduction_trace,
            "reconstructed": self.reconstructed,
            "goals": self.goals,
        }


def _seek_text(obj) -> str:
    return f"{obj.kind} {obj}" if obj.kind in ("point", "segment") else str(obj)


def _diag(code: str, category: str, message: str, span: Span | None) -> Diagnostic:
    return Diagnostic(code, category, message, span)


class _Run:
    def __init__(self, ast: PropositionAst, context: Context):
        self.ast = ast
        self.context = context
        self.schema = ast.schema()
        self.env = Environment()
        self.diags: list[Diagnostic] = []
        self.mapping: dict[str, str] | None = None
        self.goals: list[Judgment] = []
        self.seek = None
        self.labels: dict[str, list[int]] = {}
        self.failed: set[str] = set()
        self.step_ops: dict[int, str] = {}
        self.deps: set[str] = set()
        self.deduction: list[dict] = []
        self.reconstructed: list[str] = []
        self.goal_rows: list[dict] = []
        self.deferred = False

    def error(self, exc: KernelError, span: Span | None) -> None:
        self.diags.append(exc.diagnostic(span))

    # ---- (1) exposition ---------------------------------------------------

    def exposition(self) -> None:
        decls = [s for s in self.ast.exposition if isinstance(s, DeclStmt)]
        first = decls[0].span if decls else self.ast.span
        try:
            self.mapping = align(self.schema.decls, [s.decl for s in decls])
        except SchemaMismatch as exc:
            self.diags.append(_diag("SchemaMismatch", "IllegitimateGeneralization", str(exc), first))
        for s in self.ast.exposition:
            try:
                if isinstance(s, DeclStmt):
                    self.env.register_given(s.decl)
                    for h in s.decl.implied_hypotheses():
                        if h.kind != "on":
                            assert_hypothesis(self.env, h)
                else:
                    fid = assert_hypothesis(self.env, s.judgment)
                    if s.label:
                        self.labels[s.label] = [fid]
            except KernelError as exc:
                self.error(exc, s.span)

    # ---- (2) specification --------------------------------------------------

    def specification(self) -> None:
        if self.mapping is None:
            return
        stated = self.ast.specification
        span = stated[0].span if stated else self.ast.span
        if self.ast.kind == "problem":
            target = next((s for s in stated if isinstance(s, SeekStmt)), None)
            if target is None:
                # produced letters are read off the construction once it has run
                self.deferred = True
                return
            mapping = self._fresh_mapping(target)
            if mapping is None:
                self.diags.append(_diag(
                    "SpecificationMismatch", "IllegitimateGeneralization",
                    f"'produce {target.target}' does not instantiate 'seek {self.schema.seek}'", span))
                return
            self.mapping = mapping
        if not self._instantiate_goals(span):
            return
        if self.ast.specification_elided:
            self.reconstructed += [f"show {g}" for g in self.goals]
            return
        if self.ast.kind == "theorem":
            shown = sorted(s.judgment for s in stated if isinstance(s, ShowStmt))
            if shown != sorted(self.goals):
                self.diags.append(_diag(
                    "SpecificationMismatch", "IllegitimateGeneralization",
                    "specification does not instantiate the enunciation: expected "
                    + ", ".join(map(str, self.goals)), span))

    def _instantiate_goals(self, span: Span | None) -> bool:
        try:
            self.goals = [instantiate(g, self.mapping) for g in self.schema.goals]
            self.seek = instantiate(self.schema.seek, self.mapping) if self.schema.seek else None
        except KernelError as exc:
            self.error(exc, span)
            return False
        return True

    def _bind_elided(self) -> None:
        """Elided problem specification: bind produced letters to constructed points."""
        fresh = self.schema.fresh_letters()
        taken = set(self.mapping.values())
        made = sorted({t for s in self.ast.construction if isinstance(s, LetStmt) and s.op != "line"
                       for t in s.targets if t.isupper() and len(t) == 1} - taken)
        for image in permutations(made, len(fresh)):
            m = {**self.mapping, **dict(zip(fresh, image))}
            try:
                seek = instantiate(self.schema.seek, m)
                goals = [instantiate(g, m) for g in self.schema.goals]
            except KernelError:
                continue
            if all(self.env.constructed(o) for o in [seek] + [a for g in goals for a in g.args]):
                self.mapping = m
                break
        else:
            self.mapping = {**self.mapping, **{c: c for c in fresh}}
        if self._instantiate_goals(self.ast.span):
            line = f"produce {_seek_text(self.seek)}"
            if self.goals:
                line += " with " + ", ".join(map(str, self.goals))
            self.reconstructed.append(line)

    def _fresh_mapping(self, target: SeekStmt) -> dict[str, str] | None:
        """Extend the exposition letter map over the letters a problem produces."""
        fresh = self.schema.fresh_letters()
        taken = set(self.mapping.values())
        stated_letters = set(target.target.letters)
        for g in target.goals:
            for a in g.args:
                stated_letters |= set(a.letters) if a.kind != "circle" else set()
        pool = sorted(stated_letters - taken)
        want_goals = sorted(target.goals)
        for image in permutations(pool, len(fresh)):
            m = {**self.mapping, **dict(zip(fresh, image))}
            try:
                if (instantiate(self.schema.seek, m) == target.target
                        and sorted(instantiate(g, m) for g in self.schema.goals) == want_goals):
                    return m
            except KernelError:
                continue
        return None

    # ---- (3) construction -----------------------------------------------------

    def construction(self) -> None:
        env = self.env
        env.phase = "construction"
        for s in self.ast.construction:
            before = len(env.steps)
            try:
                if isinstance(s, DiagramStmt):
                    env.record_diagram(s.judgment)
                    op = "diagram"
                else:
                    op = self._let(s)
            except KernelError as exc:
                self.error(exc, s.span)
                continue
            for step in env.steps[before:]:
                self.step_ops[step.id] = op

    def _let(self, s: LetStmt) -> str:
        env, a, t = self.env, s.args, s.targets
        if s.op == "line":
            env.apply_line(a[0], a[1])
        elif s.op == "circle":
            env.apply_circle(t[0], a[0], a[1])
        elif s.op == "meet":
            env.apply_meet(a[0], a[1], t[0])
        elif s.op == "extend":
            env.apply_extend(a[0], a[1], t[0])
        elif s.op == "pick":
            env.pick_on(a[0], t[0])
        else:
            schema = self._reference(s.ref, "problem")
            env.apply_derived(schema, list(a), list(t))
            self.deps.update(self.context.primitives.get(s.ref, ()))
            return f"apply_derived({s.ref})"
        return _POSTULATE_OPS[s.op]

    def _reference(self, number: str, kind: str) -> Schema:
        if number in self.context.rejected:
            raise UnverifiedReference(f"{number} was rejected, so it cannot be used")
        schema = self.context.schemas.get(number)
        if schema is None:
            raise UnverifiedReference(f"{number} has not been verified before {self.ast.number}")
        if schema.kind != kind:
            use = "apply it in the construction" if schema.kind == "problem" else "cite it in a proof step"
            raise SchemaMismatch(f"{number} is a {schema.kind}; {use}")
        return schema

    # ---- (4) proof ------------------------------------------------------------

    def proof(self) -> None:
        self.env.phase = "proof"
        for s in self.ast.proof:
            fids = self._premises(s)
            if fids is None:
                self.failed.add(s.label)
                continue
            try:
                out, op = self._apply(s, fids)
            except KernelError as exc:
                self.error(exc, s.span)
                self.failed.add(s.label)
                continue
            self.labels[s.label] = out
            self.deduction.append({
                "label": s.label,
                "op": op,
                "premises": fids,
                "facts": out,
                "conclusions": [str(self.env.facts[f].judgment) for f in out],
                "gloss": s.gloss,
            })

    def _premises(self, s: StepStmt) -> list[int] | None:
        fids: list[int] = []
        ok = True
        for p in s.premises:
            if isinstance(p, str):
                if p in self.labels:
                    fids += self.labels[p]
                    continue
                why = f"cites step {p}, which failed" if p in self.failed else f"cites unknown label {p}"
                self.diags.append(_diag("UnjustifiedPremise", "UnjustifiedPremise",
                                        f"step {s.label} {why}", s.span))
                ok = False
                continue
            try:
                fid = resolve(self.env, p)
            except KernelError as exc:
                self.error(exc, s.span)
                ok = False
                continue
            if fid is None:
                self.diags.append(_diag("UnjustifiedPremise", "UnjustifiedPremise",
                                        f"step {s.label}: premise '{p}' is not an established fact", s.span))
                ok = False
            else:
                fids.append(fid)
        return fids if ok else None

    def _apply(self, s: StepStmt, fids: list[int]) -> tuple[list[int], str]:
        if s.cites_theorem:
            schema = self._reference(s.rule, "theorem")
            out = apply_theorem(self.env, schema, list(s.rule_args), fids, list(s.conclusions))
            self.deps.update(self.context.primitives.get(s.rule, ()))
            return out, f"apply_theorem({s.rule})"
        if s.rule == "def15":
            if len(s.rule_args) != 1:
                raise SchemaMismatch("def15 takes the circle label")
            out = []
            for j in s.conclusions:
                if j.kind != "eq":
                    raise SchemaMismatch(f"def15 concludes equalities of radii, not '{j}'")
                out.append(radii_equal(self.env, s.rule_args[0], *j.args))
            return out, "def15"
        if s.rule in COMMON_NOTIONS:
            if len(s.conclusions) != 1 or s.rule_args:
                raise SchemaMismatch(f"{s.rule} draws one conclusion and takes no arguments")
            return [apply_cn(self.env, s.rule, fids, s.conclusions[0])], s.rule
        raise PatternMismatch(f"unknown rule {s.rule}")

    # ---- (5) goals, (6) generalization, closing ------------------------------------

    def goal_check(self) -> None:
        span = self.ast.specification[0].span if self.ast.specification else self.ast.span
        if self.mapping is None:
            return
        if self.seek is not None and not self.env.constructed(self.seek):
            self.diags.append(_diag("GoalUnreached", "GoalUnreached",
                                    f"{self.seek} was never produced", span))
        for g in self.goals:
            try:
                fid = resolve(self.env, g)
            except KernelError:
                fid = None
            if fid is None:
                self.diags.append(_diag("GoalUnreached", "GoalUnreached", f"'{g}' was not established", span))
            else:
                self.goal_rows.append({"judgment": str(g), "fact": fid,
                                       "stated_as": str(self.env.facts[fid].judgment)})

    def generalization(self) -> None:
        if self.mapping is None:
            return
        allowed = [instantiate(h, self.mapping) for h in self.schema.all_hypotheses()]
        for s in self.ast.exposition:
            if isinstance(s, HypStmt) and not any(judgment_matches(self.env, h, s.judgment) for h in allowed):
                self.diags.append(_diag(
                    "IllegitimateGeneralization", "IllegitimateGeneralization",
                    f"hypothesis '{s.judgment}' is not an instance of the enunciation's assumptions", s.span))
        for row in self.goal_rows:
            for leaf in provenance(self.env, row["fact"]).leaves():
                prov = leaf.provenance
                if prov.kind not in _LEAF_KINDS and not (prov.kind == "deduction" and prov.rule[0].isdigit()):
                    self.diags.append(_diag("IllegitimateGeneralization", "IllegitimateGeneralization",
                                            f"goal rests on unjustified fact #{leaf.id}", self.ast.span))

    def closing(self) -> None:
        want = "qed-do" if self.ast.kind == "problem" else "qed-show"
        if self.ast.closing != want:
            self.diags.append(_diag(
                "ClosingMismatch", "ClosingMismatch",
                f"a {self.ast.kind} closes with {want}, not {self.ast.closing}", self.ast.span))
        if self.ast.conclusion is None:
            self.reconstructed.append(f'conclusion "{self.schema.prose}"')

    def run(self) -> VerificationReport:
        self.exposition()
        self.specification()
        self.construction()
        if self.deferred:
            self._bind_elided()
        self.proof()
        self.goal_check()
        self.generalization()
        self.closing()
        verdict = VERIFIED if not self.diags else REJECTED
        trace = production_trace(self.env)
        preds: dict[int, list[int]] = {}
        for src, dst in trace.edges:
            preds.setdefault(dst, []).append(src)
        return VerificationReport(
            number=self.ast.number,
            kind=self.ast.kind,
            verdict=verdict,
            diagnostics=self.diags,
            exported_schema=self.schema.lines() if verdict == VERIFIED else [],
            fact_count=len(self.env.facts),
            diagrammatic_posits=[str(f.judgment) for f in self.env.facts if f.provenance.kind == "diagram"],
            primitive_dependencies=sorted(self.deps),
            production_trace=[{"step": s.id, "op": self.step_ops.get(s.id, s.kind), "detail": s.detail,
                               "after": preds.get(s.id, [])} for s in trace.nodes],
            deduction_trace=self.deduction,
            reconstructed=self.reconstructed,
            goals=self.goal_rows,
            env=self.env,
        )


def check_proposition(ast: PropositionAst, context: Context | None = None) -> VerificationReport:
    context = context if context is not None else Context()
    if ast.primitive:
        return VerificationReport(ast.number, ast.kind, PRIMITIVE, exported_schema=ast.schema().lines())
    return _Run(ast, context).run()


@dataclass
class TheoryResult:
    name: str
    reports: list[VerificationReport]

    @property
    def verified(self) -> bool:
        return all(r.ok for r in self.reports)

    @property
    def primitives(self) -> list[str]:
        return [r.number for r in self.reports if r.verdict == PRIMITIVE]

    def count(self, verdict: str) -> int:
        return sum(1 for r in self.reports if r.verdict == verdict)


def check_theory(theory: TheoryAst, fail_fast: bool = False) -> TheoryResult:
    context = Context()
    reports = []
    for ast in theory.propositions:
        report = check_proposition(ast, context)
        context.add(report, ast.schema())
        reports.append(report)
        if fail_fast and not report.ok:
            break
    return TheoryResult(theory.name, reports)

