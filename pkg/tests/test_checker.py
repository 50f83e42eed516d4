from __future__ import annotations

import random
import string

import pytest

from conftest import block, edit
from euclid_kernel import check_proposition, check_theory, parse_source
from euclid_kernel.checker import PRIMITIVE, VERIFIED, Context
from euclid_kernel.judgment import Judgment
from euclid_kernel.naming import angle, segment
from euclid_kernel.syntax import TheoryAst
from mutations import MUTATIONS, verdict


def test_corpus_verdicts(reports):
    assert {n: r.verdict for n, r in reports.items()} == {
        "1.1": VERIFIED, "1.2": VERIFIED, "1.3": VERIFIED, "1.4": PRIMITIVE, "1.5": VERIFIED}
    assert all(not r.diagnostics for r in reports.values())


def test_problem_one_exports_goals(reports):
    r = reports["1.1"]
    assert r.exported_schema[-1] == "seek triangle ABC with AB = AC, AB = BC, AC = BC"
    assert {g["judgment"] for g in r.goals} == {"AB = AC", "AB = BC", "AC = BC"}


def test_theorem_five_conclusions(reports):
    r = reports["1.5"]
    stored = {r.env.facts[g["fact"]].judgment for g in r.goals}
    assert stored == {Judgment.equal(angle("ABC"), angle("ACB")), Judgment.equal(angle("FBC"), angle("GCB"))}
    assert r.primitive_dependencies == ["1.4"]


@pytest.mark.parametrize("m", MUTATIONS, ids=[m.id for m in MUTATIONS])
def test_mutation_rejected(source, m):
    ok, got = verdict(source, m)
    assert ok, f"{m.description}: expected {m.expected}, got {got}"


def test_cascade_marks_both_rejected(source):
    src = edit(source, "    step s1: AF = AE by def15(c1)\n", "")
    reports = {r.number: r for r in check_theory(parse_source(src)).reports}
    assert reports["1.3"].verdict == "rejected"
    assert reports["1.5"].verdict == "rejected"
    assert reports["1.4"].verdict == PRIMITIVE


def test_empty_theory():
    result = check_theory(TheoryAst("empty", ()))
    assert result.verified and result.reports == []


def test_monotonicity(source, reports):
    """Appending a verified proposition leaves earlier verdicts alone."""
    extra = block(source, "1.3").replace("problem 1.3", "problem 1.6")
    longer = check_theory(parse_source(source + "\n" + extra))
    got = {r.number: r.to_dict() for r in longer.reports}
    for number, r in reports.items():
        assert got[number] == r.to_dict()
    assert got["1.6"]["verdict"] == VERIFIED


def test_elided_parts_are_reconstructed(source):
    b = block(source, "1.1")
    elided = b.replace("  produce triangle ABC with CA = AB, CB = AB, CA = CB\n", "  specification elided\n")
    elided = elided[:elided.index("  conclusion")] + "  qed-do\n\n"
    (r, *_) = check_theory(parse_source(source.replace(b, elided))).reports
    assert r.verdict == VERIFIED
    assert r.reconstructed[0] == "produce triangle ABC with AB = AC, AB = BC, AC = BC"
    assert r.reconstructed[1].startswith('conclusion "To construct')


def test_theorem_specification_must_instantiate(source):
    src = edit(source, "  show angle CBD = angle BCE\n", "  show angle CBD = angle ACB\n")
    r = check_theory(parse_source(src)).reports[-1]
    assert any(d.code == "SpecificationMismatch" for d in r.diagnostics)


def test_primitive_is_never_absorbed(result):
    assert result.primitives == ["1.4"]


def permute_letters(rng: random.Random) -> dict[str, str]:
    letters = list(string.ascii_uppercase)
    image = letters[:]
    rng.shuffle(image)
    return dict(zip(letters, image))


def isomorphic(original, renamed, mapping) -> bool:
    if len(original.facts) != len(renamed.facts):
        return False
    for a, b in zip(original.facts, renamed.facts):
        if a.judgment.rename(mapping) != b.judgment:
            return False
        pa, pb = a.provenance, b.provenance
        if (pa.kind, pa.step, pa.rule, pa.premises, pa.support) != (pb.kind, pb.step, pb.rule, pb.premises, pb.support):
            return False
    return True


def renaming_trials(theory, reports, per_prop: int, seed: int = 0):
    """Yield (number, ok) for uniformly renamed copies of each verified proposition."""
    rng = random.Random(seed)
    context = Context()
    for ast in theory.propositions:
        if not ast.primitive:
            for _ in range(per_prop):
                mapping = permute_letters(rng)
                again = check_proposition(ast.rename(mapping), context)
                yield ast.number, again.verdict == VERIFIED and isomorphic(reports[ast.number].env, again.env, mapping)
        context.add(reports[ast.number], ast.schema())


def test_renaming_invariance(theory, reports):
    bad = [n for n, ok in renaming_trials(theory, reports, per_prop=5, seed=7) if not ok]
    assert bad == []


def test_segments_named_either_way(reports):
    env = reports["1.1"].env
    assert env.constructed(segment("CA")) and env.constructed(segment("AC"))


def test_isosceles_declaration_supplies_hypothesis(source):
    b = block(source, "1.5")
    v = (b.replace("    for triangle ABC\n    assume AB = AC\n", "    for isosceles ABC apex A\n")
          .replace("  given triangle ABC\n  hypothesis hyp: AB = AC\n", "  given isosceles ABC apex A\n")
          .replace("AF = AG, hyp]", "AF = AG, AB = AC]"))
    assert v != b
    r = check_theory(parse_source(source.replace(b, v))).reports[-1]
    assert r.verdict == VERIFIED, [d.render() for d in r.diagnostics]
    assert r.env.facts[0].provenance.kind == "hypothesis"
