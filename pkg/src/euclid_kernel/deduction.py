"""Protological deduction: the Common Notions read as inference rules.

Rules never create objects.  A rule application names its premises by fact
id; the conclusion is recorded only when a metavariable assignment makes
every premise pattern and the conclusion pattern match.

The rule schemas::

    cn1  x = z, y = z                                  |- x = y
    cn2  w1 == x1 + y1, w2 == x2 + y2, x1 = x2, y1 = y2 |- w1 = w2
    cn3  w1 == x1 + y1, w2 == x2 + y2, w1 = w2, x1 = x2 |- y1 = y2
    cn4  x == y                                        |- x = y
    cn5  w == x + y                                    |- w > x

Sums are commutative in matching, and Euclid-equality is symmetric.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Iterator

from .errors import (
    NotARadius,
    OutsideExposition,
    PatternMismatch,
    SortMismatch,
    UnknownFact,
    UnknownObject,
)
from .judgment import Judgment
from .naming import ObjectName, canonicalize
from .production import Environment, Fact, Provenance
from .schema import Schema, bind_args, instantiate


@dataclass(frozen=True)
class Pattern:
    kind: str
    vars: tuple[str, ...]

    def __str__(self) -> str:
        v = self.vars
        if self.kind == "decomp":
            return f"{v[0]} == {v[1]} + {v[2]}"
        sym = {"eq": "=", "ident": "==", "gt": ">"}[self.kind]
        return f"{v[0]} {sym} {v[1]}"


@dataclass(frozen=True)
class RuleSchema:
    id: str
    premises: tuple[Pattern, ...]
    conclusion: Pattern
    text: str = ""

    def metavariables(self) -> set[str]:
        return {v for p in self.premises for v in p.vars}


def _p(kind: str, *vars: str) -> Pattern:
    return Pattern(kind, vars)


COMMON_NOTIONS: dict[str, RuleSchema] = {
    "cn1": RuleSchema("cn1", (_p("eq", "x", "z"), _p("eq", "y", "z")), _p("eq", "x", "y"),
                      "things equal to the same thing are equal to one another"),
    "cn2": RuleSchema("cn2", (_p("decomp", "w1", "x1", "y1"), _p("decomp", "w2", "x2", "y2"),
                              _p("eq", "x1", "x2"), _p("eq", "y1", "y2")), _p("eq", "w1", "w2"),
                      "equals added to equals give equal wholes"),
    "cn3": RuleSchema("cn3", (_p("decomp", "w1", "x1", "y1"), _p("decomp", "w2", "x2", "y2"),
                              _p("eq", "w1", "w2"), _p("eq", "x1", "x2")), _p("eq", "y1", "y2"),
                      "equals subtracted from equals leave equal remainders"),
    "cn4": RuleSchema("cn4", (_p("ident", "x", "y"),), _p("eq", "x", "y"),
                      "one object under two names is equal to itself"),
    "cn5": RuleSchema("cn5", (_p("decomp", "w", "x", "y"),), _p("gt", "w", "x"),
                      "the whole is greater than the part"),
}


# ---- identification of names --------------------------------------------

def _same_ray(env: Environment, v: str, p: str, q: str) -> bool:
    if p == q:
        return True
    for chain in env.chains:
        if v in chain and p in chain and q in chain:
            i, j, k = chain.index(v), chain.index(p), chain.index(q)
            if (j - i) * (k - i) > 0:
                return True
    return False


def same_angle(env: Environment, a1: ObjectName | str, a2: ObjectName | str) -> str | None:
    """Justification that two angle names denote the same angle, or None.

    Same vertex, and each arm point of one lies on a ray from the vertex
    through the matching arm point of the other.
    """
    if isinstance(a1, str):
        a1 = canonicalize("angle", a1)
    if isinstance(a2, str):
        a2 = canonicalize("angle", a2)
    if a1 == a2:
        return "same name"
    x1, v, y1 = a1.letters
    x2, v2, y2 = a2.letters
    if v != v2:
        return None
    for p, q in (((x1, x2), (y1, y2)), ((x1, y2), (y1, x2))):
        if _same_ray(env, v, *p) and _same_ray(env, v, *q):
            return f"{a1} and {a2} share vertex {v} and rays {v}{p[0]}/{v}{p[1]}, {v}{q[0]}/{v}{q[1]}"
    return None


def same_mag(env: Environment, x: ObjectName, y: ObjectName) -> bool:
    if x == y:
        return True
    return x.kind == y.kind == "angle" and same_angle(env, x, y) is not None


def _arg_orders(j: Judgment) -> list[tuple[ObjectName, ...]]:
    a = j.args
    if j.kind in ("eq", "ident"):
        return [a, (a[1], a[0])]
    if j.kind == "decomp":
        return [a, (a[0], a[2], a[1])]
    return [a]


def judgment_matches(env: Environment, want: Judgment, have: Judgment) -> bool:
    if want.kind != have.kind:
        return False
    return any(all(same_mag(env, x, y) for x, y in zip(want.args, order))
               for order in _arg_orders(have))


def holds(env: Environment, judgment: Judgment) -> int | None:
    """Id of a stored fact stating ``judgment`` up to naming; no search."""
    hit = env.lookup(judgment)
    if hit is not None:
        return hit
    for fact in env.facts:
        if judgment_matches(env, judgment, fact.judgment):
            return fact.id
    return None


def identity_fact(env: Environment, judgment: Judgment) -> int | None:
    """Record ``X == Y`` when both names denote one object."""
    if judgment.kind != "ident":
        return None
    x, y = judgment.args
    if not same_mag(env, x, y):
        return None
    for obj in judgment.args:
        env.require(obj)
    rule = "common" if x == y else "same-angle"
    return env.add_fact(judgment, Provenance("definition", rule=rule))


def resolve(env: Environment, judgment: Judgment) -> int | None:
    """Find a fact for a cited premise: stored, chain-derived, or identity."""
    fid = holds(env, judgment)
    if fid is not None:
        return fid
    fid = env.chain_fact(judgment)
    if fid is not None:
        return fid
    return identity_fact(env, judgment)


# ---- fact sources -----------------------------------------------------------

def assert_hypothesis(env: Environment, judgment: Judgment) -> int:
    if env.phase != "exposition":
        raise OutsideExposition(f"hypothesis '{judgment}' outside the exposition")
    for obj in judgment.args:
        env.require(obj)
    return env.add_fact(judgment, Provenance("hypothesis"))


def radii_equal(env: Environment, circle: str, s1: ObjectName, s2: ObjectName) -> int:
    """Two radii of one circle are equal (definition of a circle)."""
    if circle not in env.circles:
        raise UnknownObject(f"circle {circle} has not been drawn")
    c = env.circles[circle]
    cname = canonicalize("circle", circle)
    support = []
    for s in (s1, s2):
        if s.kind != "segment" or c.center not in s.letters:
            raise NotARadius(f"{s} does not start at the center {c.center} of {circle}")
        tip = s.letters.replace(c.center, "")
        if tip != c.tip:
            fid = holds(env, Judgment.on(canonicalize("point", tip), cname))
            if fid is None:
                raise NotARadius(f"{tip} is not known to lie on {circle}")
            support.append(fid)
        env.require(s)
    return env.add_fact(Judgment.equal(s1, s2),
                        Provenance("definition", c.step, "def15", support=tuple(support)))


# ---- rules ------------------------------------------------------------------

Same = Callable[[ObjectName, ObjectName], bool]


def _unify(pattern: Pattern, judgment: Judgment, binding: dict, same: Same) -> Iterator[dict]:
    if pattern.kind != judgment.kind:
        return
    for order in _arg_orders(judgment):
        b = dict(binding)
        ok = True
        for var, val in zip(pattern.vars, order):
            if var in b:
                if not same(b[var], val):
                    ok = False
                    break
            else:
                b[var] = val
        if ok:
            yield b


def _unify_all(patterns, judgments, binding, same) -> Iterator[dict]:
    if not patterns:
        yield binding
        return
    for b in _unify(patterns[0], judgments[0], binding, same):
        yield from _unify_all(patterns[1:], judgments[1:], b, same)


def match_rule(rule: RuleSchema, premises: list[Judgment], conclusion: Judgment,
               same: Same) -> dict | None:
    """A metavariable assignment making the rule instance literal, or None."""
    if sorted(j.kind for j in premises) != sorted(p.kind for p in rule.premises):
        return None
    # binding the conclusion first prunes most premise orders
    kinds = [p.kind for p in rule.premises]
    orders = [perm for perm in permutations(premises)
              if [j.kind for j in perm] == kinds]
    for start in _unify(rule.conclusion, conclusion, {}, same):
        for perm in orders:
            for full in _unify_all(list(rule.premises), list(perm), start, same):
                return full
    return None


def apply_cn(env: Environment, rule: str, premises: list[int], conclusion: Judgment) -> int:
    schema = COMMON_NOTIONS.get(rule)
    if schema is None:
        raise PatternMismatch(f"unknown rule {rule}")
    facts = [fact(env, p) for p in premises]
    sorts = {f.judgment.sort for f in facts} | {conclusion.sort}
    if len(sorts) != 1 or None in sorts:
        raise SortMismatch(f"{rule} premises and conclusion mix sorts {sorted(map(str, sorts))}")
    if len(facts) != len(schema.premises):
        raise PatternMismatch(f"{rule} takes {len(schema.premises)} premise(s), got {len(facts)}")
    binding = match_rule(schema, [f.judgment for f in facts], conclusion,
                         lambda x, y: same_mag(env, x, y))
    if binding is None:
        shown = ", ".join(str(f.judgment) for f in facts)
        raise PatternMismatch(f"'{conclusion}' does not follow by {rule} from {shown}")
    for obj in conclusion.args:
        env.require(obj)
    return env.add_fact(conclusion, Provenance("deduction", rule=rule, premises=tuple(premises)))


def apply_theorem(env: Environment, schema: Schema, args: list[str], premises: list[int],
                  stated: list[Judgment] = ()) -> list[int]:
    """Use a verified or primitive theorem as a rule on the current figure."""
    mapping = bind_args(schema, args)
    for decl, arg in zip(schema.decls, args):
        if decl.kind != "extend":
            env.require(type(decl)(decl.kind, arg).object_name())
    facts = [fact(env, p) for p in premises]
    used = []
    for hyp in schema.all_hypotheses():
        inst = instantiate(hyp, mapping)
        hit = next((f.id for f in facts if judgment_matches(env, inst, f.judgment)), None)
        if hit is None and inst.kind == "on":
            hit = env.chain_fact(inst)
        if hit is None:
            raise PatternMismatch(f"hypothesis '{inst}' of {schema.number} is not among the cited premises")
        used.append(hit)
    conclusions = [instantiate(g, mapping) for g in schema.goals]
    for s in stated:
        if not any(judgment_matches(env, s, c) for c in conclusions):
            raise PatternMismatch(f"'{s}' is not a conclusion of {schema.number}")
    for c in conclusions:
        for obj in c.args:
            env.require(obj)
    prov = Provenance("deduction", rule=schema.number, premises=tuple(used))
    return [env.add_fact(c, prov) for c in conclusions]


# ---- provenance -------------------------------------------------------------

def fact(env: Environment, fid: int) -> Fact:
    if not 0 <= fid < len(env.facts):
        raise UnknownFact(f"no fact #{fid}")
    return env.facts[fid]


@dataclass
class Derivation:
    fact: Fact
    children: list[Derivation] = field(default_factory=list)

    def leaves(self) -> list[Fact]:
        if not self.children:
            return [self.fact]
        return [leaf for c in self.children for leaf in c.leaves()]

    def rules(self) -> list[str]:
        out = [self.fact.provenance.rule] if self.fact.provenance.kind == "deduction" else []
        for c in self.children:
            out += c.rules()
        return out

    def render(self, indent: int = 0) -> list[str]:
        f = self.fact
        lines = [f"{'  ' * indent}#{f.id} {f.judgment}  [{f.provenance.label()}]"]
        for c in self.children:
            lines += c.render(indent + 1)
        return lines


def provenance(env: Environment, fid: int) -> Derivation:
    f = fact(env, fid)
    return Derivation(f, [provenance(env, p) for p in f.provenance.premises])
