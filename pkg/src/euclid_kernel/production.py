"""Geometrical production: the object side of the kernel.

An :class:`Environment` holds everything one proposition check produces.
Objects enter it only through exposition (generic objects) or through the
postulate operations and previously verified problems; every fact about a
constructed object names the step that made it.

Collinear points are kept in *chains*.  Any two points of a chain span a
segment that counts as drawn, and any three in order give a decomposition
fact on demand (:meth:`Environment.chain_fact`).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    CenterNotOnRadius,
    DegenerateSegment,
    DuplicateObjectName,
    NameCollision,
    NoCommonRadius,
    NotADecomposition,
    SameCircle,
    SchemaMismatch,
    UnknownObject,
    UnknownPoint,
    UnknownSegment,
    UnsatisfiedHypothesis,
    WrongArity,
)
from .judgment import Judgment
from .naming import ObjectName, angles_of, canonicalize, segment, sides_of
from .schema import Decl, Schema, bind_args, instantiate


@dataclass(frozen=True)
class Provenance:
    kind: str  # hypothesis | construction | definition | deduction | diagram
    step: int | None = None
    rule: str | None = None
    premises: tuple[int, ...] = ()
    chain_derived: bool = False
    # facts a definition or derived construction relied on; not tree edges
    support: tuple[int, ...] = ()

    def label(self) -> str:
        if self.kind == "deduction":
            return f"by {self.rule}"
        if self.kind == "definition":
            return f"by definition {self.rule}" + (f" (step {self.step})" if self.step is not None else "")
        if self.kind == "construction":
            extra = ", chain-derived" if self.chain_derived else ""
            return f"by construction (step {self.step}{extra})"
        if self.kind == "diagram":
            return f"diagrammatic posit (step {self.step})"
        return "by hypothesis"


@dataclass(frozen=True)
class Fact:
    id: int
    judgment: Judgment
    provenance: Provenance


@dataclass
class Step:
    id: int
    kind: str
    inputs: tuple[ObjectName, ...]
    outputs: tuple[ObjectName, ...]
    detail: str
    phase: str = "construction"


@dataclass
class GeometricObject:
    name: ObjectName
    step: int
    generic: bool = False


@dataclass
class Chain:
    points: list[str]
    placed: dict[str, int]

    def index(self, p: str) -> int:
        return self.points.index(p)

    def __contains__(self, p: str) -> bool:
        return p in self.placed


@dataclass(frozen=True)
class Circle:
    label: str
    center: str
    radius: ObjectName
    tip: str
    step: int


@dataclass
class Environment:
    registry: dict[ObjectName, GeometricObject] = field(default_factory=dict)
    chains: list[Chain] = field(default_factory=list)
    circles: dict[str, Circle] = field(default_factory=dict)
    facts: list[Fact] = field(default_factory=list)
    steps: list[Step] = field(default_factory=list)
    phase: str = "exposition"
    _index: dict[Judgment, int] = field(default_factory=dict, repr=False)

    # ---- bookkeeping -------------------------------------------------

    def new_step(self, kind: str, inputs, outputs, detail: str) -> Step:
        step = Step(len(self.steps), kind, tuple(inputs), tuple(outputs), detail, self.phase)
        self.steps.append(step)
        return step

    def add_fact(self, judgment: Judgment, provenance: Provenance) -> int:
        fid = len(self.facts)
        for p in provenance.premises:
            assert p < fid
        self.facts.append(Fact(fid, judgment, provenance))
        self._index.setdefault(judgment, fid)
        return fid

    def lookup(self, judgment: Judgment) -> int | None:
        return self._index.get(judgment)

    def _register(self, name: ObjectName, step: Step, generic: bool = False) -> bool:
        if name in self.registry:
            return False
        self.registry[name] = GeometricObject(name, step.id, generic)
        step.outputs = step.outputs + (name,)
        return True

    def points(self) -> set[str]:
        return {n.letters for n in self.registry if n.kind == "point"}

    def has_point(self, p: str) -> bool:
        return canonicalize("point", p) in self.registry

    def chain_with(self, *letters: str) -> Chain | None:
        for chain in self.chains:
            if all(p in chain for p in letters):
                return chain
        return None

    def collinear(self, *letters: str) -> bool:
        return self.chain_with(*letters) is not None

    # ---- constructedness (pure; never registers) ----------------------

    def constructed(self, name: ObjectName) -> bool:
        if name in self.registry:
            return True
        if name.kind == "segment":
            return self.chain_with(*name.letters) is not None
        if name.kind == "circle":
            return name.letters in self.circles
        if name.kind == "angle":
            a, v, b = name.letters
            return (self.constructed(segment(v + a)) and self.constructed(segment(v + b))
                    and not self.collinear(a, v, b))
        if name.kind == "polygon":
            if len(name.letters) == 3 and self.collinear(*name.letters):
                return False
            return all(self.constructed(s) for s in sorted(sides_of(name)))
        return False

    def require(self, name: ObjectName) -> None:
        if self.constructed(name):
            return
        if name.kind == "point":
            raise UnknownPoint(f"point {name} has not been constructed")
        if name.kind == "segment":
            missing = [p for p in name.letters if not self.has_point(p)]
            if missing:
                raise UnknownPoint(f"point {missing[0]} of {name} has not been constructed")
            raise UnknownSegment(f"segment {name} has not been drawn")
        if name.kind == "circle":
            raise UnknownObject(f"circle {name} has not been drawn")
        for p in name.letters:
            if not self.has_point(p):
                raise UnknownPoint(f"point {p} of {name} has not been constructed")
        raise UnknownObject(f"{name} has not been constructed")

    def producer(self, name: ObjectName) -> int:
        """Step at which ``name`` first became available."""
        if name.kind == "segment":
            chain = self.chain_with(*name.letters)
            if chain is not None:
                return max(chain.placed[p] for p in name.letters)
        if name in self.registry:
            return self.registry[name].step
        if name.kind == "circle":
            return self.circles[name.letters].step
        if name.kind == "angle":
            a, v, b = name.letters
            return max(self.producer(segment(v + a)), self.producer(segment(v + b)))
        return max(self.producer(s) for s in sorted(sides_of(name)))

    # ---- chains ------------------------------------------------------

    def _new_chain(self, p: str, q: str, step: Step) -> Chain:
        chain = Chain([p, q], {p: step.id, q: step.id})
        self.chains.append(chain)
        return chain

    def _insert_between(self, first: str, second: str, new: str, step: Step) -> Chain:
        """Place ``new`` strictly inside segment ``first second``.

        When the segment already has interior points the new point goes next
        to ``second``; a picked point carries no metric, only this order.
        """
        chain = self.chain_with(first, second)
        i, j = chain.index(first), chain.index(second)
        pos = j if i < j else j + 1
        chain.points.insert(pos, new)
        chain.placed[new] = step.id
        return chain

    def chain_fact(self, judgment: Judgment) -> int | None:
        """Materialize a decomposition or on-segment fact read off a chain."""
        hit = self.lookup(judgment)
        if hit is not None:
            return hit
        if judgment.kind == "decomp" and judgment.sort == "segment":
            whole, a, b = judgment.args
            shared = set(a.letters) & set(b.letters)
            if len(shared) != 1:
                return None
            (mid,) = shared
            ends = (set(a.letters) | set(b.letters)) - {mid}
            if ends != set(whole.letters):
                return None
            x, z = sorted(ends)
            chain = self.chain_with(x, mid, z)
            if chain is None or not _strictly_between(chain, x, mid, z):
                return None
            step = max(chain.placed[p] for p in (x, mid, z))
        elif judgment.kind == "on" and judgment.args[1].kind == "segment":
            p = judgment.args[0].letters
            x, z = judgment.args[1].letters
            chain = self.chain_with(x, p, z)
            if chain is None or not _strictly_between(chain, x, p, z):
                return None
            step = max(chain.placed[q] for q in (x, p, z))
        else:
            return None
        return self.add_fact(judgment, Provenance("construction", step, chain_derived=True))

    # ---- exposition --------------------------------------------------

    def register_given(self, decl: Decl) -> ObjectName:
        """Introduce a generic object named in the exposition."""
        if decl.kind == "extend":
            return self.apply_extend(decl.letters, decl.beyond, decl.new)
        name = decl.object_name()
        if name in self.registry:
            raise DuplicateObjectName(f"{name} is already declared")
        step = self.new_step("given", (), (), f"given {decl}")
        for p in name.letters:
            self._register(canonicalize("point", p), step, generic=True)
        if name.kind == "segment":
            if self.chain_with(*name.letters) is None:
                self._new_chain(*name.letters, step)
            self._register(name, step, generic=True)
        elif name.kind == "polygon":
            for side in sorted(sides_of(name)):
                if self.chain_with(*side.letters) is None:
                    self._new_chain(*side.letters, step)
                self._register(side, step, generic=True)
            if len(name.letters) == 3:
                for a in angles_of(name):
                    self._register(a, step, generic=True)
            self._register(name, step, generic=True)
        elif name.kind == "angle":
            a, v, b = name.letters
            for arm in (segment(v + a), segment(v + b)):
                if self.chain_with(*arm.letters) is None:
                    self._new_chain(*arm.letters, step)
                self._register(arm, step, generic=True)
            self._register(name, step, generic=True)
        return name

    # ---- postulates ---------------------------------------------------

    def _fresh(self, letter: str) -> ObjectName:
        name = canonicalize("point", letter)
        if name in self.registry:
            raise NameCollision(f"point {letter} already exists")
        return name

    def apply_line(self, p: str, q: str) -> ObjectName:
        """Post. 1: the segment between two given points."""
        if p == q:
            raise DegenerateSegment(f"line({p}, {q}) needs two different points")
        for x in (p, q):
            self.require(canonicalize("point", x))
        seg = segment(p + q)
        step = self.new_step("line", (canonicalize("point", p), canonicalize("point", q)), (),
                             f"line({p}, {q})")
        if seg not in self.registry:
            if self.chain_with(p, q) is None:
                self._new_chain(p, q, step)
            self._register(seg, step)
        return seg

    def apply_extend(self, seg_raw: str, beyond: str, name: str) -> ObjectName:
        """Post. 2: produce ``seg_raw`` past ``beyond`` to a fresh point."""
        seg = segment(seg_raw)
        self.require(seg)
        if beyond not in seg.letters:
            raise WrongArity(f"{beyond} is not an endpoint of {seg}")
        new = self._fresh(name)
        other = seg.letters.replace(beyond, "")
        step = self.new_step("extend", (seg,), (), f"extend({seg_raw}, {beyond}) -> {name}")
        chain = self.chain_with(other, beyond)
        if chain.index(other) < chain.index(beyond):
            chain.points.append(name)
        else:
            chain.points.insert(0, name)
        chain.placed[name] = step.id
        self._register(new, step)
        self._register(segment(beyond + name), step)
        self._register(segment(other + name), step)
        self.add_fact(Judgment.decomp(segment(other + name), seg, segment(beyond + name)),
                      Provenance("construction", step.id))
        return new

    def apply_circle(self, label: str, center: str, radius_raw: str) -> ObjectName:
        """Post. 3: circle with a given center and radius."""
        radius = segment(radius_raw)
        cname = canonicalize("circle", label)
        if label in self.circles:
            raise NameCollision(f"circle {label} already exists")
        self.require(radius)
        if center not in radius.letters:
            raise CenterNotOnRadius(f"center {center} is not an endpoint of radius {radius}")
        step = self.new_step("circle", (canonicalize("point", center), radius), (),
                             f"circle({center}, {radius_raw}) -> {label}")
        self.circles[label] = Circle(label, center, radius, radius.letters.replace(center, ""), step.id)
        self._register(cname, step)
        return cname

    def apply_meet(self, c1: str, c2: str, name: str) -> ObjectName:
        """Intersection point of two circles drawn on a common radius."""
        for c in (c1, c2):
            if c not in self.circles:
                raise UnknownObject(f"circle {c} has not been drawn")
        a, b = self.circles[c1], self.circles[c2]
        if c1 == c2 or (a.center == b.center and a.radius == b.radius):
            raise SameCircle(f"{c1} and {c2} are the same circle")
        if a.radius != b.radius:
            raise NoCommonRadius(f"{c1} has radius {a.radius}, {c2} has radius {b.radius}")
        new = self._fresh(name)
        step = self.new_step("meet", (canonicalize("circle", c1), canonicalize("circle", c2)), (),
                             f"meet({c1}, {c2}) -> {name}")
        self._register(new, step)
        for c in (c1, c2):
            self.add_fact(Judgment.on(new, canonicalize("circle", c)), Provenance("construction", step.id))
        return new

    def pick_on(self, seg_raw: str, name: str) -> ObjectName:
        """Take a fresh point somewhere inside a drawn segment."""
        seg = segment(seg_raw)
        self.require(seg)
        new = self._fresh(name)
        step = self.new_step("pick", (seg,), (), f"pick({seg_raw}) -> {name}")
        x, y = seg_raw
        chain = self._insert_between(x, y, name, step)
        self._register(new, step)
        self.add_fact(Judgment.decomp(seg, segment(x + name), segment(name + y)),
                      Provenance("construction", step.id))
        head = chain.points[0] if chain.index(x) < chain.index(y) else chain.points[-1]
        if head != x:
            self.add_fact(Judgment.decomp(segment(head + name), segment(head + x), segment(x + name)),
                          Provenance("construction", step.id))
        return new

    def record_diagram(self, judgment: Judgment) -> int:
        """Declare a configuration read off the figure (e.g. an angle split)."""
        if not (judgment.kind == "decomp" or (judgment.kind == "on" and judgment.args[1].kind == "circle")):
            raise NotADecomposition(f"'{judgment}' must be proved, not posited")
        for obj in judgment.args:
            self.require(obj)
        step = self.new_step("diagram", judgment.args, (), f"diagram {judgment}")
        return self.add_fact(judgment, Provenance("diagram", step.id))

    # ---- derived constructions ----------------------------------------

    def apply_derived(self, schema: Schema, args: list[str], names: list[str]) -> list[int]:
        """Perform a verified problem on the current figure.

        Only the problem's goal judgments come back, as construction facts of
        this step; its internal scaffolding stays inside its own check.
        """
        from .deduction import resolve

        mapping = bind_args(schema, args)
        inputs = []
        for decl, arg in zip(schema.decls, args):
            obj = Decl(decl.kind, arg).object_name() if decl.kind != "extend" else canonicalize("point", arg)
            self.require(obj)
            inputs.append(obj)
        fresh = schema.fresh_letters()
        if len(names) != len(fresh):
            raise SchemaMismatch(f"{schema.number} produces {len(fresh)} point(s), {len(names)} name(s) given")
        if len(set(names)) != len(names):
            raise NameCollision("produced points need distinct names")
        for letter in names:
            self._fresh(letter)
        for s in fresh:
            if s in mapping:
                raise SchemaMismatch(f"letter {s} is both given and produced")
        mapping.update(zip(fresh, names))

        support = []
        for hyp in schema.all_hypotheses():
            inst = instantiate(hyp, mapping)
            fid = resolve(self, inst)
            if fid is None:
                raise UnsatisfiedHypothesis(f"{schema.number} needs {inst}")
            support.append(fid)

        goals = [instantiate(g, mapping) for g in schema.goals]
        seek = instantiate(schema.seek, mapping) if schema.seek else None
        step = self.new_step("derived", inputs, (),
                             f"apply {schema.number}({', '.join(args)}) -> {', '.join(names)}")
        placed = set()
        for g in goals:
            if g.kind == "on" and g.args[1].kind == "segment":
                p = g.args[0].letters
                carrier = g.args[1]
                self.require(carrier)
                raw = _raw_orientation(carrier, mapping, schema, g)
                self._insert_between(raw[0], raw[1], p, step)
                self._register(g.args[0], step)
                placed.add(p)
        for letter in names:
            if letter not in placed:
                self._register(canonicalize("point", letter), step)
        produced = ([seek] if seek else []) + [a for g in goals for a in g.args]
        for obj in produced:
            self._register_composite(obj, step)
        return [self.add_fact(g, Provenance("construction", step.id, support=tuple(support)))
                for g in goals]

    def _register_composite(self, obj: ObjectName, step: Step) -> None:
        if obj.kind in ("point", "circle") or self.constructed(obj):
            return
        if obj.kind == "segment":
            if self.chain_with(*obj.letters) is None:
                self._new_chain(*obj.letters, step)
            self._register(obj, step)
        elif obj.kind == "polygon":
            for side in sorted(sides_of(obj)):
                self._register_composite(side, step)
            self._register(obj, step)
        elif obj.kind == "angle":
            a, v, b = obj.letters
            self._register_composite(segment(v + a), step)
            self._register_composite(segment(v + b), step)
            self._register(obj, step)


def _strictly_between(chain: Chain, x: str, mid: str, z: str) -> bool:
    i, j, k = chain.index(x), chain.index(mid), chain.index(z)
    return i < j < k or k < j < i


def _raw_orientation(carrier: ObjectName, mapping, schema: Schema, goal: Judgment) -> str:
    """Recover the order in which a carrier segment was written in the schema."""
    for decl in schema.decls:
        if decl.kind == "segment":
            raw = "".join(mapping[c] for c in decl.letters)
            if segment(raw) == carrier:
                return raw
    return carrier.letters


@dataclass
class ProductionTrace:
    nodes: list[Step]
    edges: list[tuple[int, int]]  # (from step, to step): to depends on from

    def order(self) -> list[int]:
        return [s.id for s in self.nodes]

    def count(self, kind: str) -> int:
        return sum(1 for s in self.nodes if s.kind == kind)


def production_trace(env: Environment) -> ProductionTrace:
    nodes = [s for s in env.steps if s.kind != "given"]
    ids = {s.id for s in nodes}
    edges = set()
    for s in nodes:
        for obj in s.inputs:
            if not env.constructed(obj):
                continue
            src = env.producer(obj)
            if src in ids and src < s.id:
                edges.add((src, s.id))
    return ProductionTrace(nodes, sorted(edges))
