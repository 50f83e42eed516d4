from __future__ import annotations

from graphlib import TopologicalSorter

import pytest

from euclid_kernel.errors import (
    CenterNotOnRadius,
    DegenerateSegment,
    NameCollision,
    NoCommonRadius,
    NotADecomposition,
    SameCircle,
    UnknownObject,
    UnknownPoint,
    UnknownSegment,
)
from euclid_kernel.judgment import Judgment
from euclid_kernel.naming import angle, canonicalize, segment, triangle
from euclid_kernel.production import Environment, production_trace
from euclid_kernel.schema import Decl


def given_segment(raw="AB"):
    env = Environment()
    env.register_given(Decl("segment", raw))
    env.phase = "construction"
    return env


def test_proposition_one_construction():
    env = given_segment()
    env.apply_circle("c1", "A", "AB")
    env.apply_circle("c2", "B", "BA")
    env.apply_meet("c1", "c2", "C")
    env.apply_line("C", "A")
    env.apply_line("C", "B")
    assert env.constructed(triangle("ABC"))
    assert env.lookup(Judgment.on(canonicalize("point", "C"), canonicalize("circle", "c1"))) is not None


def test_linking_principle():
    env = given_segment()
    with pytest.raises(UnknownPoint):
        env.apply_line("C", "A")
    with pytest.raises(UnknownObject):
        env.apply_meet("c1", "c2", "C")
    with pytest.raises(UnknownPoint):
        env.apply_extend("AC", "C", "D")


def test_unknown_segment_between_known_points():
    env = Environment()
    env.register_given(Decl("point", "A"))
    env.register_given(Decl("point", "B"))
    with pytest.raises(UnknownSegment):
        env.require(segment("AB"))
    env.phase = "construction"
    env.apply_line("A", "B")
    env.require(segment("AB"))


@pytest.mark.parametrize("steps,exc", [
    ([("circle", "c1", "A", "AC")], UnknownPoint),
    ([("circle", "c1", "B", "BA"), ("circle", "c1", "A", "AB")], NameCollision),
    ([("line", "A", "A")], DegenerateSegment),
    ([("circle", "c1", "A", "AB"), ("circle", "c2", "A", "AB"), ("meet", "c1", "c2", "C")], SameCircle),
])
def test_postulate_preconditions(steps, exc):
    env = given_segment()
    with pytest.raises(exc):
        for op, *args in steps:
            getattr(env, f"apply_{op}")(*args)


def test_center_must_be_on_radius():
    env = given_segment()
    env.register_given(Decl("point", "C"))
    with pytest.raises(CenterNotOnRadius):
        env.apply_circle("c1", "C", "AB")


def test_meet_needs_common_radius():
    env = Environment()
    env.register_given(Decl("segment", "AB"))
    env.register_given(Decl("segment", "CD"))
    env.phase = "construction"
    env.apply_circle("c1", "A", "AB")
    env.apply_circle("c2", "C", "CD")
    with pytest.raises(NoCommonRadius):
        env.apply_meet("c1", "c2", "E")


def test_extend_and_pick_keep_chain_order():
    env = given_segment()
    env.apply_extend("AB", "B", "D")
    env.pick_on("BD", "F")
    assert env.chain_with("A", "B").points == ["A", "B", "F", "D"]
    fid = env.chain_fact(Judgment.decomp(segment("AD"), segment("AF"), segment("FD")))
    assert fid is not None and env.facts[fid].provenance.chain_derived
    assert env.chain_fact(Judgment.decomp(segment("AD"), segment("AB"), segment("BF"))) is None
    on = env.chain_fact(Judgment.on(canonicalize("point", "B"), segment("AF")))
    assert on is not None


def test_chain_segments_count_as_drawn():
    env = given_segment()
    env.pick_on("AB", "F")
    assert env.constructed(segment("AF")) and env.constructed(segment("FB"))
    # a straight angle is not an angle
    assert not env.constructed(angle("AFB"))


def test_diagram_accepts_only_configuration_facts():
    env = given_segment()
    with pytest.raises(NotADecomposition):
        env.record_diagram(Judgment.equal(segment("AB"), segment("AB")))
    env.apply_circle("c1", "A", "AB")
    env.pick_on("AB", "F")
    fid = env.record_diagram(Judgment.on(canonicalize("point", "F"), canonicalize("circle", "c1")))
    assert env.facts[fid].provenance.kind == "diagram"


def test_name_collision_on_fresh_point():
    env = given_segment()
    with pytest.raises(NameCollision):
        env.pick_on("AB", "A")


def test_trace_is_topological(reports):
    for r in reports.values():
        if r.env is None:
            continue
        trace = production_trace(r.env)
        graph = {n: set() for n in trace.order()}
        for src, dst in trace.edges:
            graph[dst].add(src)
        order = list(TopologicalSorter(graph).static_order())
        pos = {n: i for i, n in enumerate(order)}
        assert all(pos[s] < pos[d] for s, d in trace.edges)
        assert all(s < d for s, d in trace.edges)
        assert trace.order() == sorted(trace.order())


def test_linking_soundness(reports):
    """Objects of a construction-time fact exist no later than its step;
    proof-time facts only mention objects the construction produced."""
    for r in reports.values():
        env = r.env
        if env is None:
            continue
        for f in env.facts:
            for obj in f.judgment.args:
                assert env.constructed(obj)
                if f.provenance.kind in ("construction", "diagram"):
                    assert env.producer(obj) <= f.provenance.step
