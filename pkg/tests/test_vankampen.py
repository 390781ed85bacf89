import random

import pytest

from multired.multifraction import Multifraction, format_multifraction, parse_multifraction, unit
from multired import harness as H
from multired import reduction as red
from multired.vankampen import (
    VanKampenFailure,
    VKEdge,
    derive_universal_trace,
    validate_diagram,
    van_kampen,
)


def test_trivial_depth4(att):
    d = van_kampen(att, unit(4))
    assert len(d.vertices) == 5 and len(d.triangles) == 4
    assert all(e.label.is_identity for e in d.edges.values())


def test_depth6_shape(att):
    a = parse_multifraction(att, "ab/ba/ca/ac/bc/cb")
    d = van_kampen(att, a)
    assert len(d.vertices) == 14  # 6 outer, 3 inner, 4 cell centers, 1 hub
    assert len(d.triangles) == 20
    payload = d.to_json(att)
    assert payload["depth"] == 6 and len(payload["boundary"]) == 6


def test_att2_six_multifraction(att):
    a = parse_multifraction(att, "ac/ca/ba/ab/cb/bc")
    d = van_kampen(att, a)
    assert len(d.vertices) == 14


def test_supplied_trace_is_used(att):
    a, _ = H.gen_central_cross(att, 6, 1, 123)
    trace = derive_universal_trace(att, a)
    assert trace.end == unit(6)
    d = van_kampen(att, a, trace=trace)
    validate_diagram(att, d, a)


def test_non_unital_fails(att):
    with pytest.raises(VanKampenFailure):
        van_kampen(att, parse_multifraction(att, "a/b/1/1"))


def test_odd_or_small_depth_rejected(att):
    with pytest.raises(ValueError):
        van_kampen(att, unit(3))
    with pytest.raises(ValueError):
        van_kampen(att, unit(2))


def test_validation_catches_tampering(att):
    d = van_kampen(att, unit(4))
    eid = d.boundary[0]
    edge = d.edges[eid]
    d.edges[eid] = VKEdge(edge.src, edge.dst, att.element("a"))
    with pytest.raises(VanKampenFailure):
        validate_diagram(att, d, unit(4))


def test_batch_depths_4_and_6(att):
    rng = random.Random(77)
    built = 0
    tries = 0
    while built < 30 and tries < 120:
        tries += 1
        depth = 4 if tries % 2 else 6
        a, _ = H.gen_central_cross(att, depth, 2, rng.randrange(10**9))
        if rng.random() < 0.4:
            b = H.lcm_expand(att, a, seed=rng.randrange(10**9))
            if b is not None and b.total_length() <= 22:
                a = b
        if red.red_tame(att, a) != unit(depth):
            continue
        d = van_kampen(att, a)
        validate_diagram(att, d, a)
        built += 1
    assert built >= 30
