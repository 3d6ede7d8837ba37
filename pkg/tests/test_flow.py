from __future__ import annotations

import random

import pytest

from orientk.flow import FlowNetwork, decompose, max_flow_min_cut, split_path_vertices


def test_two_unit_paths() -> None:
    net = FlowNetwork("s", "t")
    for mid in ("a", "b"):
        net.add_arc("s", mid, 1)
        net.add_arc(mid, "t", 1)
    result = max_flow_min_cut(net)
    assert result.value == 2
    assert result.complete
    assert sorted(path for path, _ in decompose(net, result)) == [("s", "a", "t"), ("s", "b", "t")]


def test_single_arc_capacity() -> None:
    net = FlowNetwork("s", "t")
    net.add_arc("s", "t", 5)
    result = max_flow_min_cut(net)
    assert result.value == 5
    assert result.cut == (0,)
    assert decompose(net, result) == [(("s", "t"), 5)]


def test_unreachable_sink_has_value_zero() -> None:
    net = FlowNetwork("s", "t")
    net.add_arc("t", "s", 3)
    result = max_flow_min_cut(net)
    assert result.value == 0
    assert result.cut == ()


def test_limit_stops_early() -> None:
    net = FlowNetwork("s", "t")
    net.add_arc("s", "t", 10)
    result = max_flow_min_cut(net, limit=4)
    assert result.value == 4
    assert not result.complete


def test_invalid_networks() -> None:
    with pytest.raises(ValueError):
        FlowNetwork("s", "s")
    net = FlowNetwork("s", "t")
    with pytest.raises(ValueError):
        net.add_arc("s", "t", -1)


def test_cut_capacity_matches_value_on_random_networks() -> None:
    rng = random.Random(5)
    for _ in range(100):
        nodes = ["s", "t"] + [f"n{i}" for i in range(6)]
        net = FlowNetwork("s", "t")
        for _ in range(rng.randint(4, 20)):
            p, q = rng.sample(nodes, 2)
            net.add_arc(p, q, rng.randint(0, 3))
        result = max_flow_min_cut(net)
        assert sum(net.arcs[i].capacity for i in result.cut) == result.value
        # conservation at inner nodes
        for label in nodes[2:]:
            inflow = sum(f for f, arc in zip(result.flow, net.arcs) if arc.head == label)
            outflow = sum(f for f, arc in zip(result.flow, net.arcs) if arc.tail == label)
            assert inflow == outflow
        assert sum(amount for _, amount in decompose(net, result)) == result.value


def test_split_path_vertices() -> None:
    labels = [("out", "a"), ("in", "b"), ("out", "b"), ("in", "c")]
    assert split_path_vertices(labels) == ("a", "b", "c")
    assert split_path_vertices(["source", ("in", "x"), ("out", "x"), "sink"]) == ("x",)
