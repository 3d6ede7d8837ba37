from __future__ import annotations

from collections import Counter
from itertools import combinations
from pathlib import Path

import pytest

from orientk.connectivity import is_k_connected, is_weakly_2k_connected
from orientk.families import (
    available_generators,
    get_generator,
    register_builtin_generators,
    register_generator,
    role_hints,
    verify_counterexample,
)
from orientk.families.family_g3 import (
    PATH,
    VERTICES,
    build_G3_candidate,
    build_H3_candidate,
    g3_candidates,
    side,
)
from orientk.families.family_gk import GkParams, build_Gk, default_n, realize_pairs
from orientk.graph import Multigraph, degree, degree_into, is_eulerian, orient, parse_graph
from orientk.search import Status


def _multiset(graph: Multigraph) -> Counter:
    return Counter(tuple(sorted(e)) for e in graph.edges)


@pytest.fixture(scope="module")
def g4() -> Multigraph:
    return build_Gk(4, 17)


def test_default_n() -> None:
    assert default_n(4) == 17
    assert default_n(5) == 25


def test_params_validation() -> None:
    with pytest.raises(ValueError):
        GkParams(4, 16)
    with pytest.raises(ValueError):
        GkParams(3, 17)
    with pytest.raises(ValueError):
        GkParams(5, 23)
    with pytest.raises(ValueError):
        build_Gk(4, 16)


def test_gk_size(g4: Multigraph) -> None:
    assert len(g4.vertices) == 39
    assert len(g4.edges) == 311


def test_gk_degree_equations(g4: Multigraph) -> None:
    params = GkParams(4, 17)
    k = 4
    A, B = params.A, params.B
    for v in ("w", "x", "y", "z"):
        assert degree(g4, v) == 2 * k
    assert degree_into(g4, "w", A) == 2 * k - 2
    assert degree_into(g4, "z", B) == 2 * k - 2
    assert degree_into(g4, "y", A) == 2
    assert degree_into(g4, "x", B) == 2
    assert degree_into(g4, "x", A) == 2 * k - 4
    assert degree_into(g4, "y", B) == 2 * k - 4
    c = params.c
    assert degree_into(g4, c, A) == 2 * 2 + 1
    assert degree_into(g4, c, B) == 2 * 2 + 1


def test_gk_degree_equations_for_k5() -> None:
    params = GkParams(5, 25)
    g = build_Gk(5, 25)
    for v in params.C[1:]:
        assert degree_into(g, v, params.A) == 6
        assert degree_into(g, v, params.B) == 6
    assert degree_into(g, params.c, params.A) == 7


def test_gk_pair_structure(g4: Multigraph) -> None:
    params = GkParams(4, 17)
    mult = _multiset(g4)
    assert max(mult.values()) == 2
    for host in params.A + params.B:
        pairs = [e for e, count in mult.items() if count == 2 and host in e]
        assert len(pairs) <= 1
    for end in (params.a, params.b):
        assert all(count == 1 for e, count in mult.items() if end in e)


@pytest.mark.parametrize("k", [4, 5, 6])
def test_gk_is_eulerian(k: int) -> None:
    assert is_eulerian(build_Gk(k))


def test_realize_pairs() -> None:
    assert realize_pairs({"w": 3}, ["h1", "h2", "h3"]) == {"w": ("h1", "h2", "h3")}
    with pytest.raises(ValueError):
        realize_pairs({"w": 3, "x": 2}, ["h1", "h2", "h3", "h4"])
    into_a, into_b = GkParams(4, 17).demands()
    assert sum(into_a.values()) == 8
    assert sum(into_b.values()) == 8
    chosen = realize_pairs(into_a, GkParams(4, 17).A[1:])
    used = [h for hosts in chosen.values() for h in hosts]
    assert len(used) == len(set(used)) == 8


def test_g3_prose_constraints() -> None:
    g = build_G3_candidate()
    assert g.vertices == VERTICES
    mult = _multiset(g)
    for a, b in zip(PATH, PATH[1:]):
        assert mult[tuple(sorted((a, b)))] == 1
    assert max(mult.values()) == 2
    for v in PATH[1:-1]:
        assert degree(g, v) == 6
        simple = [e for e, count in mult.items() if count == 1 and v in e]
        assert len(simple) == 2
    assert min(degree(g, v) for v in g.vertices) >= 6
    for e, count in mult.items():
        if count == 2:
            assert any(degree(g, v) == 6 for v in e)
    crossing = {
        e for e in mult
        if "x" not in e and "y" not in e and {side(e[0]), side(e[1])} == {"a", "b"}
    }
    assert crossing == {("v_a", "w_b"), ("v_b", "w_a")}


def test_h3_candidate() -> None:
    h = build_H3_candidate()
    assert len(h.vertices) == 8
    assert len(h.edges) == 25
    mult = _multiset(h)
    for tri in (("v_a", "y", "w_b"), ("v_b", "x", "w_a")):
        for p, q in combinations(tri, 2):
            assert mult[tuple(sorted((p, q)))] >= 1
    assert is_weakly_2k_connected(h, 3).holds


def test_g3_fixture_is_among_candidates() -> None:
    fixture = _multiset(build_G3_candidate())
    found = list(g3_candidates())
    assert found
    assert any(_multiset(g) == fixture for g in found)


def test_registry() -> None:
    register_builtin_generators()
    assert {"gk", "g3", "h3", "h3-prime"} <= set(available_generators())
    assert len(get_generator("H3")().vertices) == 8
    assert len(get_generator("h3-prime")().vertices) == 17
    with pytest.raises(KeyError) as exc:
        get_generator("nope")
    assert "Available" in str(exc.value)
    with pytest.raises(ValueError):
        register_generator("  ", build_G3_candidate)


def test_role_hints(g4: Multigraph) -> None:
    assert role_hints(g4, 4) == [frozenset({"C.0", "x", "y"})]
    assert role_hints(build_H3_candidate(), 3) == [frozenset({"x", "y"})]
    assert role_hints(build_H3_candidate(), 2) == []


def test_verify_small_graphs() -> None:
    k4 = Multigraph(("a", "b", "c", "d"), tuple(combinations("abcd", 2)))
    found = verify_counterexample(k4, 1)
    assert found.outcome.status is Status.FOUND
    assert is_k_connected(orient(k4, found.outcome.orientation), 1).holds

    k2 = Multigraph(("a", "b"), (("a", "b"),))
    refuted = verify_counterexample(k2, 1)
    assert not refuted.weakly_2k
    assert refuted.outcome.status is Status.REFUTED_EXHAUSTIVE
    assert refuted.weak_witness.startswith("PAIR")


def test_verify_h3_and_g3() -> None:
    for graph in (build_H3_candidate(), build_G3_candidate()):
        report = verify_counterexample(graph, 3)
        assert report.weakly_2k
        assert report.outcome.refuted


def test_verify_gk(g4: Multigraph) -> None:
    report = verify_counterexample(g4, 4)
    assert report.eulerian
    assert report.weakly_2k
    assert report.outcome.status is Status.REFUTED_BY_SEPARATOR
    assert len(report.outcome.branches) == 2
    for _state, separator in report.outcome.branches:
        assert separator == frozenset({"C.0", "x", "y"})
    doc = report.to_dict()
    assert doc["orientation_status"] == "refuted-by-separator"
    assert "branch 1: SEPARATOR C.0 x y" in report.to_text()


def test_example_h3_file_matches_generator() -> None:
    path = Path(__file__).resolve().parents[1] / "example" / "h3.graph"
    graph = parse_graph(path.read_text(encoding="utf-8"))
    assert _multiset(graph) == _multiset(build_H3_candidate())


def test_verify_gk_for_k5() -> None:
    report = verify_counterexample(build_Gk(5, 25), 5)
    assert report.eulerian
    assert report.weakly_2k
    assert report.outcome.status is Status.REFUTED_BY_SEPARATOR
    assert len(report.outcome.branches) == 2
    for _state, separator in report.outcome.branches:
        assert separator == frozenset({"C.0", "C.1", "x", "y"})
