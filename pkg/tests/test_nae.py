from __future__ import annotations

import pytest

from orientk.nae import (
    Literal,
    NaeFormatError,
    NaeInstance,
    assignments,
    clause_nae,
    nae_bruteforce,
    nae_count,
    nae_satisfied,
    parse_nae,
)


def test_parse_and_count_xyz() -> None:
    instance = parse_nae("# one clause\np nae\nclause x y !z\n")
    assert instance.variables == ("x", "y", "z")
    assert instance.clauses == ((Literal("x"), Literal("y"), Literal("z", False)),)
    assert nae_count(instance) == 6
    ok, model = nae_bruteforce(instance)
    assert ok
    assert nae_satisfied(instance, model)
    assert not nae_satisfied(instance, {"x": True, "y": True, "z": False})
    assert not nae_satisfied(instance, {"x": False, "y": False, "z": True})


def test_repeated_variable_clauses() -> None:
    xx = NaeInstance.from_clauses([["x", "x"]])
    assert nae_bruteforce(xx) == (False, None)
    assert nae_count(xx) == 0
    x_not_x = NaeInstance.from_clauses([["x", "!x"]])
    assert nae_count(x_not_x) == 2


def test_to_text_round_trip() -> None:
    instance = NaeInstance.from_clauses([["x", "y", "!z"], ["x", "!y", "z"]])
    assert parse_nae(instance.to_text()) == instance
    assert str(Literal("y", False)) == "!y"


def test_assignments_start_all_true() -> None:
    instance = NaeInstance.from_clauses([["a", "b"]])
    all_of_them = list(assignments(instance))
    assert all_of_them[0] == {"a": True, "b": True}
    assert len(all_of_them) == 4


def test_clause_nae() -> None:
    clause = (Literal("x"), Literal("x", False))
    assert clause_nae(clause, {"x": True})
    assert not clause_nae((Literal("x"), Literal("y")), {"x": False, "y": False})


@pytest.mark.parametrize(
    "text",
    [
        "clause x y\n",
        "p nae\n",
        "p nae\nclause x\n",
        "p nae\nclause a b c d\n",
        "p nae\nclause x !\n",
        "p nae\nfoo x y\n",
    ],
)
def test_parse_errors(text: str) -> None:
    with pytest.raises(NaeFormatError):
        parse_nae(text)


def test_instance_validation() -> None:
    with pytest.raises(NaeFormatError):
        NaeInstance(("x", "y"), ((Literal("x"), Literal("x")),))
    with pytest.raises(NaeFormatError):
        NaeInstance(("x",), ((Literal("x"), Literal("q")),))
    with pytest.raises(ValueError):
        nae_satisfied(NaeInstance.from_clauses([["x", "y"]]), {"x": True})
