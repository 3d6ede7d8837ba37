"""The ten-vertex graph G_3 and the eight-vertex graph H_3 obtained from it.

The vertices split into an ``a`` side, a ``b`` side and the two hubs ``x``
and ``y``. A simple path ``u_a v_a w_b y x w_a v_b u_b`` crosses between the
sides; every other edge belongs to a parallel pair.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, FrozenSet, Iterator, List, Sequence, Tuple

from orientk.graph import Multigraph


VERTICES = ("u_a", "v_a", "w_a", "t_a", "u_b", "v_b", "w_b", "t_b", "x", "y")

PATH = ("u_a", "v_a", "w_b", "y", "x", "w_a", "v_b", "u_b")

# t_a and t_b carry the pairs that H_3 replaces by triangles
T_PAIRS = (
	("t_a", "u_a"), ("t_a", "v_a"), ("t_a", "y"),
	("t_b", "u_b"), ("t_b", "v_b"), ("t_b", "x"),
)

G3_PAIRS = T_PAIRS + (
	("u_a", "w_a"), ("u_a", "x"),
	("u_b", "w_b"), ("u_b", "y"),
	("v_a", "w_a"), ("v_b", "w_b"),
)

H3_TRIANGLE_EDGES = (
	("u_a", "v_a"), ("v_a", "y"), ("y", "u_a"),
	("u_b", "v_b"), ("v_b", "x"), ("x", "u_b"),
)

_SWAP = {
	"u_a": "u_b", "v_a": "v_b", "w_a": "w_b", "t_a": "t_b",
	"u_b": "u_a", "v_b": "v_a", "w_b": "w_a", "t_b": "t_a",
	"x": "y", "y": "x",
}


def side(v: str) -> str:
	"""``"a"``, ``"b"`` or ``"hub"``."""
	if v in ("x", "y"):
		return "hub"
	return v[-1]


def path_edges() -> Tuple[Tuple[str, str], ...]:
	return tuple(zip(PATH, PATH[1:]))


def _assemble(pairs: Sequence[Tuple[str, str]]) -> Multigraph:
	edges: List[Tuple[str, str]] = list(path_edges())
	for p, q in pairs:
		edges.extend([(p, q), (p, q)])
	return Multigraph(VERTICES, tuple(edges))


def build_G3_candidate() -> Multigraph:
	return _assemble(G3_PAIRS)


def build_H3_candidate() -> Multigraph:
	g3 = build_G3_candidate()
	gone = {"t_a", "t_b"}
	edges = [e for e in g3.edges if not gone & set(e)]
	edges.extend(H3_TRIANGLE_EDGES)
	return Multigraph(tuple(v for v in VERTICES if v not in gone), tuple(edges))


def _key(p: str, q: str) -> FrozenSet[str]:
	return frozenset((p, q))


def g3_candidates() -> Iterator[Multigraph]:
	"""Every pair placement meeting the structural constraints, symmetric under a <-> b.

	Constraints: internal path vertices have degree 6 with only their path edges
	simple; ``u_a`` and ``u_b`` reach degree at least 6; no pair joins the two
	sides; multiplicity never exceeds 2; the t pairs are fixed.
	"""
	internal = PATH[1:-1]
	simple = {_key(p, q) for p, q in path_edges()}
	fixed = {_key(p, q) for p, q in T_PAIRS}
	free = [v for v in VERTICES if not v.startswith("t_")]

	slots: List[Tuple[str, str]] = []
	for p, q in combinations(free, 2):
		if _key(p, q) in simple or _key(p, q) in fixed:
			continue
		if {side(p), side(q)} == {"a", "b"}:
			continue
		slots.append((p, q))

	base: Dict[str, int] = {v: 0 for v in VERTICES}
	for p, q in path_edges():
		base[p] += 1
		base[q] += 1
	for p, q in T_PAIRS:
		base[p] += 2
		base[q] += 2

	chosen: List[Tuple[str, str]] = []
	degree = dict(base)

	def complete() -> bool:
		if any(degree[v] != 6 for v in internal):
			return False
		if degree["u_a"] < 6 or degree["u_b"] < 6:
			return False
		keys = {_key(p, q) for p, q in chosen}
		return all(_key(_SWAP[p], _SWAP[q]) in keys for p, q in chosen)

	def extend(i: int) -> Iterator[Tuple[Tuple[str, str], ...]]:
		if i == len(slots):
			if complete():
				yield tuple(chosen)
			return
		p, q = slots[i]
		if all(degree[v] + 2 <= 6 or v in ("u_a", "u_b") for v in (p, q)):
			chosen.append((p, q))
			degree[p] += 2
			degree[q] += 2
			yield from extend(i + 1)
			degree[p] -= 2
			degree[q] -= 2
			chosen.pop()
		yield from extend(i + 1)

	for pairs in extend(0):
		yield _assemble(T_PAIRS + pairs)
