"""Gadget reduction from Not-All-Equal satisfiability to k-connected reorientation.

``encode`` builds the digraph together with a :class:`GadgetMap` recording
the role of every vertex and arc. Each literal occurrence (a *slot*) gets its
own gadget ``u, t, u1, u2, u3, vc``; ``u1``/``u2``/``u3`` stand for the primed
copies of ``u``. Assignments correspond to reorientations that reverse, per
false variable, its circuit and its special arcs.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, replace
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sphinx.util import logging

from orientk.graph import Multidigraph, Multigraph, reorient, reversed_arcs, underlying
from orientk.nae import Literal, NaeInstance


logger = logging.getLogger(__name__)

SLOT_ROLES = ("u", "t", "u1", "u2", "u3", "vc")


class ReductionError(ValueError):
	"""Gadget structure violated, or an assignment/reorientation does not fit the map."""


@dataclass(frozen=True)
class Slot:
	clause: int
	position: int
	variable: str
	positive: bool
	u: str
	t: str
	u1: str
	u2: str
	u3: str
	vc: str
	special: int  # arc id of e between w and u
	f: int  # arc id of f between t and u1

	@property
	def U(self) -> Tuple[str, str, str, str]:
		return (self.u, self.u1, self.u2, self.u3)


@dataclass(frozen=True)
class GadgetMap:
	k: int
	vertices: Tuple[str, ...]
	arcs: Tuple[Tuple[str, str], ...]
	roles: Dict[str, str]
	L: Tuple[str, ...]
	M: Tuple[str, ...]
	m: str
	l: str
	N: Tuple[str, ...]
	W: Tuple[str, ...]
	variables: Tuple[str, ...]
	clauses: Tuple[Tuple[str, ...], ...]
	slots: Tuple[Slot, ...]
	delta: Dict[str, Tuple[int, ...]]
	pairs: Tuple[int, ...]
	F: Tuple[int, ...] = ()

	def digraph(self) -> Multidigraph:
		return Multidigraph(self.vertices, self.arcs)

	def slots_of(self, variable: str) -> List[Slot]:
		return [s for s in self.slots if s.variable == variable]

	def clause_slots(self, clause: int) -> List[Slot]:
		return [s for s in self.slots if s.clause == clause]

	def variable_arcs(self, variable: str) -> Tuple[int, ...]:
		"""The circuit of ``variable`` (f arcs included) and its special arcs."""
		if variable not in self.delta:
			raise KeyError(f"unknown variable {variable!r}")
		return self.delta[variable] + tuple(s.special for s in self.slots_of(variable))

	def to_json(self) -> str:
		doc = asdict(self)
		doc["arcs"] = [list(a) for a in self.arcs]
		return json.dumps(doc, indent=1, sort_keys=True)

	@classmethod
	def from_json(cls, text: str) -> "GadgetMap":
		try:
			doc = json.loads(text)
			return cls(
				k=int(doc["k"]),
				vertices=tuple(doc["vertices"]),
				arcs=tuple((p, q) for p, q in doc["arcs"]),
				roles=dict(doc["roles"]),
				L=tuple(doc["L"]),
				M=tuple(doc["M"]),
				m=doc["m"],
				l=doc["l"],
				N=tuple(doc["N"]),
				W=tuple(doc["W"]),
				variables=tuple(doc["variables"]),
				clauses=tuple(tuple(c) for c in doc["clauses"]),
				slots=tuple(Slot(**s) for s in doc["slots"]),
				delta={v: tuple(ids) for v, ids in doc["delta"].items()},
				pairs=tuple(doc["pairs"]),
				F=tuple(doc.get("F", ())),
			)
		except (KeyError, TypeError, ValueError) as exc:
			raise ReductionError(f"invalid gadget map: {exc}") from exc


class _ArcList:
	def __init__(self) -> None:
		self.arcs: List[Tuple[str, str]] = []
		self.pair_ids: List[int] = []
		self._paired: set = set()

	def add(self, p: str, q: str) -> int:
		self.arcs.append((p, q))
		return len(self.arcs) - 1

	def pair(self, p: str, q: str) -> None:
		if (p, q) in self._paired:
			return
		self._paired.update({(p, q), (q, p)})
		self.pair_ids.append(self.add(p, q))
		self.pair_ids.append(self.add(q, p))

	def complete(self, vertices: Sequence[str]) -> None:
		for i, p in enumerate(vertices):
			for q in vertices[i + 1:]:
				self.pair(p, q)


def _slot_label(role: str, clause: int, position: int, variable: str) -> str:
	return f"{role}.C{clause}.{position}.{variable}"


def encode(instance: NaeInstance, k: int) -> Tuple[Multidigraph, GadgetMap]:
	if k < 3:
		raise ValueError(f"the reduction needs k >= 3, got {k}")
	L = tuple(f"L.{i}" for i in range(k - 1))
	M = tuple(f"M.{i}" for i in range(k - 2))
	m, l = M[0], L[0]
	var_vertex = {x: f"v.{x}" for x in instance.variables}

	vertices: List[str] = list(L) + list(M) + list(var_vertex.values())
	roles: Dict[str, str] = {v: "L" for v in L}
	roles.update({v: "M" for v in M})
	roles.update({v: "v" for v in var_vertex.values()})

	labels: List[Tuple[int, int, Literal, Dict[str, str]]] = []
	W: List[str] = []
	for ci, clause in enumerate(instance.clauses):
		w = f"w.C{ci}"
		W.append(w)
		vertices.append(w)
		roles[w] = "w"
		for pos, lit in enumerate(clause):
			names = {r: _slot_label(r, ci, pos, lit.variable) for r in SLOT_ROLES}
			vertices.extend(names.values())
			roles.update({name: r for r, name in names.items()})
			labels.append((ci, pos, lit, names))

	N = L + M + tuple(var_vertex.values()) + tuple(names["vc"] for _, _, _, names in labels)
	arcs = _ArcList()
	arcs.complete(N)
	for w in W:
		arcs.complete(L + (w,))
	for _ci, _pos, _lit, s in labels:
		arcs.complete(M + (s["u"], s["u2"], s["u3"]))
		for p, q in ((s["vc"], s["t"]), (s["t"], s["u3"]), (s["u3"], s["u1"]), (s["u1"], s["u2"])):
			arcs.pair(p, q)
		for other in M[1:]:
			arcs.pair(s["t"], other)
			arcs.pair(s["u1"], other)

	_require_degree(arcs.arcs, (s[r] for *_, s in labels for r in ("t", "u1")), 2 * k - 2, "before f and circuit arcs")

	special: Dict[Tuple[int, int], int] = {}
	for ci, pos, lit, s in labels:
		w = W[ci]
		special[(ci, pos)] = arcs.add(w, s["u"]) if lit.positive else arcs.add(s["u"], w)

	f_ids: Dict[Tuple[int, int], int] = {}
	ends: Dict[Tuple[int, int], Tuple[str, str]] = {}
	for ci, pos, lit, s in labels:
		tail, head = (s["t"], s["u1"]) if lit.positive else (s["u1"], s["t"])
		ends[(ci, pos)] = (tail, head)
		f_ids[(ci, pos)] = arcs.add(tail, head)

	delta: Dict[str, Tuple[int, ...]] = {}
	for x in instance.variables:
		keys = [(ci, pos) for ci, pos, lit, _ in labels if lit.variable == x]
		circuit: List[int] = []
		prev = var_vertex[x]
		for key in keys:
			tail, head = ends[key]
			circuit.append(arcs.add(prev, tail))
			circuit.append(f_ids[key])
			prev = head
		circuit.append(arcs.add(prev, var_vertex[x]))
		delta[x] = tuple(circuit)

	slots = tuple(
		Slot(
			clause=ci,
			position=pos,
			variable=lit.variable,
			positive=lit.positive,
			special=special[(ci, pos)],
			f=f_ids[(ci, pos)],
			**s,
		)
		for ci, pos, lit, s in labels
	)
	gmap = GadgetMap(
		k=k,
		vertices=tuple(vertices),
		arcs=tuple(arcs.arcs),
		roles=roles,
		L=L,
		M=M,
		m=m,
		l=l,
		N=N,
		W=tuple(W),
		variables=instance.variables,
		clauses=tuple(tuple(str(lit) for lit in c) for c in instance.clauses),
		slots=slots,
		delta=delta,
		pairs=tuple(arcs.pair_ids),
	)
	digraph = gmap.digraph()
	check_degree_ledger(digraph, gmap)
	logger.info(
		"orientk: encoded %d clauses into %d vertices and %d arcs (k=%d)",
		len(instance.clauses), len(vertices), len(arcs.arcs), k,
	)
	return digraph, gmap


def _undirected_degrees(arcs: Iterable[Tuple[str, str]]) -> Dict[str, int]:
	deg: Dict[str, int] = {}
	for p, q in arcs:
		deg[p] = deg.get(p, 0) + 1
		deg[q] = deg.get(q, 0) + 1
	return deg


def _require_degree(arcs: Sequence[Tuple[str, str]], vertices: Iterable[str], expected: int, when: str) -> None:
	deg = _undirected_degrees(arcs)
	for v in vertices:
		if deg.get(v, 0) != expected:
			raise ReductionError(f"{v} has degree {deg.get(v, 0)} {when}, expected {expected}")


def _require_map(digraph: Multidigraph, gmap: GadgetMap) -> None:
	if digraph.vertices != gmap.vertices or len(digraph.arcs) != len(gmap.arcs):
		raise ReductionError("digraph does not match the gadget map")


def check_degree_ledger(digraph: Multidigraph, gmap: GadgetMap) -> bool:
	"""Every t and u1 vertex has degree 2k made of k-1 antiparallel pairs plus its f and circuit arcs."""
	_require_map(digraph, gmap)
	k = gmap.k
	deg = _undirected_degrees(digraph.arcs)
	pair_ends: Dict[str, int] = {}
	for aid in gmap.pairs:
		p, q = digraph.arcs[aid]
		pair_ends[p] = pair_ends.get(p, 0) + 1
		pair_ends[q] = pair_ends.get(q, 0) + 1
	for slot in gmap.slots:
		for v in (slot.t, slot.u1):
			if deg[v] != 2 * k:
				raise ReductionError(f"{v} has degree {deg[v]}, expected {2 * k}")
			if pair_ends.get(v, 0) != 2 * (k - 1):
				raise ReductionError(f"{v} lies on {pair_ends.get(v, 0) // 2} pairs, expected {k - 1}")
	return True


def check_boundary(digraph: Multidigraph, gmap: GadgetMap) -> bool:
	"""With M and t removed, exactly one arc enters and one arc leaves each slot's U set."""
	_require_map(digraph, gmap)
	for slot in gmap.slots:
		inside = set(slot.U)
		removed = set(gmap.M) | {slot.t}
		entering = leaving = 0
		for p, q in digraph.arcs:
			if p in removed or q in removed or (p in inside) == (q in inside):
				continue
			if q in inside:
				entering += 1
			else:
				leaving += 1
		if entering != 1 or leaving != 1:
			raise ReductionError(
				f"slot C{slot.clause}.{slot.position}: {entering} arcs enter and {leaving} leave its U set"
			)
	return True


def star_condition(digraph: Multidigraph, gmap: GadgetMap, clause: int) -> bool:
	"""The clause hub has an outgoing and an incoming special arc."""
	_require_map(digraph, gmap)
	if not 0 <= clause < len(gmap.W):
		raise ValueError(f"clause index {clause} out of range")
	w = gmap.W[clause]
	leaving = [digraph.arcs[s.special][0] == w for s in gmap.clause_slots(clause)]
	return any(leaving) and not all(leaving)


def eulerize(digraph: Multidigraph, gmap: GadgetMap) -> Tuple[Multidigraph, GadgetMap]:
	"""Add u->m per slot, plus m->l and l->w for three-literal clauses."""
	_require_map(digraph, gmap)
	if gmap.F:
		raise ReductionError("digraph is already eulerized")
	arcs = list(digraph.arcs)
	F: List[int] = []
	for ci, w in enumerate(gmap.W):
		slots = gmap.clause_slots(ci)
		for slot in slots:
			arcs.append((slot.u, gmap.m))
			F.append(len(arcs) - 1)
		if len(slots) == 3:
			arcs.append((gmap.m, gmap.l))
			arcs.append((gmap.l, w))
			F.extend((len(arcs) - 2, len(arcs) - 1))
	odd = sorted(v for v, d in _undirected_degrees(arcs).items() if d % 2)
	if odd:
		raise ReductionError(f"odd degree after eulerization: {', '.join(odd)}")
	out = replace(gmap, arcs=tuple(arcs), F=tuple(F))
	logger.debug("orientk: eulerization added %d arcs", len(F))
	return out.digraph(), out


def natural_reorientation(digraph: Multidigraph, gmap: GadgetMap, assignment: Mapping[str, bool]) -> Multidigraph:
	"""Reverse the circuit and special arcs of every false variable."""
	_require_map(digraph, gmap)
	missing = [x for x in gmap.variables if x not in assignment]
	if missing:
		raise ReductionError(f"assignment misses variables: {', '.join(missing)}")
	flip: List[int] = []
	for x in gmap.variables:
		if not assignment[x]:
			flip.extend(gmap.variable_arcs(x))
	return reorient(digraph, flip)


def _variable_states(digraph: Multidigraph, gmap: GadgetMap, other: Multidigraph) -> Optional[Dict[str, bool]]:
	_require_map(digraph, gmap)
	try:
		flipped = set(reversed_arcs(digraph, other))
	except ValueError as exc:
		raise ReductionError(str(exc)) from exc
	if flipped & set(gmap.pairs):
		return None
	states: Dict[str, bool] = {}
	for x in gmap.variables:
		marks = {aid in flipped for aid in gmap.variable_arcs(x)}
		if len(marks) != 1:
			return None
		states[x] = not marks.pop()
	return states


def is_consistent(digraph: Multidigraph, gmap: GadgetMap, other: Multidigraph) -> bool:
	"""Pairs preserved and each variable's arcs uniformly preserved or reversed; F is free."""
	return _variable_states(digraph, gmap, other) is not None


def decode(gmap: GadgetMap, other: Multidigraph) -> Dict[str, bool]:
	states = _variable_states(gmap.digraph(), gmap, other)
	if states is None:
		raise ReductionError("reorientation is not consistent with the gadget map")
	return states


def build_H3_prime() -> Tuple[Multigraph, GadgetMap]:
	"""Underlying graph of the eulerized encoding of the single clause (x, x) at k = 3."""
	instance = NaeInstance.from_clauses([["x", "x"]])
	digraph, gmap = eulerize(*encode(instance, 3))
	graph, _ = underlying(digraph)
	return graph, gmap
