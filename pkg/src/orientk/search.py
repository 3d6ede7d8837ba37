from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from sphinx.util import logging

from orientk.connectivity import is_k_connected, is_strongly_connected, is_weakly_2k_connected
from orientk.graph import (
	Direction,
	Multidigraph,
	Multigraph,
	PartialOrientation,
	delete_vertices,
	orient,
)
from orientk.nae import NaeInstance, assignments, nae_satisfied
from orientk.reduction import encode, eulerize as eulerize_encoding, natural_reorientation


logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**7
DEFAULT_BRANCH_CAP = 64
# exhaustive separator enumeration only when C(|V|, k-1) stays below this
SMALL_SEPARATOR_SETS = 5000
MAX_EQUIVALENCE_VARIABLES = 8


@dataclass(frozen=True)
class Contradiction:
	vertex: str
	reason: str

	def __str__(self) -> str:
		return f"contradiction at {self.vertex}: {self.reason}"


class Status(str, Enum):
	FOUND = "found"
	REFUTED_EXHAUSTIVE = "refuted-exhaustive"
	REFUTED_BY_SEPARATOR = "refuted-by-separator"
	UNKNOWN = "unknown"


@dataclass(frozen=True)
class SearchOutcome:
	status: Status
	orientation: Optional[PartialOrientation] = None
	branches: Tuple[Tuple[PartialOrientation, FrozenSet[str]], ...] = ()
	nodes: int = 0
	evidence: str = ""

	@property
	def refuted(self) -> bool:
		return self.status in (Status.REFUTED_EXHAUSTIVE, Status.REFUTED_BY_SEPARATOR)


Forced = Union[PartialOrientation, Contradiction]


# Forcing ---------------------------------------------------------------------


def _toward(graph: Multigraph, eid: int, head: str) -> Direction:
	return Direction.FORWARD if graph.edges[eid][1] == head else Direction.REVERSED


def _flip(state: Direction) -> Direction:
	return Direction.REVERSED if state is Direction.FORWARD else Direction.FORWARD


def _by_neighbor(graph: Multigraph, v: str) -> Dict[str, List[int]]:
	groups: Dict[str, List[int]] = {}
	for eid in graph.incidence[v]:
		groups.setdefault(graph.other(eid, v), []).append(eid)
	return groups


def propagate_forcing(graph: Multigraph, k: int, p: Optional[PartialOrientation] = None) -> Forced:
	"""Fixpoint of the degree-2k forcing rules, or the first contradiction met.

	At a vertex of degree 2k the in- and out-degree are both k and in-neighbours
	are distinct, so a parallel pair runs in opposite directions, more parallel
	copies are impossible, and k decided ends on one side fix the rest. Every
	vertex needs k distinct possible in- and out-neighbours; when exactly k are
	left, each of them must supply an arc.
	"""
	if k < 1:
		raise ValueError(f"k must be >= 1, got {k}")
	if p is None:
		p = PartialOrientation.undecided(len(graph.edges))
	if len(p) != len(graph.edges):
		raise ValueError(f"orientation has {len(p)} entries, graph has {len(graph.edges)} edges")
	states = list(p.states)
	groups = {v: _by_neighbor(graph, v) for v in graph.vertices}
	tight = {v for v in graph.vertices if len(graph.incidence[v]) == 2 * k}

	def is_into(eid: int, v: str) -> bool:
		state = states[eid]
		return (graph.edges[eid][1] == v) == (state is Direction.FORWARD)

	def force(eid: int, state: Direction, v: str, why: str) -> Optional[Contradiction]:
		nonlocal changed
		current = states[eid]
		if current is Direction.UNDECIDED:
			states[eid] = state
			changed = True
			return None
		if current is not state:
			return Contradiction(v, f"edge {eid} {why}")
		return None

	changed = True
	while changed:
		changed = False
		for v in graph.vertices:
			undecided = [e for e in graph.incidence[v] if states[e] is Direction.UNDECIDED]
			ins = sum(1 for e in graph.incidence[v] if states[e] is not Direction.UNDECIDED and is_into(e, v))
			outs = len(graph.incidence[v]) - len(undecided) - ins

			maybe_in: Dict[str, List[int]] = {}
			maybe_out: Dict[str, List[int]] = {}
			for u, eids in groups[v].items():
				for e in eids:
					if states[e] is Direction.UNDECIDED:
						maybe_in.setdefault(u, [])
						maybe_out.setdefault(u, [])
					elif is_into(e, v):
						maybe_in.setdefault(u, []).append(e)
					else:
						maybe_out.setdefault(u, []).append(e)
			if len(maybe_in) < k:
				return Contradiction(v, f"only {len(maybe_in)} possible in-neighbours")
			if len(maybe_out) < k:
				return Contradiction(v, f"only {len(maybe_out)} possible out-neighbours")

			for side, possible in (("in", maybe_in), ("out", maybe_out)):
				if len(possible) != k:
					continue
				for u, decided in possible.items():
					if decided:
						continue
					open_edges = [e for e in groups[v][u] if states[e] is Direction.UNDECIDED]
					if len(open_edges) == 1:
						e = open_edges[0]
						target = _toward(graph, e, v) if side == "in" else _toward(graph, e, u)
						bad = force(e, target, v, f"must supply a distinct {side}-neighbour")
						if bad:
							return bad

			if v not in tight:
				continue
			if ins > k or outs > k:
				return Contradiction(v, f"degree {2 * k} vertex with {ins} in and {outs} out")
			for u, eids in groups[v].items():
				if len(eids) > 2:
					return Contradiction(v, f"{len(eids)} parallel edges to {u}")
				if len(eids) != 2:
					continue
				e1, e2 = eids
				s1, s2 = states[e1], states[e2]
				if s1 is Direction.UNDECIDED and s2 is Direction.UNDECIDED:
					# the two copies are interchangeable
					force(e1, Direction.FORWARD, v, "pair")
					s1 = Direction.FORWARD
				if s1 is Direction.UNDECIDED:
					e1, e2, s1, s2 = e2, e1, s2, s1
				opposite = _flip(s1) if graph.edges[e1] == graph.edges[e2] else s1
				bad = force(e2, opposite, v, f"and edge {e1} must run in opposite directions")
				if bad:
					return bad
			if ins == k or outs == k:
				for e in undecided:
					if states[e] is not Direction.UNDECIDED:
						continue
					target = _toward(graph, e, graph.other(e, v)) if ins == k else _toward(graph, e, v)
					force(e, target, v, "balance")
	return PartialOrientation(tuple(states))


def optimistic_digraph(graph: Multigraph, p: PartialOrientation) -> Multidigraph:
	"""Decided edges as their arcs, undecided edges as both arcs."""
	arcs: List[Tuple[str, str]] = []
	for eid, (a, b) in enumerate(graph.edges):
		state = p[eid]
		if state is Direction.UNDECIDED:
			arcs.extend(((a, b), (b, a)))
		else:
			arcs.append(p.arc(graph, eid))
	return Multidigraph(graph.vertices, tuple(arcs))


def _undecided_load(graph: Multigraph, p: PartialOrientation, vertices: Iterable[str]) -> Optional[int]:
	"""Undecided edge picked at the vertex with fewest undecided ends; ties by lowest edge id."""
	best: Optional[Tuple[int, int]] = None
	for v in vertices:
		open_edges = [e for e in graph.incidence[v] if p[e] is Direction.UNDECIDED]
		if not open_edges:
			continue
		key = (len(open_edges), min(open_edges))
		if best is None or key < best:
			best = key
	return None if best is None else best[1]


def forcing_branches(
	graph: Multigraph,
	k: int,
	start: Optional[PartialOrientation] = None,
	*,
	cap: int = DEFAULT_BRANCH_CAP,
) -> Optional[List[PartialOrientation]]:
	"""Propagated states covering every completion, with all degree-2k vertices decided.

	Contradicting branches are dropped. ``None`` when more than ``cap`` branches
	would be needed.
	"""
	first = propagate_forcing(graph, k, start)
	if isinstance(first, Contradiction):
		return []
	tight = [v for v in graph.vertices if len(graph.incidence[v]) == 2 * k]
	done: List[PartialOrientation] = []
	stack = [first]
	while stack:
		state = stack.pop()
		eid = _undecided_load(graph, state, tight)
		if eid is None:
			done.append(state)
			if len(done) > cap:
				return None
			continue
		for choice in (Direction.REVERSED, Direction.FORWARD):
			child = propagate_forcing(graph, k, state.with_states({eid: choice}))
			if not isinstance(child, Contradiction):
				stack.append(child)
		if len(done) + len(stack) > cap:
			return None
	logger.debug("orientk: forcing left %d branches", len(done))
	return done


# Refutation ------------------------------------------------------------------


def refute_with_separator(graph: Multigraph, k: int, p: PartialOrientation, S: Iterable[str]) -> bool:
	"""True when the optimistic digraph minus ``S`` is not strongly connected.

	Every completion of ``p`` is a subdigraph of the optimistic digraph, so a
	true answer rules out all of them.
	"""
	removed = frozenset(S)
	if len(removed) >= k:
		raise ValueError(f"separator must have fewer than {k} vertices, got {len(removed)}")
	rest = delete_vertices(optimistic_digraph(graph, p), removed)
	if len(rest.vertices) < 2:
		return False
	return not is_strongly_connected(rest)


def find_separator(
	graph: Multigraph,
	k: int,
	p: PartialOrientation,
	hints: Sequence[Iterable[str]] = (),
	*,
	threads: int = 1,
) -> Optional[FrozenSet[str]]:
	"""A vertex set of size < k refuting every completion of ``p``, if one is found."""
	known = set(graph.vertices)
	for hint in hints:
		S = frozenset(hint)
		if len(S) < k and S <= known and refute_with_separator(graph, k, p, S):
			return S
	n = len(graph.vertices)
	if n <= k:
		return None
	if comb(n, k - 1) <= SMALL_SEPARATOR_SETS:
		for size in range(k):
			for S in combinations(graph.vertices, size):
				if refute_with_separator(graph, k, p, S):
					return frozenset(S)
		return None
	report = is_k_connected(optimistic_digraph(graph, p), k, threads=threads)
	if report.separator is not None and refute_with_separator(graph, k, p, report.separator):
		return report.separator
	return None


# Search ----------------------------------------------------------------------


def _precheck(graph: Multigraph, k: int, threads: int) -> Optional[str]:
	if len(graph.vertices) <= k:
		return f"TOO-FEW-VERTICES k={k}"
	for v in graph.vertices:
		if len(graph.incidence[v]) < 2 * k:
			return f"DEGREE {v} {len(graph.incidence[v])} < {2 * k}"
	weak = is_weakly_2k_connected(graph, k, threads=threads)
	if not weak.holds:
		return weak.witness_text()
	return None


def search(
	graph: Multigraph,
	k: int,
	budget: int = DEFAULT_BUDGET,
	*,
	threads: int = 1,
	start: Optional[PartialOrientation] = None,
) -> SearchOutcome:
	"""Depth-first search for a k-connected orientation, interleaved with forcing."""
	if budget < 1:
		raise ValueError(f"budget must be >= 1, got {budget}")
	failed = _precheck(graph, k, threads)
	if failed is not None:
		return SearchOutcome(Status.REFUTED_EXHAUSTIVE, evidence=failed)

	nodes = 0
	stack: List[PartialOrientation] = [start or PartialOrientation.undecided(len(graph.edges))]
	while stack:
		if nodes >= budget:
			logger.info("orientk: search stopped after %d nodes", nodes)
			return SearchOutcome(Status.UNKNOWN, nodes=nodes, evidence=f"budget {budget} exhausted")
		nodes += 1
		state = propagate_forcing(graph, k, stack.pop())
		if isinstance(state, Contradiction):
			continue
		if state.is_total:
			if is_k_connected(orient(graph, state), k, threads=threads).holds:
				logger.info("orientk: search found an orientation after %d nodes", nodes)
				return SearchOutcome(Status.FOUND, orientation=state, nodes=nodes)
			continue
		if not is_k_connected(optimistic_digraph(graph, state), k, threads=threads).holds:
			continue
		eid = _undecided_load(graph, state, graph.vertices)
		# pushed last, tried first
		stack.append(state.with_states({eid: Direction.REVERSED}))
		stack.append(state.with_states({eid: Direction.FORWARD}))
	logger.info("orientk: search exhausted after %d nodes", nodes)
	return SearchOutcome(Status.REFUTED_EXHAUSTIVE, nodes=nodes, evidence="search tree exhausted")


# Reduction check -------------------------------------------------------------


@dataclass(frozen=True)
class EquivalenceReport:
	k: int
	assignments: int
	nae_satisfying: int
	connected: int
	mismatches: Tuple[Dict[str, bool], ...] = field(default_factory=tuple)

	@property
	def holds(self) -> bool:
		return not self.mismatches

	def __bool__(self) -> bool:
		return self.holds


def check_reduction_equivalence(
	instance: NaeInstance,
	k: int,
	*,
	eulerize: bool = False,
	threads: int = 1,
) -> EquivalenceReport:
	"""For every assignment: NAE-satisfied iff its natural reorientation is k-connected."""
	if len(instance.variables) > MAX_EQUIVALENCE_VARIABLES:
		raise ValueError(
			f"equivalence check limited to {MAX_EQUIVALENCE_VARIABLES} variables, got {len(instance.variables)}"
		)
	digraph, gmap = encode(instance, k)
	if eulerize:
		digraph, gmap = eulerize_encoding(digraph, gmap)
	total = nae = connected = 0
	mismatches: List[Dict[str, bool]] = []
	for sigma in assignments(instance):
		total += 1
		satisfied = nae_satisfied(instance, sigma)
		holds = is_k_connected(natural_reorientation(digraph, gmap, sigma), k, threads=threads).holds
		nae += satisfied
		connected += holds
		if satisfied != holds:
			mismatches.append(sigma)
	logger.info(
		"orientk: %d assignments, %d NAE-satisfying, %d give %d-connected reorientations",
		total, nae, connected, k,
	)
	return EquivalenceReport(k, total, nae, connected, tuple(mismatches))
