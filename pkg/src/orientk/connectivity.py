from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from sphinx.util import logging

from orientk.flow import FlowNetwork, FlowResult, decompose, max_flow_min_cut, split_path_vertices
from orientk.graph import Multidigraph, Multigraph, require_vertex
from orientk.utils import first_hit, map_ordered


logger = logging.getLogger(__name__)

VertexPath = Tuple[str, ...]

SOURCE = "source"
SINK = "sink"


@dataclass(frozen=True)
class MixedCut:
	"""Vertices ``U`` and edge ids ``F`` whose removal separates a pair."""

	U: FrozenSet[str]
	F: FrozenSet[int]

	@property
	def value(self) -> int:
		return 2 * len(self.U) + len(self.F)

	def to_text(self) -> str:
		verts = " ".join(sorted(self.U))
		edges = " ".join(f"e{e}" for e in sorted(self.F))
		return f"MIXEDCUT U: {verts} F: {edges}".replace("  ", " ").rstrip()


@dataclass(frozen=True)
class Difan:
	paths: Tuple[VertexPath, ...]
	# vertices that may lie on at most one path
	constrained: FrozenSet[str]

	def to_text(self) -> str:
		return "DIFAN " + " / ".join("path: " + " ".join(p) for p in self.paths)


def separator_text(separator: Iterable[str]) -> str:
	return ("SEPARATOR " + " ".join(sorted(separator))).rstrip()


@dataclass(frozen=True)
class DirectedPairResult:
	tail: str
	head: str
	value: int
	difan: Optional[Difan] = None
	separator: Optional[FrozenSet[str]] = None
	# a tail->head arc exists; no vertex set separates the direction
	adjacent: bool = False


@dataclass(frozen=True)
class PairConnectivity:
	u: str
	v: str
	forward: DirectedPairResult
	backward: DirectedPairResult

	@property
	def value(self) -> int:
		return min(self.forward.value, self.backward.value)

	@property
	def deficient(self) -> DirectedPairResult:
		return self.forward if self.forward.value <= self.backward.value else self.backward


@dataclass(frozen=True)
class KConnectivityReport:
	holds: bool
	k: int
	reason: str  # "ok" | "too-few-vertices" | "separator"
	pair: Optional[Tuple[str, str]] = None  # ordered (tail, head) that fails
	separator: Optional[FrozenSet[str]] = None
	pairs_checked: int = 0

	def witness_text(self) -> str:
		if self.reason == "too-few-vertices":
			return f"TOO-FEW-VERTICES k={self.k}"
		if self.separator is not None and self.pair is not None:
			return f"PAIR {self.pair[0]} {self.pair[1]} {separator_text(self.separator)}"
		return ""


@dataclass(frozen=True)
class WeakConnectivityReport:
	holds: bool
	k: int
	reason: str  # "ok" | "too-few-vertices" | "mixed-cut"
	pair: Optional[Tuple[str, str]] = None
	cut: Optional[MixedCut] = None
	pairs_checked: int = 0
	certificates: Mapping[Tuple[str, str], Tuple[VertexPath, ...]] = field(default_factory=dict)

	def witness_text(self) -> str:
		if self.reason == "too-few-vertices":
			return f"TOO-FEW-VERTICES k={self.k}"
		if self.cut is not None and self.pair is not None:
			return f"PAIR {self.pair[0]} {self.pair[1]} {self.cut.to_text()}"
		return ""


def _unbounded(digraph: Multidigraph) -> int:
	return len(digraph.arcs) + len(digraph.vertices)


def _distinct_arcs(arcs: Iterable[Tuple[str, str]]) -> List[Tuple[str, str]]:
	return list(dict.fromkeys(arcs))


# Digraph vertex connectivity ---------------------------------------------------


def _vertex_split_network(digraph: Multidigraph, s: str, t: str) -> FlowNetwork:
	unbounded = _unbounded(digraph)
	net = FlowNetwork(("out", s), ("in", t))
	for v in digraph.vertices:
		if v != s and v != t:
			net.add_arc(("in", v), ("out", v), 1)
	for p, q in _distinct_arcs(digraph.arcs):
		if q == s or p == t:
			continue
		# a direct s->t arc is one dipath without internal vertices
		net.add_arc(("out", p), ("in", q), 1 if (p, q) == (s, t) else unbounded)
	return net


def directed_pair(digraph: Multidigraph, s: str, t: str, *, limit: Optional[int] = None) -> DirectedPairResult:
	"""Internally disjoint s->t dipaths, or a minimum separator when one exists."""
	net = _vertex_split_network(digraph, s, t)
	result = max_flow_min_cut(net, limit=limit)
	adjacent = t in digraph.successors[s]
	separator: Optional[FrozenSet[str]] = None
	if result.complete and not adjacent:
		separator = frozenset(
			net.arcs[i].tail[1] for i in result.cut if net.arcs[i].tail[0] == "in"
		)
		assert len(separator) == result.value, "separator size differs from flow value"
	paths = _vertex_paths(net, result)
	difan = Difan(paths=paths, constrained=frozenset(digraph.vertices) - {s, t})
	return DirectedPairResult(s, t, result.value, difan=difan, separator=separator, adjacent=adjacent)


def _vertex_paths(net: FlowNetwork, result: FlowResult) -> Tuple[VertexPath, ...]:
	out: List[VertexPath] = []
	for labels, amount in decompose(net, result):
		path = split_path_vertices(labels)
		out.extend([path] * amount)
	return tuple(out)


def vertex_conn_pair(digraph: Multidigraph, u: str, v: str) -> PairConnectivity:
	require_vertex(digraph, u)
	require_vertex(digraph, v)
	if u == v:
		raise ValueError("vertex_conn_pair needs two distinct vertices")
	return PairConnectivity(u, v, directed_pair(digraph, u, v), directed_pair(digraph, v, u))


def _cheap_separator(digraph: Multidigraph, k: int) -> Optional[Tuple[str, str, FrozenSet[str]]]:
	# fewer than k in- (out-) neighbours: deleting them cuts the vertex off
	for v in digraph.vertices:
		for side, nbrs in (("in", digraph.predecessors[v]), ("out", digraph.successors[v])):
			if len(nbrs) >= k:
				continue
			other = next(w for w in digraph.vertices if w != v and w not in nbrs)
			pair = (other, v) if side == "in" else (v, other)
			return pair[0], pair[1], frozenset(nbrs)
	return None


def _pair_failure(digraph: Multidigraph, k: int, pair: Tuple[str, str]) -> Optional[Tuple[str, str, FrozenSet[str]]]:
	u, v = pair
	for s, t in ((u, v), (v, u)):
		if t in digraph.successors[s]:
			continue
		res = directed_pair(digraph, s, t, limit=k)
		if res.value < k:
			return s, t, res.separator
	return None


def is_k_connected(digraph: Multidigraph, k: int, *, threads: int = 1) -> KConnectivityReport:
	if k < 1:
		raise ValueError(f"k must be >= 1, got {k}")
	if len(digraph.vertices) <= k:
		return KConnectivityReport(False, k, "too-few-vertices")
	cheap = _cheap_separator(digraph, k)
	if cheap is not None:
		s, t, sep = cheap
		return KConnectivityReport(False, k, "separator", pair=(s, t), separator=sep)
	pairs = list(combinations(digraph.vertices, 2))
	hit = first_hit(lambda pair: _pair_failure(digraph, k, pair), pairs, threads)
	if hit is not None:
		s, t, sep = hit
		logger.debug("orientk: pair %s->%s separated by %s", s, t, sorted(sep))
		return KConnectivityReport(False, k, "separator", pair=(s, t), separator=sep)
	return KConnectivityReport(True, k, "ok", pairs_checked=len(pairs))


def is_set_k_connected(
	digraph: Multidigraph, X: Iterable[str], k: int, *, threads: int = 1
) -> Optional[Tuple[str, str, FrozenSet[str]]]:
	"""``None`` when every pair of ``X`` survives deleting fewer than k vertices of the whole digraph.

	Otherwise the failing ordered pair and its separator.
	"""
	members = list(dict.fromkeys(X))
	for v in members:
		require_vertex(digraph, v)
	pairs = list(combinations(members, 2))
	return first_hit(lambda pair: _pair_failure(digraph, k, pair), pairs, threads)


def is_strongly_connected(digraph: Multidigraph) -> bool:
	if not digraph.vertices:
		raise ValueError("is_strongly_connected needs a nonempty digraph")
	root = digraph.vertices[0]
	n = len(digraph.vertices)
	return (
		len(_reach(root, digraph.successors)) == n
		and len(_reach(root, digraph.predecessors)) == n
	)


def _reach(start: str, step: Mapping[str, Iterable[str]], removed: Iterable[str] = ()) -> set:
	blocked = set(removed)
	seen = {start}
	queue = deque([start])
	while queue:
		v = queue.popleft()
		for w in step[v]:
			if w not in seen and w not in blocked:
				seen.add(w)
				queue.append(w)
	return seen


def separates(digraph: Multidigraph, separator: Iterable[str], tail: str, head: str) -> bool:
	"""True when ``head`` is unreachable from ``tail`` after deleting ``separator``."""
	removed = set(separator)
	if tail in removed or head in removed:
		raise ValueError("separator must not contain the queried pair")
	return head not in _reach(tail, digraph.successors, removed)


def difan(digraph: Multidigraph, X: Iterable[str], Y: Iterable[str], k: int) -> Optional[Difan]:
	"""k dipaths from X to Y, pairwise disjoint on the constrained set U.

	U is ``V - (X | Y)`` for two singletons, ``V - X`` when only X is a
	singleton, ``V - Y`` when only Y is, and ``V`` otherwise.
	"""
	xs = list(dict.fromkeys(X))
	ys = list(dict.fromkeys(Y))
	if not xs or not ys:
		raise ValueError("difan needs nonempty X and Y")
	if set(xs) & set(ys):
		raise ValueError("X and Y must be disjoint")
	for v in xs + ys:
		require_vertex(digraph, v)
	everything = frozenset(digraph.vertices)
	if len(xs) == 1 and len(ys) == 1:
		constrained = everything - set(xs) - set(ys)
	elif len(xs) == 1:
		constrained = everything - set(xs)
	elif len(ys) == 1:
		constrained = everything - set(ys)
	else:
		constrained = everything

	unbounded = _unbounded(digraph) + len(xs) + len(ys)
	net = FlowNetwork(SOURCE, SINK)
	for v in digraph.vertices:
		net.add_arc(("in", v), ("out", v), 1 if v in constrained else unbounded)
	in_x, in_y = set(xs), set(ys)
	for p, q in _distinct_arcs(digraph.arcs):
		if q in in_x or p in in_y:
			continue
		net.add_arc(("out", p), ("in", q), 1)
	for x in xs:
		net.add_arc(SOURCE, ("in", x), unbounded)
	for y in ys:
		net.add_arc(("out", y), SINK, unbounded)

	result = max_flow_min_cut(net, limit=k)
	if result.value < k:
		return None
	paths: List[VertexPath] = []
	for labels, amount in decompose(net, result):
		paths.extend([split_path_vertices(labels)] * amount)
	return Difan(paths=tuple(paths[:k]), constrained=constrained)


def difan_is_valid(fan: Difan, X: Iterable[str], Y: Iterable[str], digraph: Multidigraph) -> bool:
	"""Direct inspection: endpoints, arcs present, constrained vertices used once."""
	xs, ys = set(X), set(Y)
	arcs = set(digraph.arcs)
	used: Dict[str, int] = {}
	for path in fan.paths:
		if len(path) < 2 or path[0] not in xs or path[-1] not in ys:
			return False
		if any((a, b) not in arcs for a, b in zip(path, path[1:])):
			return False
		if len(set(path)) != len(path):
			return False
		for v in path:
			if v in fan.constrained:
				used[v] = used.get(v, 0) + 1
	return all(c <= 1 for c in used.values())


# Weak 2k-connectivity ---------------------------------------------------------


def _mixed_cut_network(graph: Multigraph, u: str, v: str) -> Tuple[FlowNetwork, Dict[int, int]]:
	net = FlowNetwork(("out", u), ("in", v))
	for w in graph.vertices:
		if w != u and w != v:
			net.add_arc(("in", w), ("out", w), 2)
	edge_of: Dict[int, int] = {}
	for eid, (p, q) in enumerate(graph.edges):
		for a, b in ((p, q), (q, p)):
			if b == u or a == v:
				continue
			edge_of[net.add_arc(("out", a), ("in", b), 1)] = eid
	return net, edge_of


def _mixed_cut_flow(graph: Multigraph, u: str, v: str, limit: Optional[int]):
	require_vertex(graph, u)
	require_vertex(graph, v)
	if u == v:
		raise ValueError("min_mixed_cut needs two distinct vertices")
	net, edge_of = _mixed_cut_network(graph, u, v)
	return net, edge_of, max_flow_min_cut(net, limit=limit)


def min_mixed_cut(graph: Multigraph, u: str, v: str) -> MixedCut:
	"""Minimum ``2|U| + |F|`` over mixed cuts separating ``u`` and ``v``.

	Each other vertex becomes an in/out pair joined by a capacity-2 arc, each
	edge copy a pair of opposite unit arcs.
	"""
	net, edge_of, result = _mixed_cut_flow(graph, u, v, None)
	side = result.source_side
	U = frozenset(
		w for w in graph.vertices
		if w not in (u, v) and ("in", w) in side and ("out", w) not in side
	)
	F = frozenset(edge_of[i] for i in result.cut if i in edge_of)
	cut = MixedCut(U, F)
	assert cut.value == result.value, f"mixed cut value {cut.value} != flow {result.value}"
	return cut


def mixed_cut_paths(graph: Multigraph, u: str, v: str, limit: Optional[int] = None) -> Tuple[VertexPath, ...]:
	"""Flow decomposition of the mixed-cut network: each inner vertex on at most two paths."""
	net, _edge_of, result = _mixed_cut_flow(graph, u, v, limit)
	paths: List[VertexPath] = []
	for labels, amount in decompose(net, result):
		paths.extend([split_path_vertices(labels)] * amount)
	return tuple(paths[:limit] if limit is not None else paths)


def mixed_cut_separates(graph: Multigraph, cut: MixedCut, u: str, v: str) -> bool:
	if u in cut.U or v in cut.U:
		raise ValueError("mixed cut must not contain the queried pair")
	adj: Dict[str, List[str]] = {w: [] for w in graph.vertices}
	for eid, (p, q) in enumerate(graph.edges):
		if eid in cut.F or p in cut.U or q in cut.U:
			continue
		adj[p].append(q)
		adj[q].append(p)
	return v not in _reach(u, adj)


def _weak_pair(graph: Multigraph, k: int, certificates: bool, pair: Tuple[str, str]):
	u, v = pair
	net, edge_of, result = _mixed_cut_flow(graph, u, v, 2 * k)
	if result.value < 2 * k:
		return pair, min_mixed_cut(graph, u, v), ()
	if not certificates:
		return pair, None, ()
	paths: List[VertexPath] = []
	for labels, amount in decompose(net, result):
		paths.extend([split_path_vertices(labels)] * amount)
	return pair, None, tuple(paths[: 2 * k])


def _weak_failure(graph: Multigraph, k: int, pair: Tuple[str, str]):
	outcome = _weak_pair(graph, k, False, pair)
	return outcome if outcome[1] is not None else None


def is_weakly_2k_connected(
	graph: Multigraph,
	k: int,
	*,
	threads: int = 1,
	certificates: bool = False,
) -> WeakConnectivityReport:
	if k < 1:
		raise ValueError(f"k must be >= 1, got {k}")
	if len(graph.vertices) <= k:
		return WeakConnectivityReport(False, k, "too-few-vertices")
	for w in graph.vertices:
		inc = graph.incidence[w]
		if len(inc) < 2 * k:
			other = next(x for x in graph.vertices if x != w)
			return WeakConnectivityReport(
				False, k, "mixed-cut", pair=(w, other), cut=MixedCut(frozenset(), frozenset(inc))
			)
	pairs = list(combinations(graph.vertices, 2))
	outcomes = []
	if certificates:
		outcomes = map_ordered(lambda p: _weak_pair(graph, k, True, p), pairs, threads)
		failed = next((o for o in outcomes if o[1] is not None), None)
	else:
		failed = first_hit(lambda p: _weak_failure(graph, k, p), pairs, threads)
	if failed is not None:
		pair, cut, _ = failed
		logger.debug("orientk: pair %s-%s has mixed cut of value %d", pair[0], pair[1], cut.value)
		return WeakConnectivityReport(False, k, "mixed-cut", pair=pair, cut=cut, pairs_checked=len(pairs))
	logger.info("orientk: %d pairs weakly %d-connected", len(pairs), 2 * k)
	certs = {o[0]: o[2] for o in outcomes}
	return WeakConnectivityReport(True, k, "ok", pairs_checked=len(pairs), certificates=certs)


# Exhaustive oracles -----------------------------------------------------------


def brute_force_mixed_cut(graph: Multigraph, u: str, v: str, bound: int) -> Optional[MixedCut]:
	"""Smallest mixed cut of value ``< bound`` by enumeration, or ``None``."""
	others = [w for w in graph.vertices if w not in (u, v)]
	for value in range(max(bound, 0)):
		for usize in range(value // 2 + 1):
			fsize = value - 2 * usize
			for U in combinations(others, usize):
				alive = [e for e, (p, q) in enumerate(graph.edges) if p not in U and q not in U]
				if fsize > len(alive):
					continue
				for F in combinations(alive, fsize):
					cut = MixedCut(frozenset(U), frozenset(F))
					if mixed_cut_separates(graph, cut, u, v):
						return cut
	return None


def brute_force_separator(digraph: Multidigraph, u: str, v: str, bound: int) -> Optional[FrozenSet[str]]:
	"""Smallest vertex set of size ``< bound`` separating u, v in either direction."""
	others = [w for w in digraph.vertices if w not in (u, v)]
	for size in range(max(bound, 0)):
		if size > len(others):
			break
		for S in combinations(others, size):
			if separates(digraph, S, u, v) or separates(digraph, S, v, u):
				return frozenset(S)
	return None
