from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union


Pair = Tuple[str, str]


class GraphFormatError(ValueError):
	"""Malformed graph or orientation data (text or constructor input)."""


def _validate(vertices: Sequence[str], pairs: Sequence[Pair], what: str) -> None:
	seen: set[str] = set()
	for label in vertices:
		if not isinstance(label, str) or not label or any(ch.isspace() for ch in label) or label.startswith("#"):
			raise GraphFormatError(f"invalid vertex label {label!r}")
		if label in seen:
			raise GraphFormatError(f"duplicate vertex {label!r}")
		seen.add(label)
	for idx, (p, q) in enumerate(pairs):
		for end in (p, q):
			if end not in seen:
				raise GraphFormatError(f"{what} {idx} uses undeclared vertex {end!r}")
		if p == q:
			raise GraphFormatError(f"{what} {idx} is a self-loop at {p!r}")


@dataclass(frozen=True)
class Multigraph:
	"""Undirected multigraph; an edge id is its position in ``edges``."""

	vertices: Tuple[str, ...]
	edges: Tuple[Pair, ...]

	def __post_init__(self) -> None:
		object.__setattr__(self, "vertices", tuple(self.vertices))
		object.__setattr__(self, "edges", tuple((str(p), str(q)) for p, q in self.edges))
		_validate(self.vertices, self.edges, "edge")

	@cached_property
	def position(self) -> Dict[str, int]:
		return {v: i for i, v in enumerate(self.vertices)}

	@cached_property
	def incidence(self) -> Dict[str, Tuple[int, ...]]:
		"""Edge ids incident to each vertex, in id order."""
		inc: Dict[str, List[int]] = {v: [] for v in self.vertices}
		for eid, (p, q) in enumerate(self.edges):
			inc[p].append(eid)
			inc[q].append(eid)
		return {v: tuple(ids) for v, ids in inc.items()}

	def other(self, eid: int, v: str) -> str:
		p, q = self.edges[eid]
		return q if v == p else p

	def neighbors(self, v: str) -> Dict[str, int]:
		"""Neighbour -> multiplicity."""
		require_vertex(self, v)
		out: Dict[str, int] = defaultdict(int)
		for eid in self.incidence[v]:
			out[self.other(eid, v)] += 1
		return dict(out)


@dataclass(frozen=True)
class Multidigraph:
	"""Directed multigraph; an arc id is its position in ``arcs``."""

	vertices: Tuple[str, ...]
	arcs: Tuple[Pair, ...]

	def __post_init__(self) -> None:
		object.__setattr__(self, "vertices", tuple(self.vertices))
		object.__setattr__(self, "arcs", tuple((str(p), str(q)) for p, q in self.arcs))
		_validate(self.vertices, self.arcs, "arc")

	@cached_property
	def position(self) -> Dict[str, int]:
		return {v: i for i, v in enumerate(self.vertices)}

	@cached_property
	def out_arcs(self) -> Dict[str, Tuple[int, ...]]:
		out: Dict[str, List[int]] = {v: [] for v in self.vertices}
		for aid, (p, _q) in enumerate(self.arcs):
			out[p].append(aid)
		return {v: tuple(ids) for v, ids in out.items()}

	@cached_property
	def in_arcs(self) -> Dict[str, Tuple[int, ...]]:
		inc: Dict[str, List[int]] = {v: [] for v in self.vertices}
		for aid, (_p, q) in enumerate(self.arcs):
			inc[q].append(aid)
		return {v: tuple(ids) for v, ids in inc.items()}

	@cached_property
	def successors(self) -> Dict[str, frozenset]:
		return {v: frozenset(self.arcs[a][1] for a in ids) for v, ids in self.out_arcs.items()}

	@cached_property
	def predecessors(self) -> Dict[str, frozenset]:
		return {v: frozenset(self.arcs[a][0] for a in ids) for v, ids in self.in_arcs.items()}


Graph = Union[Multigraph, Multidigraph]


class Direction(str, Enum):
	FORWARD = "+"
	REVERSED = "-"
	UNDECIDED = "?"


@dataclass(frozen=True)
class PartialOrientation:
	"""Per-edge direction relative to the stored endpoint order of each edge."""

	states: Tuple[Direction, ...]

	def __post_init__(self) -> None:
		object.__setattr__(self, "states", tuple(Direction(s) for s in self.states))

	@classmethod
	def undecided(cls, size: int) -> "PartialOrientation":
		return cls((Direction.UNDECIDED,) * size)

	@classmethod
	def all_forward(cls, size: int) -> "PartialOrientation":
		return cls((Direction.FORWARD,) * size)

	def __len__(self) -> int:
		return len(self.states)

	def __getitem__(self, eid: int) -> Direction:
		return self.states[eid]

	@property
	def is_total(self) -> bool:
		return Direction.UNDECIDED not in self.states

	def decided(self) -> List[int]:
		return [i for i, s in enumerate(self.states) if s is not Direction.UNDECIDED]

	def with_states(self, updates: Dict[int, Direction]) -> "PartialOrientation":
		states = list(self.states)
		for eid, state in updates.items():
			states[eid] = Direction(state)
		return PartialOrientation(tuple(states))

	def arc(self, graph: Multigraph, eid: int) -> Optional[Pair]:
		"""The arc chosen for edge ``eid`` or ``None`` while undecided."""
		p, q = graph.edges[eid]
		state = self.states[eid]
		if state is Direction.FORWARD:
			return (p, q)
		if state is Direction.REVERSED:
			return (q, p)
		return None


def require_vertex(graph: Graph, v: str) -> None:
	if v not in graph.position:
		raise KeyError(f"unknown vertex {v!r}")


def degree(graph: Multigraph, v: str) -> int:
	require_vertex(graph, v)
	return len(graph.incidence[v])


def degree_between(graph: Multigraph, u: str, v: str) -> int:
	"""Number of edges with endpoint set ``{u, v}``."""
	require_vertex(graph, u)
	require_vertex(graph, v)
	if u == v:
		raise ValueError("degree_between needs two distinct vertices")
	return sum(1 for eid in graph.incidence[u] if graph.other(eid, u) == v)


def degree_into(graph: Multigraph, v: str, targets: Iterable[str]) -> int:
	"""Edges joining ``v`` and the vertex set ``targets`` (``v`` excluded)."""
	wanted = set(targets) - {v}
	return sum(1 for eid in graph.incidence[v] if graph.other(eid, v) in wanted)


def indegree(digraph: Multidigraph, v: str) -> int:
	require_vertex(digraph, v)
	return len(digraph.in_arcs[v])


def outdegree(digraph: Multidigraph, v: str) -> int:
	require_vertex(digraph, v)
	return len(digraph.out_arcs[v])


def orient(graph: Multigraph, orientation: PartialOrientation) -> Multidigraph:
	if len(orientation) != len(graph.edges):
		raise ValueError(
			f"orientation has {len(orientation)} entries, graph has {len(graph.edges)} edges"
		)
	if not orientation.is_total:
		raise ValueError("orientation has undecided edges")
	return Multidigraph(graph.vertices, tuple(orientation.arc(graph, eid) for eid in range(len(graph.edges))))


def underlying(digraph: Multidigraph) -> Tuple[Multigraph, PartialOrientation]:
	return Multigraph(digraph.vertices, digraph.arcs), PartialOrientation.all_forward(len(digraph.arcs))


def reorient(digraph: Multidigraph, reversal: Iterable[int]) -> Multidigraph:
	flip = set(reversal)
	bad = [a for a in flip if not isinstance(a, int) or not 0 <= a < len(digraph.arcs)]
	if bad:
		raise ValueError(f"invalid arc ids: {sorted(map(str, bad))}")
	arcs = tuple((q, p) if aid in flip else (p, q) for aid, (p, q) in enumerate(digraph.arcs))
	return Multidigraph(digraph.vertices, arcs)


def delete_vertices(digraph: Multidigraph, removed: Iterable[str]) -> Multidigraph:
	"""Induced subdigraph on the remaining vertices; arc ids are renumbered."""
	gone = set(removed)
	for v in gone:
		require_vertex(digraph, v)
	return Multidigraph(
		tuple(v for v in digraph.vertices if v not in gone),
		tuple((p, q) for p, q in digraph.arcs if p not in gone and q not in gone),
	)


def reversed_arcs(digraph: Multidigraph, other: Multidigraph) -> List[int]:
	"""Arc ids whose direction differs between a digraph and a reorientation of it."""
	if digraph.vertices != other.vertices or len(digraph.arcs) != len(other.arcs):
		raise ValueError("not a reorientation: vertex lists or arc counts differ")
	out: List[int] = []
	for aid, (a, b) in enumerate(zip(digraph.arcs, other.arcs)):
		if a == b:
			continue
		if a != (b[1], b[0]):
			raise ValueError(f"not a reorientation: arc {aid} changed endpoints")
		out.append(aid)
	return out


def edge_components(graph: Multigraph) -> List[set]:
	parent = {v: v for v in graph.vertices}

	def find(v: str) -> str:
		while parent[v] != v:
			parent[v] = parent[parent[v]]
			v = parent[v]
		return v

	for p, q in graph.edges:
		rp, rq = find(p), find(q)
		if rp != rq:
			parent[rp] = rq
	groups: Dict[str, set] = defaultdict(set)
	for v in graph.vertices:
		if graph.incidence[v]:
			groups[find(v)].add(v)
	return list(groups.values())


def is_eulerian(graph: Multigraph) -> bool:
	"""Connected (isolated vertices ignored) with every degree even."""
	if any(len(ids) % 2 for ids in graph.incidence.values()):
		return False
	return len(edge_components(graph)) <= 1


def euler_circuit(graph: Multigraph) -> Optional[List[int]]:
	"""Hierholzer: an Euler circuit as a list of edge ids, or ``None``."""
	if any(len(ids) % 2 for ids in graph.incidence.values()):
		return None
	if len(edge_components(graph)) > 1:
		return None
	if not graph.edges:
		return []

	used = [False] * len(graph.edges)
	cursor = {v: 0 for v in graph.vertices}
	start = graph.edges[0][0]
	stack: List[Tuple[str, Optional[int]]] = [(start, None)]
	circuit: List[int] = []
	while stack:
		v, via = stack[-1]
		inc = graph.incidence[v]
		while cursor[v] < len(inc) and used[inc[cursor[v]]]:
			cursor[v] += 1
		if cursor[v] == len(inc):
			stack.pop()
			if via is not None:
				circuit.append(via)
			continue
		eid = inc[cursor[v]]
		used[eid] = True
		stack.append((graph.other(eid, v), eid))
	circuit.reverse()
	return circuit if len(circuit) == len(graph.edges) else None


# Text formats ---------------------------------------------------------------


def _content_lines(text: str) -> Iterable[Tuple[int, List[str]]]:
	for lineno, raw in enumerate(text.splitlines(), start=1):
		line = raw.strip()
		if not line or line.startswith("#"):
			continue
		yield lineno, line.split()


def parse_graph(text: str) -> Graph:
	"""Parse the line-based graph format (``graph undirected|directed``, ``v``, ``e``)."""
	kind: Optional[str] = None
	vertices: List[str] = []
	pairs: List[Pair] = []
	declared: set[str] = set()
	for lineno, tokens in _content_lines(text):
		if kind is None:
			if len(tokens) != 2 or tokens[0] != "graph" or tokens[1] not in ("undirected", "directed"):
				raise GraphFormatError(f"line {lineno}: expected 'graph undirected' or 'graph directed'")
			kind = tokens[1]
			continue
		head = tokens[0]
		if head == "v" and len(tokens) == 2:
			if tokens[1] in declared:
				raise GraphFormatError(f"line {lineno}: duplicate vertex {tokens[1]!r}")
			declared.add(tokens[1])
			vertices.append(tokens[1])
		elif head == "e" and len(tokens) == 3:
			for end in tokens[1:]:
				if end not in declared:
					raise GraphFormatError(f"line {lineno}: undeclared vertex {end!r}")
			pairs.append((tokens[1], tokens[2]))
		else:
			raise GraphFormatError(f"line {lineno}: malformed line {' '.join(tokens)!r}")
	if kind is None:
		raise GraphFormatError("missing 'graph' header")
	if kind == "undirected":
		return Multigraph(tuple(vertices), tuple(pairs))
	return Multidigraph(tuple(vertices), tuple(pairs))


def serialize_graph(graph: Graph) -> str:
	if isinstance(graph, Multigraph):
		lines = ["graph undirected"]
		pairs = graph.edges
	else:
		lines = ["graph directed"]
		pairs = graph.arcs
	lines.extend(f"v {v}" for v in graph.vertices)
	lines.extend(f"e {p} {q}" for p, q in pairs)
	return "\n".join(lines) + "\n"


_SIGNS = {"+": Direction.FORWARD, "-": Direction.REVERSED, "−": Direction.REVERSED}


def parse_orientation(text: str, size: int) -> PartialOrientation:
	"""Parse ``<edge_id> <+|->`` lines; omitted ids stay undecided."""
	states = [Direction.UNDECIDED] * size
	seen: set[int] = set()
	for lineno, tokens in _content_lines(text):
		if len(tokens) != 2 or tokens[1] not in _SIGNS:
			raise GraphFormatError(f"line {lineno}: expected '<edge_id> <+|->'")
		try:
			eid = int(tokens[0])
		except ValueError:
			raise GraphFormatError(f"line {lineno}: edge id {tokens[0]!r} is not an integer") from None
		if not 0 <= eid < size:
			raise GraphFormatError(f"line {lineno}: edge id {eid} out of range 0..{size - 1}")
		if eid in seen:
			raise GraphFormatError(f"line {lineno}: edge id {eid} listed twice")
		seen.add(eid)
		states[eid] = _SIGNS[tokens[1]]
	return PartialOrientation(tuple(states))


def serialize_orientation(orientation: PartialOrientation) -> str:
	return "".join(
		f"{eid} {state.value}\n" for eid, state in enumerate(orientation.states) if state is not Direction.UNDECIDED
	)
