from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, List, Optional, Sequence, Tuple


@dataclass(frozen=True)
class FlowArc:
	tail: Hashable
	head: Hashable
	capacity: int


@dataclass(frozen=True)
class FlowResult:
	value: int
	# Network arc ids crossing from the source side to the sink side.
	cut: Tuple[int, ...]
	flow: Tuple[int, ...]
	source_side: FrozenSet[Hashable]
	# False when the run stopped at ``limit``; the cut is then not minimum.
	complete: bool = True


class FlowNetwork:
	"""Capacitated directed network with integral capacities.

	Nodes are arbitrary hashable labels and are created on first use. The
	connectivity checks build one network per vertex pair and discard it.
	"""

	def __init__(self, source: Hashable, sink: Hashable) -> None:
		if source == sink:
			raise ValueError("source and sink must differ")
		self.nodes: List[Hashable] = []
		self._index: Dict[Hashable, int] = {}
		self.arcs: List[FlowArc] = []
		self.source = source
		self.sink = sink
		self.node(source)
		self.node(sink)

	def node(self, label: Hashable) -> int:
		idx = self._index.get(label)
		if idx is None:
			idx = len(self.nodes)
			self._index[label] = idx
			self.nodes.append(label)
		return idx

	def index_of(self, label: Hashable) -> int:
		return self._index[label]

	def add_arc(self, tail: Hashable, head: Hashable, capacity: int) -> int:
		if not isinstance(capacity, int) or capacity < 0:
			raise ValueError(f"capacity must be a nonnegative integer, got {capacity!r}")
		self.node(tail)
		self.node(head)
		self.arcs.append(FlowArc(tail, head, capacity))
		return len(self.arcs) - 1


def max_flow_min_cut(network: FlowNetwork, *, limit: Optional[int] = None) -> FlowResult:
	"""Dinic's algorithm; stops early once the flow value reaches ``limit``."""
	n = len(network.nodes)
	s = network.index_of(network.source)
	t = network.index_of(network.sink)
	m = len(network.arcs)
	to = [0] * (2 * m)
	cap = [0] * (2 * m)
	adj: List[List[int]] = [[] for _ in range(n)]
	for i, arc in enumerate(network.arcs):
		a = network.index_of(arc.tail)
		b = network.index_of(arc.head)
		to[2 * i] = b
		cap[2 * i] = arc.capacity
		adj[a].append(2 * i)
		to[2 * i + 1] = a
		adj[b].append(2 * i + 1)

	total = 0
	target = limit if limit is not None else sum(arc.capacity for arc in network.arcs) + 1
	while total < target:
		level = _levels(s, t, adj, to, cap, n)
		if level[t] < 0:
			break
		cursor = [0] * n
		while total < target:
			pushed = _augment(s, t, target - total, level, cursor, adj, to, cap)
			if not pushed:
				break
			total += pushed

	complete = limit is None or total < limit
	seen = [False] * n
	seen[s] = True
	queue = deque([s])
	while queue:
		v = queue.popleft()
		for a in adj[v]:
			w = to[a]
			if cap[a] > 0 and not seen[w]:
				seen[w] = True
				queue.append(w)

	flow = tuple(network.arcs[i].capacity - cap[2 * i] for i in range(m))
	cut = tuple(
		i for i, arc in enumerate(network.arcs)
		if seen[network.index_of(arc.tail)] and not seen[network.index_of(arc.head)]
	)
	if complete:
		cut_capacity = sum(network.arcs[i].capacity for i in cut)
		assert cut_capacity == total, f"max-flow {total} != cut capacity {cut_capacity}"
	side = frozenset(network.nodes[i] for i in range(n) if seen[i])
	return FlowResult(value=total, cut=cut, flow=flow, source_side=side, complete=complete)


def _levels(s: int, t: int, adj, to, cap, n: int) -> List[int]:
	level = [-1] * n
	level[s] = 0
	queue = deque([s])
	while queue:
		v = queue.popleft()
		if v == t:
			break
		for a in adj[v]:
			w = to[a]
			if cap[a] > 0 and level[w] < 0:
				level[w] = level[v] + 1
				queue.append(w)
	return level


def _augment(s: int, t: int, bound: int, level, cursor, adj, to, cap) -> int:
	path: List[int] = []
	v = s
	while True:
		if v == t:
			pushed = min([bound] + [cap[a] for a in path])
			for a in path:
				cap[a] -= pushed
				cap[a ^ 1] += pushed
			return pushed
		moved = False
		edges = adj[v]
		while cursor[v] < len(edges):
			a = edges[cursor[v]]
			w = to[a]
			if cap[a] > 0 and level[w] == level[v] + 1:
				path.append(a)
				v = w
				moved = True
				break
			cursor[v] += 1
		if moved:
			continue
		if not path:
			return 0
		# dead end: retreat and skip the arc that led here
		level[v] = -1
		a = path.pop()
		v = to[a ^ 1]
		cursor[v] += 1


def decompose(network: FlowNetwork, result: FlowResult) -> List[Tuple[Tuple[Hashable, ...], int]]:
	"""Split a flow into source-sink paths of node labels, with multiplicities.

	Flow cycles are cancelled on the way.
	"""
	remaining = list(result.flow)
	out: Dict[Hashable, List[int]] = {}
	for i, arc in enumerate(network.arcs):
		if remaining[i] > 0:
			out.setdefault(arc.tail, []).append(i)
	cursor: Dict[Hashable, int] = {label: 0 for label in out}

	def next_arc(label: Hashable) -> Optional[int]:
		arcs = out.get(label, [])
		while cursor.get(label, 0) < len(arcs) and remaining[arcs[cursor[label]]] == 0:
			cursor[label] += 1
		if cursor.get(label, 0) < len(arcs):
			return arcs[cursor[label]]
		return None

	paths: List[Tuple[Tuple[Hashable, ...], int]] = []
	while True:
		nodes: List[Hashable] = [network.source]
		taken: List[int] = []
		where = {network.source: 0}
		v = network.source
		while v != network.sink:
			a = next_arc(v)
			if a is None:
				break
			w = network.arcs[a].head
			if w in where:
				i = where[w]
				cycle = taken[i:] + [a]
				amount = min(remaining[x] for x in cycle)
				for x in cycle:
					remaining[x] -= amount
				for label in nodes[i + 1:]:
					del where[label]
				nodes = nodes[: i + 1]
				taken = taken[:i]
				v = w
				continue
			taken.append(a)
			nodes.append(w)
			where[w] = len(nodes) - 1
			v = w
		if v != network.sink or not taken:
			break
		amount = min(remaining[x] for x in taken)
		for x in taken:
			remaining[x] -= amount
		paths.append((tuple(nodes), amount))
	return paths


def split_path_vertices(labels: Sequence[Hashable]) -> Tuple[str, ...]:
	"""Map a path over ``("in"|"out", vertex)`` split nodes back to vertices."""
	out: List[str] = []
	for label in labels:
		if not isinstance(label, tuple) or len(label) != 2:
			continue
		vertex = label[1]
		if not out or out[-1] != vertex:
			out.append(vertex)
	return tuple(out)
