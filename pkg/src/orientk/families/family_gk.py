from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sphinx.util import logging

from orientk.graph import Multigraph


logger = logging.getLogger(__name__)


def _half_up(k: int) -> int:
	return -(-k // 2)


def default_n(k: int) -> int:
	"""Smallest odd n with n >= k**2."""
	n = k * k
	return n if n % 2 else n + 1


@dataclass(frozen=True)
class GkParams:
	k: int
	n: int

	def __post_init__(self) -> None:
		if self.k < 4:
			raise ValueError(f"G_k needs k >= 4, got {self.k}")
		if self.n % 2 == 0:
			raise ValueError(f"n must be odd, got {self.n}")
		if self.n < self.k * self.k:
			raise ValueError(f"n must be at least k**2 = {self.k * self.k}, got {self.n}")

	@property
	def A(self) -> Tuple[str, ...]:
		return tuple(f"A.{i}" for i in range(self.n))

	@property
	def B(self) -> Tuple[str, ...]:
		return tuple(f"B.{i}" for i in range(self.n))

	@property
	def C(self) -> Tuple[str, ...]:
		return tuple(f"C.{i}" for i in range(self.k - 3))

	@property
	def a(self) -> str:
		return self.A[0]

	@property
	def b(self) -> str:
		return self.B[0]

	@property
	def c(self) -> str:
		return self.C[0]

	def demands(self) -> Tuple[Dict[str, int], Dict[str, int]]:
		"""Parallel pairs each hub needs into A and into B."""
		k = self.k
		per_c = {v: _half_up(k) for v in self.C}
		into_a = {**per_c, "w": k - 1, "x": k - 2, "y": 1}
		into_b = {**per_c, "z": k - 1, "x": 1, "y": k - 2}
		return into_a, into_b


def realize_pairs(demands: Mapping[str, int], hosts: Sequence[str]) -> Dict[str, Tuple[str, ...]]:
	"""Give each hub ``demand`` distinct hosts, every host used at most once, greedily in order."""
	if any(d < 0 for d in demands.values()):
		raise ValueError("pair demands must be nonnegative")
	total = sum(demands.values())
	if total > len(hosts):
		raise ValueError(f"{total} pairs requested but only {len(hosts)} hosts available")
	out: Dict[str, Tuple[str, ...]] = {}
	cursor = 0
	for hub, count in demands.items():
		out[hub] = tuple(hosts[cursor : cursor + count])
		cursor += count
	return out


def build_Gk(k: int, n: Optional[int] = None) -> Multigraph:
	params = GkParams(k, default_n(k) if n is None else n)
	A, B, C = params.A, params.B, params.C
	a, b, c = params.a, params.b, params.c
	vertices = A + B + C + ("w", "x", "y", "z")

	edges: List[Tuple[str, str]] = []
	for side in (A, B):
		for i, p in enumerate(side):
			edges.extend((p, q) for q in side[i + 1:])
	edges.extend([(a, "z"), ("z", "y"), ("y", "x"), ("x", "w"), ("w", b), (b, c), (c, a)])

	into_a, into_b = params.demands()
	for demands, hosts in ((into_a, A[1:]), (into_b, B[1:])):
		for hub, chosen in realize_pairs(demands, hosts).items():
			for host in chosen:
				edges.extend([(hub, host), (hub, host)])

	graph = Multigraph(vertices, tuple(edges))
	logger.debug("orientk: built G_%d with n=%d: %d vertices, %d edges", k, params.n, len(vertices), len(edges))
	return graph
