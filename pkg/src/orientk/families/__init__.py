from __future__ import annotations

from dataclasses import dataclass
from importlib import import_module
from typing import Any, Callable, Dict, FrozenSet, List, MutableMapping, Tuple

from sphinx.util import logging

from orientk.connectivity import is_weakly_2k_connected
from orientk.graph import Multigraph, is_eulerian, serialize_orientation
from orientk.search import (
	DEFAULT_BRANCH_CAP,
	DEFAULT_BUDGET,
	SearchOutcome,
	Status,
	find_separator,
	forcing_branches,
	search,
)


logger = logging.getLogger(__name__)

GraphFactory = Callable[..., Multigraph]

_GENERATOR_REGISTRY: MutableMapping[str, GraphFactory] = {}


def register_generator(name: str, factory: GraphFactory) -> None:
	"""Register a graph family under ``name``.

	Factories take keyword parameters (``k``, ``n``, ...) and return a Multigraph.
	"""
	key = name.strip().lower()
	if not key:
		raise ValueError("generator name must be non-empty")
	_GENERATOR_REGISTRY[key] = factory


def available_generators() -> List[str]:
	return sorted(_GENERATOR_REGISTRY.keys())


def get_generator(name: str) -> GraphFactory:
	key = (name or "").strip().lower()
	if key not in _GENERATOR_REGISTRY:
		raise KeyError(
			f"Unknown graph family '{name}'. Available: {', '.join(available_generators()) or '(none)'}"
		)
	return _GENERATOR_REGISTRY[key]


def _safe_register_builtin(name: str, module: str, symbol: str) -> None:
	def _factory(**params: Any) -> Multigraph:
		built = getattr(import_module(module), symbol)(**params)
		return built[0] if isinstance(built, tuple) else built

	register_generator(name, _factory)


def register_builtin_generators() -> None:
	for name, module, symbol in (
		("gk", "orientk.families.family_gk", "build_Gk"),
		("g3", "orientk.families.family_g3", "build_G3_candidate"),
		("h3", "orientk.families.family_g3", "build_H3_candidate"),
		("h3-prime", "orientk.reduction", "build_H3_prime"),
	):
		if name not in _GENERATOR_REGISTRY:
			_safe_register_builtin(name, module, symbol)


def role_hints(graph: Multigraph, k: int) -> List[FrozenSet[str]]:
	"""Separators suggested by the vertex labels of the built-in families."""
	names = set(graph.vertices)
	hints: List[FrozenSet[str]] = []
	if {"w", "x", "y", "z", "A.0", "B.0"} <= names:
		C = frozenset(v for v in graph.vertices if v.startswith("C."))
		hints.append(C | {"x", "y"})
	if {"u_a", "u_b", "x", "y"} <= names:
		hints.append(frozenset({"x", "y"}))
	return [h for h in hints if len(h) < k]


@dataclass(frozen=True)
class CounterexampleReport:
	k: int
	eulerian: bool
	weakly_2k: bool
	weak_witness: str
	outcome: SearchOutcome
	notes: Tuple[str, ...] = ()

	def to_dict(self) -> Dict[str, Any]:
		outcome = self.outcome
		return {
			"k": self.k,
			"eulerian": self.eulerian,
			"weakly_2k": self.weakly_2k,
			"weak_witness": self.weak_witness,
			"orientation_status": outcome.status.value,
			"orientation": serialize_orientation(outcome.orientation) if outcome.orientation else None,
			"branches": [
				{"decided": len(p.decided()), "separator": sorted(S)} for p, S in outcome.branches
			],
			"nodes": outcome.nodes,
			"evidence": outcome.evidence,
			"notes": list(self.notes),
		}

	def to_text(self) -> str:
		lines = [
			f"eulerian: {str(self.eulerian).lower()}",
			f"weakly_2k: {str(self.weakly_2k).lower()}",
		]
		if self.weak_witness:
			lines.append(f"weak_witness: {self.weak_witness}")
		lines.append(f"orientation_status: {self.outcome.status.value}")
		for i, (_p, S) in enumerate(self.outcome.branches):
			lines.append(f"branch {i}: SEPARATOR {' '.join(sorted(S))}")
		if self.outcome.evidence:
			lines.append(f"evidence: {self.outcome.evidence}")
		return "\n".join(lines)


def verify_counterexample(
	graph: Multigraph,
	k: int,
	budget: int = DEFAULT_BUDGET,
	*,
	threads: int = 1,
	branch_cap: int = DEFAULT_BRANCH_CAP,
) -> CounterexampleReport:
	"""Eulerian and weak checks, then forcing branches refuted by separators, then search."""
	eulerian = is_eulerian(graph)
	weak = is_weakly_2k_connected(graph, k, threads=threads)
	if not weak.holds:
		outcome = SearchOutcome(Status.REFUTED_EXHAUSTIVE, evidence=weak.witness_text())
		return CounterexampleReport(k, eulerian, False, weak.witness_text(), outcome)

	notes: List[str] = []
	branches = forcing_branches(graph, k, cap=branch_cap)
	if branches is not None and not branches:
		outcome = SearchOutcome(Status.REFUTED_EXHAUSTIVE, evidence="forcing contradiction")
		return CounterexampleReport(k, eulerian, True, "", outcome)
	if branches is None:
		notes.append(f"more than {branch_cap} forcing branches; separator refutation skipped")
	else:
		hints = role_hints(graph, k)
		refuted = []
		for state in branches:
			S = find_separator(graph, k, state, hints, threads=threads)
			if S is None:
				notes.append("a forcing branch has no refuting separator")
				break
			refuted.append((state, S))
		else:
			logger.info("orientk: %d forcing branches refuted by separators", len(refuted))
			outcome = SearchOutcome(Status.REFUTED_BY_SEPARATOR, branches=tuple(refuted))
			return CounterexampleReport(k, eulerian, True, "", outcome, tuple(notes))

	outcome = search(graph, k, budget, threads=threads)
	return CounterexampleReport(k, eulerian, True, "", outcome, tuple(notes))
