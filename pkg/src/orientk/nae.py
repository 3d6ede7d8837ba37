from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple


Assignment = Dict[str, bool]

MAX_BRUTE_FORCE_VARIABLES = 20


class NaeFormatError(ValueError):
	"""Malformed Not-All-Equal instance."""


@dataclass(frozen=True)
class Literal:
	variable: str
	positive: bool = True

	def value(self, assignment: Mapping[str, bool]) -> bool:
		return assignment[self.variable] == self.positive

	def __str__(self) -> str:
		return self.variable if self.positive else "!" + self.variable


@dataclass(frozen=True)
class NaeInstance:
	variables: Tuple[str, ...]
	clauses: Tuple[Tuple[Literal, ...], ...]

	def __post_init__(self) -> None:
		object.__setattr__(self, "variables", tuple(self.variables))
		object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
		if len(set(self.variables)) != len(self.variables):
			raise NaeFormatError("duplicate variable name")
		known = set(self.variables)
		used = set()
		for idx, clause in enumerate(self.clauses):
			if not 2 <= len(clause) <= 3:
				raise NaeFormatError(f"clause {idx} has {len(clause)} literals, expected 2 or 3")
			for lit in clause:
				if lit.variable not in known:
					raise NaeFormatError(f"clause {idx} uses undeclared variable {lit.variable!r}")
				used.add(lit.variable)
		unused = [v for v in self.variables if v not in used]
		if unused:
			raise NaeFormatError(f"variables occur in no clause: {', '.join(unused)}")

	@classmethod
	def from_clauses(cls, clauses: Sequence[Sequence[str]]) -> "NaeInstance":
		"""Build from literal strings such as ``[["x", "y", "!z"]]``; variables in first-use order."""
		parsed = [tuple(_parse_literal(tok) for tok in clause) for clause in clauses]
		order: List[str] = []
		for clause in parsed:
			for lit in clause:
				if lit.variable not in order:
					order.append(lit.variable)
		return cls(tuple(order), tuple(parsed))

	def to_text(self) -> str:
		lines = ["p nae"]
		lines.extend("clause " + " ".join(str(lit) for lit in clause) for clause in self.clauses)
		return "\n".join(lines) + "\n"


def _parse_literal(token: str) -> Literal:
	positive = not token.startswith("!")
	name = token if positive else token[1:]
	if not name or name.startswith("!") or any(ch.isspace() for ch in name):
		raise NaeFormatError(f"invalid literal {token!r}")
	return Literal(name, positive)


def parse_nae(text: str) -> NaeInstance:
	"""Parse ``p nae`` followed by ``clause <lit> <lit> [<lit>]`` lines; ``!x`` negates."""
	header = False
	clauses: List[List[str]] = []
	for lineno, raw in enumerate(text.splitlines(), start=1):
		line = raw.strip()
		if not line or line.startswith("#"):
			continue
		tokens = line.split()
		if not header:
			if tokens != ["p", "nae"]:
				raise NaeFormatError(f"line {lineno}: expected 'p nae' header")
			header = True
			continue
		if tokens[0] != "clause":
			raise NaeFormatError(f"line {lineno}: expected 'clause <lit> <lit> [<lit>]'")
		if not 2 <= len(tokens) - 1 <= 3:
			raise NaeFormatError(f"line {lineno}: clause has {len(tokens) - 1} literals, expected 2 or 3")
		clauses.append(tokens[1:])
	if not header:
		raise NaeFormatError("missing 'p nae' header")
	if not clauses:
		raise NaeFormatError("instance has no clauses")
	try:
		return NaeInstance.from_clauses(clauses)
	except NaeFormatError as exc:
		raise NaeFormatError(f"invalid instance: {exc}") from exc


def clause_nae(clause: Sequence[Literal], assignment: Mapping[str, bool]) -> bool:
	values = {lit.value(assignment) for lit in clause}
	return len(values) == 2


def nae_satisfied(instance: NaeInstance, assignment: Mapping[str, bool]) -> bool:
	missing = [v for v in instance.variables if v not in assignment]
	if missing:
		raise ValueError(f"assignment misses variables: {', '.join(missing)}")
	return all(clause_nae(c, assignment) for c in instance.clauses)


def assignments(instance: NaeInstance) -> Iterator[Assignment]:
	"""All total assignments; the all-true assignment first."""
	for bits in product((True, False), repeat=len(instance.variables)):
		yield dict(zip(instance.variables, bits))


def _check_size(instance: NaeInstance) -> None:
	if len(instance.variables) > MAX_BRUTE_FORCE_VARIABLES:
		raise ValueError(
			f"brute force limited to {MAX_BRUTE_FORCE_VARIABLES} variables, got {len(instance.variables)}"
		)


def nae_bruteforce(instance: NaeInstance) -> Tuple[bool, Optional[Assignment]]:
	_check_size(instance)
	for sigma in assignments(instance):
		if nae_satisfied(instance, sigma):
			return True, sigma
	return False, None


def nae_count(instance: NaeInstance) -> int:
	"""Number of NAE-satisfying assignments."""
	_check_size(instance)
	return sum(1 for sigma in assignments(instance) if nae_satisfied(instance, sigma))
