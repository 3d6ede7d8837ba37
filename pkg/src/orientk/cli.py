from __future__ import annotations

import argparse
import hashlib
import json
import logging as pylogging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from sphinx.util import logging

from orientk import __version__
from orientk.connectivity import directed_pair, is_k_connected, is_weakly_2k_connected
from orientk.families import get_generator, register_builtin_generators, verify_counterexample
from orientk.graph import (
	Direction,
	Graph,
	GraphFormatError,
	Multidigraph,
	Multigraph,
	PartialOrientation,
	edge_components,
	euler_circuit,
	is_eulerian,
	orient,
	parse_graph,
	parse_orientation,
	serialize_graph,
	serialize_orientation,
	underlying,
)
from orientk.nae import nae_count, parse_nae
from orientk.reduction import GadgetMap, ReductionError, build_H3_prime, decode, encode, eulerize
from orientk.search import DEFAULT_BUDGET, Status, check_reduction_equivalence, search
from orientk.utils import resolve_threads, write_text_utf8


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class UsageError(Exception):
	"""Bad command line or unreadable input."""


@dataclass
class RunReport:
	command: List[str]
	inputs: Dict[str, str] = field(default_factory=dict)
	outcome: Dict[str, Any] = field(default_factory=dict)
	elapsed: float = 0.0
	exit_code: int = EXIT_OK
	as_json: bool = False

	def to_dict(self) -> Dict[str, Any]:
		return {
			"command": list(self.command),
			"inputs": dict(self.inputs),
			"outcome": self.outcome,
			"elapsed": round(self.elapsed, 6),
			"exit_code": self.exit_code,
			"version": __version__,
		}

	def to_json(self) -> str:
		return json.dumps(self.to_dict(), indent=2, sort_keys=True)

	def to_text(self) -> str:
		lines = ["command: orientk " + " ".join(self.command)]
		for path, digest in self.inputs.items():
			lines.append(f"input: {path} sha256:{digest}")
		for key, value in self.outcome.items():
			if isinstance(value, (list, tuple)):
				lines.append(f"{key}:")
				lines.extend(f"  {item}" for item in value)
			elif isinstance(value, str) and "\n" in value:
				lines.append(f"{key}:")
				lines.extend(f"  {item}" for item in value.rstrip("\n").splitlines())
			elif isinstance(value, bool):
				lines.append(f"{key}: {str(value).lower()}")
			else:
				lines.append(f"{key}: {value}")
		lines.append(f"elapsed: {self.elapsed:.3f}s")
		lines.append(f"exit: {self.exit_code}")
		return "\n".join(lines)


class _Parser(argparse.ArgumentParser):
	def error(self, message: str):
		raise UsageError(message)


def _add_global_flags(p: argparse.ArgumentParser, default: Any) -> None:
	p.add_argument("--json", action="store_true", default=default, help="emit the report as JSON")
	p.add_argument("--certificates", action="store_true", default=default, help="include positive certificates")
	p.add_argument("--threads", type=int, default=default, help="worker threads, 0 = all cores (env ORIENTK_THREADS)")


def build_parser() -> argparse.ArgumentParser:
	p = _Parser(prog="orientk", description="k-connected orientations of multigraphs.")
	p.add_argument("--version", action="version", version=f"orientk {__version__}")
	_add_global_flags(p, None)
	# accepted after the subcommand too; SUPPRESS keeps values given before it
	common = _Parser(add_help=False)
	_add_global_flags(common, argparse.SUPPRESS)
	leaf = {"parents": [common]}
	sub = p.add_subparsers(dest="command", required=True)

	gen = sub.add_parser("gen", help="write a built-in graph").add_subparsers(dest="family", required=True)
	gk = gen.add_parser("gk", **leaf)
	gk.add_argument("--k", type=int, required=True)
	gk.add_argument("--n", type=int, default=None)
	gk.add_argument("-o", dest="output", required=True)
	for name in ("g3", "h3"):
		g = gen.add_parser(name, **leaf)
		g.add_argument("-o", dest="output", required=True)
	hp = gen.add_parser("h3-prime", **leaf)
	hp.add_argument("-o", dest="output", required=True)
	hp.add_argument("--map", dest="map", required=True)

	enc = sub.add_parser("encode", **leaf, help="compile a NAE instance into a digraph")
	enc.add_argument("--k", type=int, required=True)
	enc.add_argument("nae")
	enc.add_argument("-o", dest="output", required=True)
	enc.add_argument("--map", dest="map", required=True)
	enc.add_argument("--eulerize", action="store_true")

	check = sub.add_parser("check").add_subparsers(dest="check", required=True)
	weak = check.add_parser("weak", **leaf)
	weak.add_argument("--k", type=int, required=True)
	weak.add_argument("graph")
	kconn = check.add_parser("kconn", **leaf)
	kconn.add_argument("--k", type=int, required=True)
	kconn.add_argument("graph")
	kconn.add_argument("orientation", nargs="?")
	euler = check.add_parser("euler", **leaf)
	euler.add_argument("graph")

	srch = sub.add_parser("search", **leaf, help="look for a k-connected orientation")
	srch.add_argument("--k", type=int, required=True)
	srch.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
	srch.add_argument("graph")

	dec = sub.add_parser("decode", **leaf, help="read an assignment off a reorientation")
	dec.add_argument("map")
	dec.add_argument("orientation")

	verify = sub.add_parser("verify").add_subparsers(dest="verify", required=True)
	vc = verify.add_parser("counterexample", **leaf)
	vc.add_argument("--k", type=int, required=True)
	vc.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
	vc.add_argument("graph")
	vr = verify.add_parser("reduction", **leaf)
	vr.add_argument("--k", type=int, required=True)
	vr.add_argument("--eulerize", action="store_true")
	vr.add_argument("nae")
	return p


class _Run:
	def __init__(self, args: argparse.Namespace, report: RunReport) -> None:
		self.args = args
		self.report = report
		self.threads = resolve_threads(args.threads)

	def read(self, path: str) -> str:
		try:
			data = Path(path).read_bytes()
		except OSError as exc:
			raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
		self.report.inputs[path] = hashlib.sha256(data).hexdigest()
		return data.decode("utf-8")

	def write(self, path: str, text: str) -> None:
		try:
			write_text_utf8(path, text)
		except OSError as exc:
			raise UsageError(f"cannot write {path}: {exc.strerror or exc}") from exc

	def graph(self, path: str) -> Graph:
		return parse_graph(self.read(path))

	def undirected(self, path: str) -> Multigraph:
		g = self.graph(path)
		if not isinstance(g, Multigraph):
			raise UsageError(f"{path}: expected an undirected graph")
		return g

	def emit(self, **fields: Any) -> None:
		self.report.outcome.update(fields)

	# gen -----------------------------------------------------------------

	def gen(self) -> int:
		a = self.args
		if a.family == "h3-prime":
			graph, gmap = build_H3_prime()
			self.write(a.map, gmap.to_json())
			self.emit(map=a.map)
		else:
			params = {"k": a.k, "n": a.n} if a.family == "gk" else {}
			graph = get_generator(a.family)(**params)
		self.write(a.output, serialize_graph(graph))
		self.emit(output=a.output, vertices=len(graph.vertices), edges=len(graph.edges))
		return EXIT_OK

	def encode(self) -> int:
		a = self.args
		instance = parse_nae(self.read(a.nae))
		digraph, gmap = encode(instance, a.k)
		if a.eulerize:
			digraph, gmap = eulerize(digraph, gmap)
		self.write(a.output, serialize_graph(digraph))
		self.write(a.map, gmap.to_json())
		self.emit(
			output=a.output,
			map=a.map,
			vertices=len(digraph.vertices),
			arcs=len(digraph.arcs),
			eulerized=bool(a.eulerize),
			F=len(gmap.F),
		)
		return EXIT_OK

	# check ---------------------------------------------------------------

	def check(self) -> int:
		return {"weak": self.check_weak, "kconn": self.check_kconn, "euler": self.check_euler}[self.args.check]()

	def check_weak(self) -> int:
		graph = self.undirected(self.args.graph)
		rep = is_weakly_2k_connected(graph, self.args.k, threads=self.threads, certificates=self.args.certificates)
		self.emit(property=f"weakly {2 * self.args.k}-connected", holds=rep.holds, pairs_checked=rep.pairs_checked)
		if not rep.holds:
			self.emit(witness=rep.witness_text())
			return EXIT_REFUTED
		if self.args.certificates:
			self.emit(certificates=[
				f"PAIR {u} {v} " + " / ".join("path: " + " ".join(p) for p in paths)
				for (u, v), paths in rep.certificates.items()
			])
		return EXIT_OK

	def _digraph_for_kconn(self) -> Multidigraph:
		a = self.args
		g = self.graph(a.graph)
		if isinstance(g, Multidigraph):
			if a.orientation is None:
				return g
			base, _ = underlying(g)
		else:
			if a.orientation is None:
				raise UsageError("an orientation file is required for an undirected graph")
			base = g
		o = parse_orientation(self.read(a.orientation), len(base.edges))
		if isinstance(g, Multidigraph):
			# omitted arcs keep their direction
			o = PartialOrientation(tuple(Direction.FORWARD if s is Direction.UNDECIDED else s for s in o.states))
		elif not o.is_total:
			raise GraphFormatError(f"orientation leaves edges {', '.join(map(str, _undecided(o)))} undecided")
		return orient(base, o)

	def check_kconn(self) -> int:
		k = self.args.k
		digraph = self._digraph_for_kconn()
		rep = is_k_connected(digraph, k, threads=self.threads)
		self.emit(property=f"{k}-connected", holds=rep.holds, pairs_checked=rep.pairs_checked)
		if not rep.holds:
			self.emit(witness=rep.witness_text())
			return EXIT_REFUTED
		if self.args.certificates:
			certs = []
			for s in digraph.vertices:
				for t in digraph.vertices:
					if s != t:
						fan = directed_pair(digraph, s, t, limit=k).difan
						certs.append(f"PAIR {s} {t} {fan.to_text()}")
			self.emit(certificates=certs)
		return EXIT_OK

	def check_euler(self) -> int:
		graph = self.undirected(self.args.graph)
		holds = is_eulerian(graph)
		self.emit(property="eulerian", holds=holds)
		if not holds:
			odd = [v for v in graph.vertices if len(graph.incidence[v]) % 2]
			if odd:
				self.emit(witness="ODD " + " ".join(odd))
			else:
				self.emit(witness=f"COMPONENTS {len(edge_components(graph))}")
			return EXIT_REFUTED
		if self.args.certificates:
			self.emit(circuit=" ".join(f"e{e}" for e in euler_circuit(graph)))
		return EXIT_OK

	# search / verify -----------------------------------------------------

	def search(self) -> int:
		a = self.args
		graph = self.undirected(a.graph)
		outcome = search(graph, a.k, a.budget, threads=self.threads)
		self.emit(status=outcome.status.value, nodes=outcome.nodes)
		if outcome.status is Status.FOUND:
			self.emit(orientation=serialize_orientation(outcome.orientation))
			return EXIT_OK
		self.emit(witness=outcome.evidence)
		return EXIT_BUDGET if outcome.status is Status.UNKNOWN else EXIT_REFUTED

	def decode(self) -> int:
		gmap = GadgetMap.from_json(self.read(self.args.map))
		base, _ = underlying(gmap.digraph())
		o = parse_orientation(self.read(self.args.orientation), len(base.edges))
		o = PartialOrientation(tuple(Direction.FORWARD if s is Direction.UNDECIDED else s for s in o.states))
		try:
			sigma = decode(gmap, orient(base, o))
		except ReductionError as exc:
			self.emit(consistent=False, witness=f"INCONSISTENT {exc}")
			return EXIT_REFUTED
		self.emit(consistent=True, assignment=[f"{x} {'true' if sigma[x] else 'false'}" for x in gmap.variables])
		return EXIT_OK

	def verify(self) -> int:
		if self.args.verify == "counterexample":
			return self.verify_counterexample()
		return self.verify_reduction()

	def verify_counterexample(self) -> int:
		a = self.args
		graph = self.undirected(a.graph)
		rep = verify_counterexample(graph, a.k, a.budget, threads=self.threads)
		self.emit(**rep.to_dict())
		if rep.outcome.status is Status.UNKNOWN:
			return EXIT_BUDGET
		if rep.weakly_2k and rep.outcome.refuted:
			return EXIT_OK
		return EXIT_REFUTED

	def verify_reduction(self) -> int:
		a = self.args
		instance = parse_nae(self.read(a.nae))
		rep = check_reduction_equivalence(instance, a.k, eulerize=a.eulerize, threads=self.threads)
		self.emit(
			holds=rep.holds,
			assignments=rep.assignments,
			nae_satisfying=rep.nae_satisfying,
			nae_bruteforce=nae_count(instance),
			connected=rep.connected,
		)
		if not rep.holds:
			self.emit(witness=[
				" ".join(f"{x}={'T' if s[x] else 'F'}" for x in instance.variables) for s in rep.mismatches
			])
			return EXIT_REFUTED
		return EXIT_OK


def _undecided(o: PartialOrientation) -> List[int]:
	return [i for i, s in enumerate(o.states) if s is Direction.UNDECIDED]


def _attach_stderr_handler() -> None:
	base = pylogging.getLogger("sphinx.orientk")
	if not any(getattr(h, "_orientk_cli", False) for h in base.handlers):
		handler = pylogging.StreamHandler(sys.stderr)
		handler.setFormatter(pylogging.Formatter("%(message)s"))
		handler._orientk_cli = True  # type: ignore[attr-defined]
		base.addHandler(handler)
	base.setLevel(pylogging.INFO)


def run(argv: Optional[Sequence[str]] = None) -> RunReport:
	argv = list(sys.argv[1:] if argv is None else argv)
	report = RunReport(command=argv)
	started = time.perf_counter()
	register_builtin_generators()
	try:
		args = build_parser().parse_args(argv)
		report.as_json = bool(args.json)
		runner = _Run(args, report)
		handlers: Dict[str, Callable[[], int]] = {
			"gen": runner.gen,
			"encode": runner.encode,
			"check": runner.check,
			"search": runner.search,
			"decode": runner.decode,
			"verify": runner.verify,
		}
		report.exit_code = handlers[args.command]()
	except (UsageError, ValueError, KeyError) as exc:
		# GraphFormatError, NaeFormatError and ReductionError are ValueErrors
		message = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
		logger.debug("orientk: %s", message)
		report.outcome["error"] = message
		report.exit_code = EXIT_USAGE
	report.elapsed = time.perf_counter() - started
	return report


def main(argv: Optional[Sequence[str]] = None) -> int:
	_attach_stderr_handler()
	argv = list(sys.argv[1:] if argv is None else argv)
	report = run(argv)
	print(report.to_json() if report.as_json or "--json" in argv else report.to_text())
	return report.exit_code


if __name__ == "__main__":
	raise SystemExit(main())
