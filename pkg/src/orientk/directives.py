from __future__ import annotations

from typing import List, Tuple

from docutils import nodes
from docutils.parsers.rst import Directive
from docutils.parsers.rst import directives as rst_directives

from sphinx.util import logging

from orientk.connectivity import is_weakly_2k_connected
from orientk.families import verify_counterexample
from orientk.graph import Multigraph, is_eulerian


logger = logging.getLogger(__name__)

KNOWN_CHECKS = ("euler", "weak", "orientation")


def _checks(argument: str) -> Tuple[str, ...]:
	names = tuple(c.strip().lower() for c in (argument or "").split(",") if c.strip())
	unknown = [c for c in names if c not in KNOWN_CHECKS]
	if unknown:
		raise ValueError(f"unknown checks {', '.join(unknown)}; choose from {', '.join(KNOWN_CHECKS)}")
	return names


def _field(name: str, value: str) -> nodes.field:
	field = nodes.field()
	field += nodes.field_name(text=name)
	body = nodes.field_body()
	body += nodes.paragraph(text=value)
	field += body
	return field


def _yes(flag: bool) -> str:
	return "yes" if flag else "no"


class GraphReport(Directive):
	"""Render the verification report of a configured graph.

	The graph is looked up by file stem among ``orientk_graphs``.

	.. code-block:: rst

	   .. orientk:report:: h3
	      :k: 3
	      :checks: euler, weak, orientation
	"""

	required_arguments = 1
	option_spec = {
		"k": rst_directives.positive_int,
		"checks": _checks,
	}

	def run(self):
		name = self.arguments[0]
		env = self.state.document.settings.env
		domain = env.get_domain("orientk")
		graph = getattr(domain, "get_graph")(name)

		if graph is None:
			logger.warning("orientk: graph '%s' not found", name)
			return [self._warning(f"graph '{name}' not found (did you configure orientk_graphs?)")]
		if "k" not in self.options:
			return [self._warning(f"orientk:report {name}: the :k: option is required")]

		anchor = nodes.make_id(f"orientk-graph-{name}")
		section = nodes.section(ids=[anchor])
		section += nodes.title(text=f"{name} (graph)")
		getattr(domain, "note_object")(name=name, objtype="graph", anchor=anchor)

		k = self.options["k"]
		checks = self.options.get("checks") or ("euler", "weak")
		fields, witnesses = self._report(graph, k, checks, env.config)

		fl = nodes.field_list()
		fl += _field("vertices", str(len(graph.vertices)))
		fl += _field("edges", str(len(graph.edges)))
		for field in fields:
			fl += field
		section += fl
		if witnesses:
			text = "\n".join(witnesses)
			section += nodes.literal_block(text, text)
		return [section]

	@staticmethod
	def _warning(text: str) -> nodes.warning:
		node = nodes.warning()
		node += nodes.paragraph(text=text)
		return node

	def _report(self, graph: Multigraph, k: int, checks, config) -> Tuple[List[nodes.field], List[str]]:
		threads = int(getattr(config, "orientk_threads", 1))
		fields: List[nodes.field] = []
		witnesses: List[str] = []
		if "orientation" in checks:
			rep = verify_counterexample(graph, k, int(getattr(config, "orientk_budget", 10**7)), threads=threads)
			fields.append(_field("eulerian", _yes(rep.eulerian)))
			fields.append(_field(f"weakly {2 * k}-connected", _yes(rep.weakly_2k)))
			fields.append(_field(f"{k}-connected orientation", rep.outcome.status.value))
			witnesses.extend(rep.to_text().splitlines()[2:])
			return fields, witnesses
		if "euler" in checks:
			fields.append(_field("eulerian", _yes(is_eulerian(graph))))
		if "weak" in checks:
			weak = is_weakly_2k_connected(graph, k, threads=threads)
			fields.append(_field(f"weakly {2 * k}-connected", _yes(weak.holds)))
			if not weak.holds:
				witnesses.append(weak.witness_text())
		logger.debug("orientk: rendered report with checks %s", ", ".join(checks))
		return fields, witnesses
