from __future__ import annotations

from importlib import metadata
from pathlib import Path
import hashlib
import json
import os
from typing import Dict, List

from sphinx.application import Sphinx
from sphinx.errors import SphinxError
from sphinx.util import logging


logger = logging.getLogger(__name__)


def _read_root_version_file() -> str | None:
	# Layout: <root>/src/orientk/__init__.py
	root = Path(__file__).resolve().parents[2]
	try:
		return (root / "VERSION").read_text(encoding="utf-8").strip()
	except OSError:
		return None


def _detect_version() -> str:
	try:
		v = metadata.version("orientk")
		if v:
			return v
	except metadata.PackageNotFoundError:
		pass

	# Fallback for source checkouts without an installed dist.
	v = _read_root_version_file()
	return v or "0.0.0"


__version__ = _detect_version()


from orientk.domain import OrientationDomain  # noqa: E402
from orientk.graph import Multigraph, parse_graph  # noqa: E402
from orientk.utils import as_list, collect_files, read_text_utf8  # noqa: E402


def _safe_mtime(path: Path) -> float:
	try:
		return path.stat().st_mtime
	except Exception:
		return 0.0


def _collect_graph_files(app: Sphinx) -> List[str]:
	config = app.config
	return collect_files(
		confdir=Path(app.confdir),
		roots=as_list(getattr(config, "orientk_graphs", [])),
		extensions=as_list(getattr(config, "orientk_graph_extensions", [".graph"])),
		excludes=as_list(getattr(config, "orientk_graphs_exclude", [])),
	)


def _compute_fingerprint(app: Sphinx) -> str:
	"""Fingerprint the inputs of the rendered reports.

	Sphinx does not re-read a document whose source is unchanged, so graph files
	and this package's own modules are hashed by mtime together with the
	settings that change report output.
	"""
	files = _collect_graph_files(app)
	package_dir = Path(__file__).resolve().parent
	data = {
		"budget": int(getattr(app.config, "orientk_budget", 10**7)),
		"graphs": [(p, os.path.getmtime(p) if os.path.exists(p) else 0.0) for p in files],
		"ext": [(str(p), _safe_mtime(p)) for p in sorted(package_dir.glob("*.py"))],
	}
	blob = json.dumps(data, sort_keys=True, separators=(",", ":")).encode("utf-8")
	return hashlib.sha1(blob).hexdigest()


def _maybe_force_reread(app: Sphinx, env, added, changed, removed):
	"""Sphinx event handler: mark docs outdated when the fingerprint changes."""
	try:
		fp = _compute_fingerprint(app)
	except Exception:
		return []

	data = getattr(env, "domaindata", {}).setdefault("orientk", {})
	if data.get("_orientk_fingerprint") != fp:
		data["_orientk_fingerprint"] = fp
		docs = list(getattr(env, "found_docs", set()))
		logger.info("orientk: graph inputs changed; re-reading %d docs", len(docs))
		return docs
	return []


def _load_graphs(app: Sphinx) -> None:
	files = _collect_graph_files(app)
	if not files:
		logger.info("orientk: no orientk_graphs configured; skipping")
		return

	graphs: Dict[str, Multigraph] = {}
	for path in files:
		name = Path(path).stem
		if name in graphs:
			raise SphinxError(f"orientk: two graph files are named '{name}'")
		try:
			graph = parse_graph(read_text_utf8(path))
		except (OSError, ValueError) as exc:
			raise SphinxError(f"orientk: cannot load {path}: {exc}") from exc
		if not isinstance(graph, Multigraph):
			logger.warning("orientk: %s is a directed graph; reports need undirected graphs", path)
			continue
		graphs[name] = graph

	domain = app.env.get_domain("orientk")
	getattr(domain, "set_graphs")(graphs)
	logger.info("orientk: loaded %d graphs", len(graphs))


def setup(app: Sphinx):
	app.add_domain(OrientationDomain)

	app.add_config_value("orientk_graphs", default=[], rebuild="env")
	app.add_config_value("orientk_graphs_exclude", default=[], rebuild="env")
	app.add_config_value("orientk_graph_extensions", default=[".graph"], rebuild="env")
	app.add_config_value("orientk_budget", default=10**7, rebuild="env")
	app.add_config_value("orientk_threads", default=1, rebuild="env")

	app.connect("builder-inited", _load_graphs)
	app.connect("env-get-outdated", _maybe_force_reread)

	return {
		"version": __version__,
		"parallel_read_safe": True,
		"parallel_write_safe": True,
	}
